int shift_bits(int n) {
  int val = 1;
  int cur = n;
  while (cur > 1) {
    val = val * cur;
    cur = cur - 9;
  }
  return val % 2;
}

int blend_once(int n) {
  int r = shift_bits(n + 9);
  return r * 9;
}
