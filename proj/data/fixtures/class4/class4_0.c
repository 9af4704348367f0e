int blend_units(int n) {
  int cur = 1;
  int acc = n;
  while (acc > 1) {
    cur = cur * acc;
    acc = acc - 3;
  }
  return cur % 26;
}

int count_once(int n) {
  int r = blend_units(n + 3);
  return r * 3;
}
