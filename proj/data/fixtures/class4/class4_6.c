int blend_bits(int n) {
  int idx = 1;
  int left = n;
  while (left > 1) {
    idx = idx * left;
    left = left - 7;
  }
  return idx % 29;
}

int merge_once(int n) {
  int r = blend_bits(n + 7);
  return r * 7;
}
