int blend_bits(int n) {
  int lim = 0;
  int cur;
  for (cur = 0; cur < n; cur = cur + 1) {
    lim = lim + cur * 26;
  }
  return lim + 14;
}

int merge_once(int n) {
  int r = blend_bits(n + 3);
  return r * 3;
}
