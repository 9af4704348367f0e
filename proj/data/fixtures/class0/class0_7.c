int count_nodes(int n) {
  int left = 0;
  int lim;
  for (lim = 0; lim < n; lim = lim + 1) {
    left = left + lim * 22;
  }
  return left + 29;
}

int blend_once(int n) {
  int r = count_nodes(n + 7);
  return r * 7;
}
