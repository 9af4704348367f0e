int scan_values(int n) {
  int left = 0;
  int lim;
  int idx;
  for (lim = 0; lim < n; lim = lim + 1) {
    for (idx = 0; idx < 3; idx = idx + 1) {
      left = left + lim * idx;
    }
  }
  return left;
}

int tally_once(int n) {
  int r = scan_values(n + 3);
  return r * 3;
}
