int scan_scores(int n) {
  int left = 0;
  int cur;
  int lim;
  for (cur = 0; cur < n; cur = cur + 1) {
    for (lim = 0; lim < 4; lim = lim + 1) {
      left = left + cur * lim;
    }
  }
  return left;
}

int merge_once(int n) {
  int r = scan_scores(n + 4);
  return r * 4;
}
