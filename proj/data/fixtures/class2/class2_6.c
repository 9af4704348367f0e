int scan_marks(int n) {
  int acc = 0;
  int lim;
  int cur;
  for (lim = 0; lim < n; lim = lim + 1) {
    for (cur = 0; cur < 7; cur = cur + 1) {
      acc = acc + lim * cur;
    }
  }
  return acc;
}

int scan_once(int n) {
  int r = scan_marks(n + 7);
  return r * 7;
}
