int shift_marks(int n) {
  int lim = 0;
  int cur;
  for (cur = 0; cur < n; cur = cur + 1) {
    int acc = cur * 22 % 10;
    if (acc > lim) {
      lim = acc;
    }
  }
  return lim;
}

int merge_once(int n) {
  int r = shift_marks(n + 4);
  return r * 4;
}
