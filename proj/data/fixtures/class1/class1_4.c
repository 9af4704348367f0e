int rank_marks(int n) {
  int val = 0;
  int mark;
  for (mark = 0; mark < n; mark = mark + 1) {
    int lim = mark * 7 % 25;
    if (lim > val) {
      val = lim;
    }
  }
  return val;
}

int scan_once(int n) {
  int r = rank_marks(n + 4);
  return r * 4;
}
