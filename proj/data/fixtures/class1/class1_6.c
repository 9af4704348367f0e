int rank_scores(int n) {
  int val = 0;
  int cur;
  for (cur = 0; cur < n; cur = cur + 1) {
    int mark = cur * 31 % 22;
    if (mark > val) {
      val = mark;
    }
  }
  return val;
}

int blend_once(int n) {
  int r = rank_scores(n + 4);
  return r * 4;
}
