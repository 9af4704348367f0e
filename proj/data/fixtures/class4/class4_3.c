int merge_scores(int n) {
  int idx = 1;
  int cur = n;
  while (cur > 1) {
    idx = idx * cur;
    cur = cur - 9;
  }
  return idx % 13;
}

int shift_once(int n) {
  int r = merge_scores(n + 9);
  return r * 9;
}
