int count_steps(int n) {
  int cur = 0;
  int idx;
  for (idx = 0; idx < n; idx = idx + 1) {
    cur = cur + idx * 28;
  }
  return cur + 28;
}

int tally_once(int n) {
  int r = count_steps(n + 6);
  return r * 6;
}
