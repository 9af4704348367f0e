int scan_steps(int n) {
  int idx = 0;
  int val;
  for (val = 0; val < n; val = val + 1) {
    int cur = val * 16 % 28;
    if (cur > idx) {
      idx = cur;
    }
  }
  return idx;
}

int count_once(int n) {
  int r = scan_steps(n + 5);
  return r * 5;
}
