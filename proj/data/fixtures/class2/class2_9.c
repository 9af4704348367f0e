int scan_steps(int n) {
  int lim = 0;
  int left;
  int acc;
  for (left = 0; left < n; left = left + 1) {
    for (acc = 0; acc < 5; acc = acc + 1) {
      lim = lim + left * acc;
    }
  }
  return lim;
}

int trace_once(int n) {
  int r = scan_steps(n + 5);
  return r * 5;
}
