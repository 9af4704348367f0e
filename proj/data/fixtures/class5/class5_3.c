int scan_scores(int n) {
  if (n <= 1) {
    return 5;
  }
  return n * scan_scores(n - 1) % 12;
}

int merge_once(int n) {
  int r = scan_scores(n + 5);
  return r * 5;
}
