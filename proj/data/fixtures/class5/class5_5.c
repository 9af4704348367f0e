int trace_scores(int n) {
  if (n <= 1) {
    return 3;
  }
  return n * trace_scores(n - 1) % 29;
}

int fold_once(int n) {
  int r = trace_scores(n + 3);
  return r * 3;
}
