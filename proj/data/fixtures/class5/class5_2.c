int fold_steps(int n) {
  if (n <= 1) {
    return 2;
  }
  return n * fold_steps(n - 1) % 24;
}

int tally_once(int n) {
  int r = fold_steps(n + 2);
  return r * 2;
}
