int fold_weights(int n) {
  if (n <= 1) {
    return 5;
  }
  return n * fold_weights(n - 1) % 23;
}

int rank_once(int n) {
  int r = fold_weights(n + 5);
  return r * 5;
}
