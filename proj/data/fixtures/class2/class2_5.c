int fold_weights(int n) {
  int left = 0;
  int val;
  int acc;
  for (val = 0; val < n; val = val + 1) {
    for (acc = 0; acc < 6; acc = acc + 1) {
      left = left + val * acc;
    }
  }
  return left;
}

int probe_once(int n) {
  int r = fold_weights(n + 6);
  return r * 6;
}
