int rank_items(int n) {
  int left = 0;
  int acc;
  for (acc = 0; acc < n; acc = acc + 1) {
    left = left + acc * 31;
  }
  return left + 11;
}

int rank_once(int n) {
  int r = rank_items(n + 5);
  return r * 5;
}
