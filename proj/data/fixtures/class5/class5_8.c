int tally_items(int n) {
  if (n <= 1) {
    return 4;
  }
  return n * tally_items(n - 1) % 25;
}

int rank_once(int n) {
  int r = tally_items(n + 4);
  return r * 4;
}
