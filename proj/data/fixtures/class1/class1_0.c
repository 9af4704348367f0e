int tally_weights(int n) {
  int val = 0;
  int lim;
  for (lim = 0; lim < n; lim = lim + 1) {
    int left = lim * 12 % 19;
    if (left > val) {
      val = left;
    }
  }
  return val;
}

int rank_once(int n) {
  int r = tally_weights(n + 4);
  return r * 4;
}
