int tally_bits(int n) {
  if (n <= 1) {
    return 9;
  }
  return n * tally_bits(n - 1) % 31;
}

int merge_once(int n) {
  int r = tally_bits(n + 9);
  return r * 9;
}
