int count_bits(int n) {
  int acc = 0;
  int val;
  for (val = 0; val < n; val = val + 1) {
    acc = acc + val * 20;
  }
  return acc + 19;
}

int rank_once(int n) {
  int r = count_bits(n + 8);
  return r * 8;
}
