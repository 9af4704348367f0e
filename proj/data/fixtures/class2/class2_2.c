int tally_units(int n) {
  int acc = 0;
  int val;
  int idx;
  for (val = 0; val < n; val = val + 1) {
    for (idx = 0; idx < 2; idx = idx + 1) {
      acc = acc + val * idx;
    }
  }
  return acc;
}

int shift_once(int n) {
  int r = tally_units(n + 2);
  return r * 2;
}
