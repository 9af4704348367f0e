int shift_units(int n) {
  int lim = 0;
  int acc;
  int val;
  for (acc = 0; acc < n; acc = acc + 1) {
    for (val = 0; val < 1; val = val + 1) {
      lim = lim + acc * val;
    }
  }
  return lim;
}

int probe_once(int n) {
  int r = shift_units(n + 1);
  return r * 1;
}
