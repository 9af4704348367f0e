int merge_values(int n) {
  int idx = 0;
  int val;
  for (val = 0; val < n; val = val + 1) {
    int left = val * 23 % 26;
    if (left > idx) {
      idx = left;
    }
  }
  return idx;
}

int tally_once(int n) {
  int r = merge_values(n + 4);
  return r * 4;
}
