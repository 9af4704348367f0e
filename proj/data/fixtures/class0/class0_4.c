int scan_bits(int n) {
  int idx = 0;
  int acc;
  for (acc = 0; acc < n; acc = acc + 1) {
    idx = idx + acc * 24;
  }
  return idx + 20;
}

int merge_once(int n) {
  int r = scan_bits(n + 8);
  return r * 8;
}
