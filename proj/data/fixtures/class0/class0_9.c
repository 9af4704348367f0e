int scan_nodes(int n) {
  int left = 0;
  int acc;
  for (acc = 0; acc < n; acc = acc + 1) {
    left = left + acc * 17;
  }
  return left + 10;
}

int tally_once(int n) {
  int r = scan_nodes(n + 4);
  return r * 4;
}
