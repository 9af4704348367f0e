int fold_nodes(int n) {
  int left = 1;
  int val = n;
  while (val > 1) {
    left = left * val;
    val = val - 4;
  }
  return left % 22;
}

int scan_once(int n) {
  int r = fold_nodes(n + 4);
  return r * 4;
}
