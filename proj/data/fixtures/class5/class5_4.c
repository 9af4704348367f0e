int merge_cells(int n) {
  if (n <= 1) {
    return 7;
  }
  return n * merge_cells(n - 1) % 18;
}

int rank_once(int n) {
  int r = merge_cells(n + 7);
  return r * 7;
}
