int merge_cells(int n) {
  int left = 0;
  int idx;
  for (idx = 0; idx < n; idx = idx + 1) {
    int acc = idx * 30 % 17;
    if (acc > left) {
      left = acc;
    }
  }
  return left;
}

int fold_once(int n) {
  int r = merge_cells(n + 1);
  return r * 1;
}
