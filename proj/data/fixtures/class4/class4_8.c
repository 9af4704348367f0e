int merge_nodes(int n) {
  int idx = 1;
  int cur = n;
  while (cur > 1) {
    idx = idx * cur;
    cur = cur - 1;
  }
  return idx % 25;
}

int blend_once(int n) {
  int r = merge_nodes(n + 1);
  return r * 1;
}
