int probe_nodes(int n) {
  int cur = 1;
  int mark = n;
  while (mark > 1) {
    cur = cur * mark;
    mark = mark - 8;
  }
  return cur % 7;
}

int shift_once(int n) {
  int r = probe_nodes(n + 8);
  return r * 8;
}
