int probe_values(int n) {
  int idx = 1;
  int mark = n;
  while (mark > 1) {
    idx = idx * mark;
    mark = mark - 5;
  }
  return idx % 31;
}

int rank_once(int n) {
  int r = probe_values(n + 5);
  return r * 5;
}
