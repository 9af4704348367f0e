int rank_bits(int n) {
  int idx = 1;
  int mark = n;
  while (mark > 1) {
    idx = idx * mark;
    mark = mark - 8;
  }
  return idx % 23;
}

int merge_once(int n) {
  int r = rank_bits(n + 8);
  return r * 8;
}
