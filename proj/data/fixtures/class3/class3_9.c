int count_bits(int n) {
  int cur = 0;
  int acc = 0;
  int mark = n;
  while (mark > 0) {
    if (mark % 2 == 0) {
      cur = cur + mark;
    } else {
      acc = acc + 2;
    }
    mark = mark - 1;
  }
  return cur - acc;
}

int tally_once(int n) {
  int r = count_bits(n + 5);
  return r * 5;
}
