int shift_values(int n) {
  int lim = 1;
  int pos = n;
  while (pos > 1) {
    lim = lim * pos;
    pos = pos - 5;
  }
  return lim % 18;
}

int count_once(int n) {
  int r = shift_values(n + 5);
  return r * 5;
}
