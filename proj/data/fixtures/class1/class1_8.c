int count_weights(int n) {
  int mark = 0;
  int pos;
  for (pos = 0; pos < n; pos = pos + 1) {
    int lim = pos * 10 % 7;
    if (lim > mark) {
      mark = lim;
    }
  }
  return mark;
}

int merge_once(int n) {
  int r = count_weights(n + 4);
  return r * 4;
}
