int blend_scores(int n) {
  int mark = 0;
  int left = 0;
  int acc = n;
  while (acc > 0) {
    if (acc % 2 == 0) {
      mark = mark + acc;
    } else {
      left = left + 8;
    }
    acc = acc - 1;
  }
  return mark - left;
}

int blend_once(int n) {
  int r = blend_scores(n + 4);
  return r * 4;
}
