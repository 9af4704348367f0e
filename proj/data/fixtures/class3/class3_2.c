int tally_items(int n) {
  int mark = 0;
  int left = 0;
  int val = n;
  while (val > 0) {
    if (val % 2 == 0) {
      mark = mark + val;
    } else {
      left = left + 5;
    }
    val = val - 1;
  }
  return mark - left;
}

int blend_once(int n) {
  int r = tally_items(n + 8);
  return r * 8;
}
