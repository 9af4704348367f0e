int shift_units(int n) {
  int acc = 0;
  int pos = 0;
  int mark = n;
  while (mark > 0) {
    if (mark % 2 == 0) {
      acc = acc + mark;
    } else {
      pos = pos + 17;
    }
    mark = mark - 1;
  }
  return acc - pos;
}

int blend_once(int n) {
  int r = shift_units(n + 7);
  return r * 7;
}
