int blend_cells(int n) {
  int pos = 0;
  int acc = 0;
  int val = n;
  while (val > 0) {
    if (val % 2 == 0) {
      pos = pos + val;
    } else {
      acc = acc + 30;
    }
    val = val - 1;
  }
  return pos - acc;
}

int count_once(int n) {
  int r = blend_cells(n + 1);
  return r * 1;
}
