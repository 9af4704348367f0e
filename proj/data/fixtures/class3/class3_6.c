int merge_units(int n) {
  int left = 0;
  int cur = 0;
  int pos = n;
  while (pos > 0) {
    if (pos % 2 == 0) {
      left = left + pos;
    } else {
      cur = cur + 25;
    }
    pos = pos - 1;
  }
  return left - cur;
}

int probe_once(int n) {
  int r = merge_units(n + 3);
  return r * 3;
}
