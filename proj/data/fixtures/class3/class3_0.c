int probe_units(int n) {
  int acc = 0;
  int pos = 0;
  int cur = n;
  while (cur > 0) {
    if (cur % 2 == 0) {
      acc = acc + cur;
    } else {
      pos = pos + 27;
    }
    cur = cur - 1;
  }
  return acc - pos;
}

int tally_once(int n) {
  int r = probe_units(n + 9);
  return r * 9;
}
