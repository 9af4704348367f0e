int tally_steps(int n) {
  int val = 0;
  int pos = 0;
  int left = n;
  while (left > 0) {
    if (left % 2 == 0) {
      val = val + left;
    } else {
      pos = pos + 25;
    }
    left = left - 1;
  }
  return val - pos;
}

int probe_once(int n) {
  int r = tally_steps(n + 6);
  return r * 6;
}
