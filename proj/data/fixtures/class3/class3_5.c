int probe_steps(int n) {
  int idx = 0;
  int pos = 0;
  int val = n;
  while (val > 0) {
    if (val % 2 == 0) {
      idx = idx + val;
    } else {
      pos = pos + 17;
    }
    val = val - 1;
  }
  return idx - pos;
}

int probe_once(int n) {
  int r = probe_steps(n + 5);
  return r * 5;
}
