int shift_values(int n) {
  if (n <= 1) {
    return 7;
  }
  return n * shift_values(n - 1) % 31;
}

int probe_once(int n) {
  int r = shift_values(n + 7);
  return r * 7;
}
