int count_steps(int n) {
  if (n <= 1) {
    return 2;
  }
  return n * count_steps(n - 1) % 28;
}

int rank_once(int n) {
  int r = count_steps(n + 2);
  return r * 2;
}
