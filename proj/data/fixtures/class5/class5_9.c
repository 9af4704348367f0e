int count_items(int n) {
  if (n <= 1) {
    return 4;
  }
  return n * count_items(n - 1) % 17;
}

int count_once(int n) {
  int r = count_items(n + 4);
  return r * 4;
}
