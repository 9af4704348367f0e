int trace_values(int n) {
  int left = 0;
  int idx;
  for (idx = 0; idx < n; idx = idx + 1) {
    left = left + idx * 16;
  }
  return left + 8;
}

int probe_once(int n) {
  int r = trace_values(n + 1);
  return r * 1;
}
