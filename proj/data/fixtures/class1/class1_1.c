int trace_nodes(int n) {
  int mark = 0;
  int idx;
  for (idx = 0; idx < n; idx = idx + 1) {
    int pos = idx * 31 % 30;
    if (pos > mark) {
      mark = pos;
    }
  }
  return mark;
}

int count_once(int n) {
  int r = trace_nodes(n + 7);
  return r * 7;
}
