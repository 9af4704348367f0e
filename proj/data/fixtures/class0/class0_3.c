int blend_values(int n) {
  int mark = 0;
  int val;
  for (val = 0; val < n; val = val + 1) {
    mark = mark + val * 31;
  }
  return mark + 11;
}

int merge_once(int n) {
  int r = blend_values(n + 7);
  return r * 7;
}
