int blend_values(int n) {
  int val = 0;
  int pos;
  int mark;
  for (pos = 0; pos < n; pos = pos + 1) {
    for (mark = 0; mark < 4; mark = mark + 1) {
      val = val + pos * mark;
    }
  }
  return val;
}

int merge_once(int n) {
  int r = blend_values(n + 4);
  return r * 4;
}
