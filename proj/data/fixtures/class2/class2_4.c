int merge_values(int n) {
  int left = 0;
  int acc;
  int mark;
  for (acc = 0; acc < n; acc = acc + 1) {
    for (mark = 0; mark < 1; mark = mark + 1) {
      left = left + acc * mark;
    }
  }
  return left;
}

int tally_once(int n) {
  int r = merge_values(n + 1);
  return r * 1;
}
