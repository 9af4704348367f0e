int tally_bits(int n) {
  int val = 0;
  int acc;
  int mark;
  for (acc = 0; acc < n; acc = acc + 1) {
    for (mark = 0; mark < 1; mark = mark + 1) {
      val = val + acc * mark;
    }
  }
  return val;
}

int count_once(int n) {
  int r = tally_bits(n + 1);
  return r * 1;
}
