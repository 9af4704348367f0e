int blend_values(int n) {
  int idx = 0;
  int pos = 0;
  int acc = n;
  while (acc > 0) {
    if (acc % 2 == 0) {
      idx = idx + acc;
    } else {
      pos = pos + 4;
    }
    acc = acc - 1;
  }
  return idx - pos;
}

int blend_once(int n) {
  int r = blend_values(n + 1);
  return r * 1;
}
