#include "pathvec/fixtures.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "pathvec/rng.hpp"

namespace pathvec {

namespace {

const char* kVerbs[] = {"count", "scan",  "fold",  "merge", "tally",
                        "probe", "shift", "blend", "trace", "rank"};
const char* kNouns[] = {"items", "values", "weights", "scores", "steps",
                        "nodes", "cells",  "bits",    "marks",  "units"};
const char* kVars[] = {"acc", "cur", "val", "lim", "idx", "pos", "mark", "left"};

struct Names {
  std::string fn, helper, a, b, c;
  int k1, k2, k3;
};

Names draw_names(Rng& rng) {
  Names n;
  n.fn = std::string(kVerbs[rng.below(10)]) + "_" + kNouns[rng.below(10)];
  n.helper = std::string(kVerbs[rng.below(10)]) + "_once";
  n.a = kVars[rng.below(8)];
  n.b = kVars[rng.below(8)];
  while (n.b == n.a) n.b = kVars[rng.below(8)];
  n.c = kVars[rng.below(8)];
  while (n.c == n.a || n.c == n.b) n.c = kVars[rng.below(8)];
  n.k1 = 2 + static_cast<int>(rng.below(30));
  n.k2 = 2 + static_cast<int>(rng.below(30));
  n.k3 = 1 + static_cast<int>(rng.below(9));
  return n;
}

std::string wrapper(const Names& n) {
  return "int " + n.helper + "(int n) {\n"
         "  int r = " + n.fn + "(n + " + std::to_string(n.k3) + ");\n"
         "  return r * " + std::to_string(n.k3) + ";\n"
         "}\n";
}

std::string class_body(int cls, const Names& n) {
  const std::string k1 = std::to_string(n.k1);
  const std::string k2 = std::to_string(n.k2);
  const std::string k3 = std::to_string(n.k3);
  switch (cls) {
    case 0:  // running sum over a for loop
      return "int " + n.fn + "(int n) {\n"
             "  int " + n.a + " = 0;\n"
             "  int " + n.b + ";\n"
             "  for (" + n.b + " = 0; " + n.b + " < n; " + n.b + " = " + n.b + " + 1) {\n"
             "    " + n.a + " = " + n.a + " + " + n.b + " * " + k1 + ";\n"
             "  }\n"
             "  return " + n.a + " + " + k2 + ";\n"
             "}\n";
    case 1:  // running maximum behind a comparison
      return "int " + n.fn + "(int n) {\n"
             "  int " + n.a + " = 0;\n"
             "  int " + n.b + ";\n"
             "  for (" + n.b + " = 0; " + n.b + " < n; " + n.b + " = " + n.b + " + 1) {\n"
             "    int " + n.c + " = " + n.b + " * " + k1 + " % " + k2 + ";\n"
             "    if (" + n.c + " > " + n.a + ") {\n"
             "      " + n.a + " = " + n.c + ";\n"
             "    }\n"
             "  }\n"
             "  return " + n.a + ";\n"
             "}\n";
    case 2:  // nested loops accumulating a product grid
      return "int " + n.fn + "(int n) {\n"
             "  int " + n.a + " = 0;\n"
             "  int " + n.b + ";\n"
             "  int " + n.c + ";\n"
             "  for (" + n.b + " = 0; " + n.b + " < n; " + n.b + " = " + n.b + " + 1) {\n"
             "    for (" + n.c + " = 0; " + n.c + " < " + k3 + "; " + n.c + " = " + n.c + " + 1) {\n"
             "      " + n.a + " = " + n.a + " + " + n.b + " * " + n.c + ";\n"
             "    }\n"
             "  }\n"
             "  return " + n.a + ";\n"
             "}\n";
    case 3:  // even/odd split inside a while loop
      return "int " + n.fn + "(int n) {\n"
             "  int " + n.a + " = 0;\n"
             "  int " + n.b + " = 0;\n"
             "  int " + n.c + " = n;\n"
             "  while (" + n.c + " > 0) {\n"
             "    if (" + n.c + " % 2 == 0) {\n"
             "      " + n.a + " = " + n.a + " + " + n.c + ";\n"
             "    } else {\n"
             "      " + n.b + " = " + n.b + " + " + k1 + ";\n"
             "    }\n"
             "    " + n.c + " = " + n.c + " - 1;\n"
             "  }\n"
             "  return " + n.a + " - " + n.b + ";\n"
             "}\n";
    case 4:  // countdown product
      return "int " + n.fn + "(int n) {\n"
             "  int " + n.a + " = 1;\n"
             "  int " + n.b + " = n;\n"
             "  while (" + n.b + " > 1) {\n"
             "    " + n.a + " = " + n.a + " * " + n.b + ";\n"
             "    " + n.b + " = " + n.b + " - " + k3 + ";\n"
             "  }\n"
             "  return " + n.a + " % " + k2 + ";\n"
             "}\n";
    case 5:  // recursion with a base case
      return "int " + n.fn + "(int n) {\n"
             "  if (n <= 1) {\n"
             "    return " + k3 + ";\n"
             "  }\n"
             "  return n * " + n.fn + "(n - 1) % " + k2 + ";\n"
             "}\n";
    case 6:  // two sequential passes over the same range
      return "int " + n.fn + "(int n) {\n"
             "  int " + n.a + " = 0;\n"
             "  int " + n.b + " = 0;\n"
             "  int " + n.c + ";\n"
             "  for (" + n.c + " = 0; " + n.c + " < n; " + n.c + " = " + n.c + " + 1) {\n"
             "    " + n.a + " = " + n.a + " + " + n.c + ";\n"
             "  }\n"
             "  for (" + n.c + " = 0; " + n.c + " < n; " + n.c + " = " + n.c + " + 1) {\n"
             "    " + n.b + " = " + n.b + " + " + n.a + " / (" + n.c + " + 1);\n"
             "  }\n"
             "  return " + n.b + ";\n"
             "}\n";
    case 7:  // branch ladder
      return "int " + n.fn + "(int n) {\n"
             "  int " + n.a + " = 0;\n"
             "  if (n > " + k1 + ") {\n"
             "    " + n.a + " = 4;\n"
             "  } else if (n > " + k2 + ") {\n"
             "    " + n.a + " = 3;\n"
             "  } else if (n > " + k3 + ") {\n"
             "    " + n.a + " = 2;\n"
             "  } else {\n"
             "    " + n.a + " = 1;\n"
             "  }\n"
             "  return " + n.a + " * " + k3 + ";\n"
             "}\n";
    case 8:  // skip multiples with continue
      return "int " + n.fn + "(int n) {\n"
             "  int " + n.a + " = 0;\n"
             "  int " + n.b + ";\n"
             "  for (" + n.b + " = 1; " + n.b + " <= n; " + n.b + " = " + n.b + " + 1) {\n"
             "    if (" + n.b + " % " + k3 + " == 0) {\n"
             "      continue;\n"
             "    }\n"
             "    " + n.a + " = " + n.a + " + " + n.b + ";\n"
             "  }\n"
             "  return " + n.a + ";\n"
             "}\n";
    case 9:  // linear search with break
      return "int " + n.fn + "(int n) {\n"
             "  int " + n.a + " = 0 - 1;\n"
             "  int " + n.b + " = 0;\n"
             "  while (" + n.b + " < n) {\n"
             "    if (" + n.b + " * " + k3 + " == " + k1 + ") {\n"
             "      " + n.a + " = " + n.b + ";\n"
             "      break;\n"
             "    }\n"
             "    " + n.b + " = " + n.b + " + 1;\n"
             "  }\n"
             "  return " + n.a + ";\n"
             "}\n";
    default:
      throw std::invalid_argument("no template class " + std::to_string(cls));
  }
}

}  // namespace

std::vector<SourceFile> make_template_corpus(int n_classes, int per_class, uint64_t seed) {
  if (n_classes < 1 || n_classes > kTemplateClassCount)
    throw std::invalid_argument("template corpus supports 1.." +
                                std::to_string(kTemplateClassCount) + " classes, got " +
                                std::to_string(n_classes));
  if (per_class < 1)
    throw std::invalid_argument("template corpus needs at least one file per class");

  std::vector<SourceFile> files;
  files.reserve(static_cast<size_t>(n_classes) * static_cast<size_t>(per_class));
  for (int cls = 0; cls < n_classes; ++cls) {
    const std::string label = "class" + std::to_string(cls);
    for (int i = 0; i < per_class; ++i) {
      Rng rng(mix_seed(seed, static_cast<uint64_t>(cls) * 100003 + static_cast<uint64_t>(i)));
      Names n = draw_names(rng);
      SourceFile f;
      f.label = label;
      f.path = label + "/" + label + "_" + std::to_string(i) + ".c";
      f.content = class_body(cls, n) + "\n" + wrapper(n);
      files.push_back(std::move(f));
    }
  }
  return files;
}

void write_template_corpus(const std::string& dir, int n_classes, int per_class,
                           uint64_t seed) {
  namespace fs = std::filesystem;
  for (const SourceFile& f : make_template_corpus(n_classes, per_class, seed)) {
    const fs::path out = fs::path(dir) / f.path;
    fs::create_directories(out.parent_path());
    std::ofstream stream(out, std::ios::binary | std::ios::trunc);
    if (!stream) throw std::runtime_error("cannot write '" + out.string() + "'");
    stream << f.content;
  }
}

}  // namespace pathvec
