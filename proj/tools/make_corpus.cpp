// Writes the synthetic template corpus: numbered classes of small C programs
// with distinct control and data flow, varied per file.

#include <CLI11.hpp>

#include <iostream>

#include "pathvec/fixtures.hpp"

int main(int argc, char** argv) {
  CLI::App app{"generate a synthetic C corpus of labeled template classes"};
  std::string out;
  int classes = 6;
  int per_class = 10;
  uint64_t seed = 7;
  app.add_option("-o,--out", out, "output directory")->required();
  app.add_option("--classes", classes, "number of template classes (1-10)");
  app.add_option("--per-class", per_class, "files per class");
  app.add_option("--seed", seed, "generation seed");
  CLI11_PARSE(app, argc, argv);

  try {
    pathvec::write_template_corpus(out, classes, per_class, seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cout << "wrote " << classes * per_class << " files under " << out << "\n";
  return 0;
}
