#pragma once

// Turns source files into labeled samples ready for training.
//
// A sample is a normalized label plus up to cap-many rendered path contexts
// per representation. Method-level samples take one function each, mask its
// name everywhere it occurs, and use the normalized name as the label.
// File-level samples pool the contexts of every function in a file under a
// caller-supplied class label.
//
// Files that cannot be used are dropped, never fatal: each drop is recorded
// with its reason so corpus runs are auditable.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pathvec/paths.hpp"

namespace pathvec {

inline constexpr const char* kMaskToken = "METHOD_NAME";

// Lowercased subtokens joined by '|': camel case, underscores and
// letter/digit transitions split, acronym runs kept together up to their
// last capital ("HTTPServer" -> "http|server"). Idempotent. Throws
// EmptyLabel when nothing alphanumeric remains.
std::string normalize_label(std::string_view raw);

// Subtokens of a normalized label.
std::vector<std::string> split_label(std::string_view label);

struct Sample {
  std::string label;
  // Contexts with tokens already normalized (render/parse round-trips
  // exactly). Indexed by Rep.
  std::array<std::vector<PathContext>, 3> contexts;

  bool operator==(const Sample&) const = default;
};

struct SourceFile {
  std::string path;     // used in drop records
  std::string label;    // class label for file-level samples; unused otherwise
  std::string content;
};

struct CorpusOptions {
  ExtractionLimits limits;  // limits.seed is the base seed; every sample
                            // derives its own stream from it
  int threads = 1;
};

struct DropRecord {
  std::string file;
  std::string function;  // empty when the whole file was dropped
  std::string reason;
};

struct BuildReport {
  int64_t functions_seen = 0;
  int64_t samples_kept = 0;
  std::vector<DropRecord> drops;
  // Enumerated path counts per representation before the caps were applied.
  std::array<int64_t, 3> paths_before_caps = {0, 0, 0};
  std::array<int64_t, 3> paths_after_caps = {0, 0, 0};
  std::vector<std::string> warnings;

  double mean_before_caps(Rep kind) const {
    return samples_kept ? static_cast<double>(paths_before_caps[static_cast<int>(kind)]) /
                              static_cast<double>(samples_kept)
                        : 0.0;
  }
};

// One sample per function; the function name is masked in the graphs and
// becomes the label.
std::vector<Sample> build_method_samples(const std::vector<SourceFile>& files,
                                         const CorpusOptions& opts, BuildReport& report);

// One sample per file under file.label.
std::vector<Sample> build_file_samples(const std::vector<SourceFile>& files,
                                       const CorpusOptions& opts, BuildReport& report);

struct Splits {
  std::vector<Sample> train, val, test;
};

// 70/20/10 split, shuffled under `seed`. Stratified mode keeps the ratios
// within every label and throws ClassTooSmall below 10 samples per class.
Splits make_splits(std::vector<Sample> samples, uint64_t seed, bool stratified);

// Text dataset: one sample per line,
//   label<SP>ast-contexts<TAB>cfg-contexts<TAB>pdg-contexts
// with contexts space-separated "start,path,end" triples.
void write_dataset(const std::vector<Sample>& samples, std::ostream& out);
std::vector<Sample> read_dataset(std::istream& in);

}  // namespace pathvec
