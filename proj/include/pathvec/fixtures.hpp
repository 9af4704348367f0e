#pragma once

// Deterministic synthetic C corpus for experiments and benchmarks. Classes
// are small program templates with distinct control and data flow (loops,
// nesting, recursion, branch ladders, break/continue); identifiers, constants
// and bounds vary per file so samples within a class are not byte clones.

#include <cstdint>
#include <string>
#include <vector>

#include "pathvec/corpus.hpp"

namespace pathvec {

inline constexpr int kTemplateClassCount = 10;

// `per_class` files for each of the first `n_classes` templates, labeled
// "class0".."classN". Throws std::invalid_argument on a class count outside
// [1, kTemplateClassCount] or a non-positive file count.
std::vector<SourceFile> make_template_corpus(int n_classes, int per_class, uint64_t seed);

// The same corpus written as <dir>/<label>/<label>_<index>.c.
void write_template_corpus(const std::string& dir, int n_classes, int per_class,
                           uint64_t seed);

}  // namespace pathvec
