#pragma once

// Index spaces for the model: one shared vocabulary over start/end tokens,
// one path vocabulary per representation, and a label vocabulary. Token and
// path vocabularies reserve <pad> (index 0) and <unk> (index 1); the token
// vocabulary additionally pins the normalized mask token at index 2 so the
// masked name always encodes the same way. Entries are ordered by descending
// frequency, ties lexicographic, making builds reproducible.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "pathvec/corpus.hpp"

namespace pathvec {

inline constexpr const char* kPadToken = "<pad>";
inline constexpr const char* kUnkToken = "<unk>";
inline constexpr int kPadIndex = 0;
inline constexpr int kUnkIndex = 1;
inline constexpr int kMaskIndex = 2;  // token vocabulary only

class Vocabulary {
 public:
  Vocabulary() = default;

  int add(const std::string& item, int64_t count);

  // Index of `item`, or <unk> when absent. Requires a vocabulary built with
  // reserved entries; label vocabularies use find() instead.
  int lookup(const std::string& item) const;
  // Index or -1.
  int find(const std::string& item) const;

  const std::string& at(int index) const;
  int64_t count_at(int index) const { return counts_.at(static_cast<size_t>(index)); }
  int size() const { return static_cast<int>(items_.size()); }

  // FNV-1a over every entry string (with separators), for checkpoint
  // compatibility checks.
  uint64_t hash() const;

  bool operator==(const Vocabulary&) const = default;

 private:
  std::vector<std::string> items_;
  std::vector<int64_t> counts_;
  std::unordered_map<std::string, int> index_;
};

struct VocabSet {
  Vocabulary tokens;
  std::array<Vocabulary, 3> paths;  // indexed by Rep
  Vocabulary labels;

  bool operator==(const VocabSet&) const = default;
};

// Counts tokens, path strings and labels over (training) samples.
VocabSet build_vocabularies(const std::vector<Sample>& train);

// Tab-separated "kind<TAB>string<TAB>index<TAB>count" lines; kinds are
// token, ast_path, cfg_path, pdg_path, label.
void write_vocab(const VocabSet& vocab, std::ostream& out);
VocabSet read_vocab(std::istream& in);

struct EncodedContext {
  int start = kPadIndex;
  int path = kPadIndex;
  int end = kPadIndex;

  bool operator==(const EncodedContext&) const = default;
};

struct EncodedSample {
  int label = -1;  // -1 when the label is outside the vocabulary
  std::array<std::vector<EncodedContext>, 3> contexts;
};

EncodedSample encode_sample(const Sample& sample, const VocabSet& vocab);

}  // namespace pathvec
