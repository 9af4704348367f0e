#include "pathvec/vocab.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <utility>

#include "pathvec/errors.hpp"

namespace pathvec {

int Vocabulary::add(const std::string& item, int64_t count) {
  auto it = index_.find(item);
  if (it != index_.end()) return it->second;
  int idx = static_cast<int>(items_.size());
  items_.push_back(item);
  counts_.push_back(count);
  index_.emplace(item, idx);
  return idx;
}

int Vocabulary::lookup(const std::string& item) const {
  auto it = index_.find(item);
  return it == index_.end() ? kUnkIndex : it->second;
}

int Vocabulary::find(const std::string& item) const {
  auto it = index_.find(item);
  return it == index_.end() ? -1 : it->second;
}

const std::string& Vocabulary::at(int index) const {
  if (index < 0 || index >= size())
    throw IndexOutOfRange("vocabulary index " + std::to_string(index) +
                          " out of range for size " + std::to_string(size()));
  return items_[static_cast<size_t>(index)];
}

uint64_t Vocabulary::hash() const {
  uint64_t h = 14695981039346656037ull;
  auto eat = [&h](unsigned char c) {
    h ^= c;
    h *= 1099511628211ull;
  };
  for (const std::string& item : items_) {
    for (char c : item) eat(static_cast<unsigned char>(c));
    eat(0);
  }
  return h;
}

namespace {

// Reserved entries first (carrying their observed counts), then everything
// else by descending count, ties lexicographic.
Vocabulary finalize(std::unordered_map<std::string, int64_t> counts,
                    const std::vector<std::string>& reserved) {
  Vocabulary v;
  for (const std::string& r : reserved) {
    auto it = counts.find(r);
    v.add(r, it == counts.end() ? 0 : it->second);
    if (it != counts.end()) counts.erase(it);
  }
  std::vector<std::pair<std::string, int64_t>> rest(counts.begin(), counts.end());
  std::sort(rest.begin(), rest.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  for (auto& [item, count] : rest) v.add(item, count);
  return v;
}

constexpr std::array<const char*, 5> kKinds = {"token", "ast_path", "cfg_path",
                                               "pdg_path", "label"};

template <typename Set>
auto& pick(Set& vocab, int kind) {
  switch (kind) {
    case 0: return vocab.tokens;
    case 1: return vocab.paths[0];
    case 2: return vocab.paths[1];
    case 3: return vocab.paths[2];
    default: return vocab.labels;
  }
}

}  // namespace

VocabSet build_vocabularies(const std::vector<Sample>& train) {
  std::unordered_map<std::string, int64_t> tokens, labels;
  std::array<std::unordered_map<std::string, int64_t>, 3> paths;
  for (const Sample& s : train) {
    ++labels[s.label];
    for (int r = 0; r < 3; ++r) {
      for (const PathContext& pc : s.contexts[r]) {
        ++tokens[pc.start_token];
        ++tokens[pc.end_token];
        ++paths[static_cast<size_t>(r)][pc.path_string];
      }
    }
  }

  VocabSet v;
  v.tokens = finalize(std::move(tokens),
                      {kPadToken, kUnkToken, normalize_token(kMaskToken)});
  for (int r = 0; r < 3; ++r)
    v.paths[static_cast<size_t>(r)] =
        finalize(std::move(paths[static_cast<size_t>(r)]), {kPadToken, kUnkToken});
  v.labels = finalize(std::move(labels), {});
  return v;
}

void write_vocab(const VocabSet& vocab, std::ostream& out) {
  for (int k = 0; k < 5; ++k) {
    const Vocabulary& v = pick(vocab, k);
    for (int i = 0; i < v.size(); ++i)
      out << kKinds[static_cast<size_t>(k)] << '\t' << v.at(i) << '\t' << i << '\t'
          << v.count_at(i) << '\n';
  }
}

VocabSet read_vocab(std::istream& in) {
  VocabSet out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;

    std::array<std::string, 4> field;
    size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
      size_t tab = line.find('\t', pos);
      if (tab == std::string::npos)
        throw FormatError(lineno, "expected four tab-separated fields");
      field[static_cast<size_t>(i)] = line.substr(pos, tab - pos);
      pos = tab + 1;
    }
    if (line.find('\t', pos) != std::string::npos)
      throw FormatError(lineno, "expected four tab-separated fields");
    field[3] = line.substr(pos);

    int kind = -1;
    for (int k = 0; k < 5; ++k)
      if (field[0] == kKinds[static_cast<size_t>(k)]) kind = k;
    if (kind < 0)
      throw FormatError(lineno, "unknown vocabulary kind '" + field[0] + "'");
    if (field[1].empty()) throw FormatError(lineno, "empty vocabulary entry");

    long long index = 0, count = 0;
    try {
      index = std::stoll(field[2]);
      count = std::stoll(field[3]);
    } catch (const std::exception&) {
      throw FormatError(lineno, "index and count must be integers");
    }

    Vocabulary& v = pick(out, kind);
    if (index != v.size())
      throw FormatError(lineno, "vocabulary indices must be dense and ascending");
    v.add(field[1], count);
  }
  return out;
}

EncodedSample encode_sample(const Sample& sample, const VocabSet& vocab) {
  EncodedSample out;
  out.label = vocab.labels.find(sample.label);
  for (int r = 0; r < 3; ++r) {
    const auto& src = sample.contexts[static_cast<size_t>(r)];
    auto& dst = out.contexts[static_cast<size_t>(r)];
    dst.reserve(src.size());
    for (const PathContext& pc : src)
      dst.push_back({vocab.tokens.lookup(pc.start_token),
                     vocab.paths[static_cast<size_t>(r)].lookup(pc.path_string),
                     vocab.tokens.lookup(pc.end_token)});
  }
  return out;
}

}  // namespace pathvec
