#include "pathvec/corpus.hpp"

#include <cctype>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "pathvec/cfg.hpp"
#include "pathvec/errors.hpp"
#include "pathvec/parser.hpp"
#include "pathvec/pdg.hpp"
#include "pathvec/rng.hpp"

namespace pathvec {

// ---------------------------------------------------------------------------
// Labels
// ---------------------------------------------------------------------------

std::string normalize_label(std::string_view raw) {
  std::vector<std::string> parts;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      parts.push_back(cur);
      cur.clear();
    }
  };

  for (size_t i = 0; i < raw.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(raw[i]);
    if (!std::isalnum(c)) {
      flush();
      continue;
    }
    if (!cur.empty()) {
      unsigned char p = static_cast<unsigned char>(raw[i - 1]);
      bool camel = std::islower(p) && std::isupper(c);
      bool acronym_end = std::isupper(p) && std::isupper(c) && i + 1 < raw.size() &&
                         std::islower(static_cast<unsigned char>(raw[i + 1]));
      bool digit_edge = (std::isdigit(p) && std::isalpha(c)) ||
                        (std::isalpha(p) && std::isdigit(c));
      if (camel || acronym_end || digit_edge) flush();
    }
    cur += static_cast<char>(std::tolower(c));
  }
  flush();

  if (parts.empty()) throw EmptyLabel();
  std::string out = parts[0];
  for (size_t i = 1; i < parts.size(); ++i) out += "|" + parts[i];
  return out;
}

std::vector<std::string> split_label(std::string_view label) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : label) {
    if (c == '|') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

// ---------------------------------------------------------------------------
// Sample construction
// ---------------------------------------------------------------------------

namespace {

struct FileOutcome {
  std::vector<Sample> samples;
  std::vector<DropRecord> drops;
  std::array<int64_t, 3> before = {0, 0, 0};
  std::array<int64_t, 3> after = {0, 0, 0};
  int64_t functions = 0;
  std::vector<std::string> warnings;
};

// Tokens are normalized once here so later render/parse cycles are exact.
void bake(std::vector<PathContext>& contexts) {
  for (PathContext& pc : contexts)
    pc = parse_path_context(render_path_context(pc), pc.kind);
}

// Extracts, records pre-cap counts, samples down and normalizes. Returns
// false when some representation came up empty (reason is filled in).
bool extract_all(const CodeGraph& g, const CorpusOptions& opts, uint64_t seed,
                 FileOutcome& out, std::array<std::vector<PathContext>, 3>& ctx,
                 std::string& reason) {
  ExtractionLimits limits = opts.limits;
  ExtractResult results[3] = {extract_ast_paths(g, limits), extract_cfg_paths(g, limits),
                              extract_pdg_paths(g, limits)};
  for (int r = 0; r < 3; ++r) {
    if (results[r].truncated)
      out.warnings.push_back(std::string(kRepNames[r]) + " enumeration capped for '" +
                             g.function_name + "'");
    out.before[r] += static_cast<int64_t>(results[r].paths.size());
    if (results[r].paths.empty()) {
      reason = std::string("no ") + kRepNames[r] + " paths";
      return false;
    }
    limits.seed = mix_seed(seed, static_cast<uint64_t>(r));
    ctx[r] = sample_paths(std::move(results[r].paths), limits);
    bake(ctx[r]);
  }
  return true;
}

FileOutcome process_method_file(const SourceFile& file, const CorpusOptions& opts,
                                uint64_t file_seed) {
  FileOutcome out;
  std::vector<FunctionAst> fns;
  try {
    fns = parse_c(file.content);
  } catch (const std::exception& e) {
    out.drops.push_back({file.path, "", e.what()});
    return out;
  }

  for (size_t k = 0; k < fns.size(); ++k) {
    FunctionAst& fn = fns[k];
    ++out.functions;
    std::string label;
    try {
      label = normalize_label(fn.name);
    } catch (const EmptyLabel&) {
      out.drops.push_back({file.path, fn.name, "label normalizes to nothing"});
      continue;
    }
    mask_method_name(fn, fn.name, kMaskToken);

    CodeGraph g = build_ast_graph(fn);
    try {
      CfgInfo info = build_cfg(g, fn);
      build_pdg(g, info);
    } catch (const std::exception& e) {
      out.drops.push_back({file.path, fn.name, e.what()});
      continue;
    }

    std::array<std::vector<PathContext>, 3> ctx;
    std::string reason;
    if (!extract_all(g, opts, mix_seed(file_seed, k), out, ctx, reason)) {
      out.drops.push_back({file.path, fn.name, reason});
      continue;
    }
    for (int r = 0; r < 3; ++r) out.after[r] += static_cast<int64_t>(ctx[r].size());
    out.samples.push_back(Sample{std::move(label), std::move(ctx)});
  }
  return out;
}

FileOutcome process_class_file(const SourceFile& file, const CorpusOptions& opts,
                               uint64_t file_seed) {
  FileOutcome out;
  std::string label;
  try {
    label = normalize_label(file.label);
  } catch (const EmptyLabel&) {
    out.drops.push_back({file.path, "", "class label normalizes to nothing"});
    return out;
  }

  std::vector<FunctionAst> fns;
  try {
    fns = parse_c(file.content);
  } catch (const std::exception& e) {
    out.drops.push_back({file.path, "", e.what()});
    return out;
  }
  if (fns.empty()) {
    out.drops.push_back({file.path, "", "no function definitions"});
    return out;
  }

  // Pool every function's paths, then apply the caps to the whole file.
  std::array<std::vector<PathContext>, 3> pooled;
  ExtractionLimits enumerate_only = opts.limits;
  for (size_t k = 0; k < fns.size(); ++k) {
    ++out.functions;
    CodeGraph g = build_ast_graph(fns[k]);
    try {
      CfgInfo info = build_cfg(g, fns[k]);
      build_pdg(g, info);
    } catch (const std::exception& e) {
      out.drops.push_back({file.path, fns[k].name, e.what()});
      continue;
    }
    ExtractResult results[3] = {extract_ast_paths(g, enumerate_only),
                                extract_cfg_paths(g, enumerate_only),
                                extract_pdg_paths(g, enumerate_only)};
    for (int r = 0; r < 3; ++r) {
      if (results[r].truncated)
        out.warnings.push_back(std::string(kRepNames[r]) + " enumeration capped for '" +
                               fns[k].name + "'");
      out.before[r] += static_cast<int64_t>(results[r].paths.size());
      for (PathContext& pc : results[r].paths) pooled[r].push_back(std::move(pc));
    }
  }

  for (int r = 0; r < 3; ++r) {
    if (pooled[r].empty()) {
      out.drops.push_back({file.path, "", std::string("no ") + kRepNames[r] + " paths"});
      return out;
    }
    ExtractionLimits limits = opts.limits;
    limits.seed = mix_seed(file_seed, static_cast<uint64_t>(r));
    pooled[r] = sample_paths(std::move(pooled[r]), limits);
    bake(pooled[r]);
    out.after[r] += static_cast<int64_t>(pooled[r].size());
  }
  out.samples.push_back(Sample{std::move(label), std::move(pooled)});
  return out;
}

template <typename Process>
std::vector<Sample> run_build(const std::vector<SourceFile>& files,
                              const CorpusOptions& opts, BuildReport& report,
                              Process process) {
  std::vector<FileOutcome> outcomes(files.size());
  const int threads = std::max(1, opts.threads);

  auto work = [&](int t) {
    for (size_t i = static_cast<size_t>(t); i < files.size();
         i += static_cast<size_t>(threads)) {
      uint64_t file_seed = mix_seed(opts.limits.seed, i);
      try {
        outcomes[i] = process(files[i], opts, file_seed);
      } catch (const std::exception& e) {
        outcomes[i] = FileOutcome{};
        outcomes[i].drops.push_back({files[i].path, "", e.what()});
      }
    }
  };

  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (std::thread& th : pool) th.join();
  }

  std::vector<Sample> samples;
  for (FileOutcome& o : outcomes) {
    report.functions_seen += o.functions;
    report.samples_kept += static_cast<int64_t>(o.samples.size());
    for (int r = 0; r < 3; ++r) {
      report.paths_before_caps[r] += o.before[r];
      report.paths_after_caps[r] += o.after[r];
    }
    for (DropRecord& d : o.drops) report.drops.push_back(std::move(d));
    for (std::string& w : o.warnings) report.warnings.push_back(std::move(w));
    for (Sample& s : o.samples) samples.push_back(std::move(s));
  }
  return samples;
}

}  // namespace

std::vector<Sample> build_method_samples(const std::vector<SourceFile>& files,
                                         const CorpusOptions& opts, BuildReport& report) {
  opts.limits.validate();
  return run_build(files, opts, report, process_method_file);
}

std::vector<Sample> build_file_samples(const std::vector<SourceFile>& files,
                                       const CorpusOptions& opts, BuildReport& report) {
  opts.limits.validate();
  return run_build(files, opts, report, process_class_file);
}

// ---------------------------------------------------------------------------
// Splits
// ---------------------------------------------------------------------------

namespace {

void shuffle(std::vector<size_t>& idx, Rng& rng) {
  for (size_t i = idx.size(); i > 1; --i)
    std::swap(idx[i - 1], idx[rng.below(i)]);
}

}  // namespace

Splits make_splits(std::vector<Sample> samples, uint64_t seed, bool stratified) {
  Splits out;
  Rng rng(seed);

  // Groups of indices to split with the 70/20/10 rule applied per group.
  std::vector<std::vector<size_t>> groups;
  if (stratified) {
    std::map<std::string, std::vector<size_t>> by_label;
    for (size_t i = 0; i < samples.size(); ++i) by_label[samples[i].label].push_back(i);
    for (auto& [label, idx] : by_label) {
      if (idx.size() < 10) throw ClassTooSmall(label, idx.size());
      groups.push_back(std::move(idx));
    }
  } else {
    std::vector<size_t> all(samples.size());
    for (size_t i = 0; i < samples.size(); ++i) all[i] = i;
    groups.push_back(std::move(all));
  }

  for (std::vector<size_t>& idx : groups) {
    shuffle(idx, rng);
    const size_t n = idx.size();
    size_t n_train = static_cast<size_t>(std::llround(0.7 * static_cast<double>(n)));
    size_t n_val = static_cast<size_t>(std::llround(0.2 * static_cast<double>(n)));
    if (n_train + n_val > n) n_val = n - n_train;
    for (size_t i = 0; i < n; ++i) {
      Sample& s = samples[idx[i]];
      if (i < n_train)
        out.train.push_back(std::move(s));
      else if (i < n_train + n_val)
        out.val.push_back(std::move(s));
      else
        out.test.push_back(std::move(s));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dataset files
// ---------------------------------------------------------------------------

void write_dataset(const std::vector<Sample>& samples, std::ostream& out) {
  for (const Sample& s : samples) {
    out << s.label << ' ';
    for (int r = 0; r < 3; ++r) {
      if (r) out << '\t';
      const auto& contexts = s.contexts[r];
      for (size_t i = 0; i < contexts.size(); ++i) {
        if (i) out << ' ';
        out << render_path_context(contexts[i]);
      }
    }
    out << '\n';
  }
}

std::vector<Sample> read_dataset(std::istream& in) {
  std::vector<Sample> samples;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;

    size_t sp = line.find(' ');
    if (sp == std::string::npos || sp == 0)
      throw FormatError(lineno, "expected 'label<SP>contexts'");
    Sample s;
    s.label = line.substr(0, sp);

    std::string rest = line.substr(sp + 1);
    std::array<std::string, 3> sections;
    size_t t1 = rest.find('\t');
    size_t t2 = t1 == std::string::npos ? std::string::npos : rest.find('\t', t1 + 1);
    if (t1 == std::string::npos || t2 == std::string::npos ||
        rest.find('\t', t2 + 1) != std::string::npos)
      throw FormatError(lineno, "expected exactly three tab-separated sections");
    sections[0] = rest.substr(0, t1);
    sections[1] = rest.substr(t1 + 1, t2 - t1 - 1);
    sections[2] = rest.substr(t2 + 1);

    for (int r = 0; r < 3; ++r) {
      std::istringstream ss(sections[r]);
      std::string item;
      while (ss >> item) {
        try {
          s.contexts[r].push_back(parse_path_context(item, static_cast<Rep>(r)));
        } catch (const FormatError& e) {
          std::string msg = e.what();
          if (msg.rfind("line 0: ", 0) == 0) msg = msg.substr(8);
          throw FormatError(lineno, msg);
        }
      }
    }
    samples.push_back(std::move(s));
  }
  return samples;
}

}  // namespace pathvec
