// pathvec: end-to-end driver for path-context extraction, model training and
// the downstream tasks (method naming, classification, clone detection).
//
// Subcommands: extract, train, eval, embed, clones, sweep, bench. Every
// command works inside a run directory that receives the resolved config, a
// version stamp, an append-only log and the command's artifacts. Exit codes:
// 0 success, 1 usage error, 2 data error, 3 numeric fault.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "pathvec/cfg.hpp"
#include "pathvec/checkpoint.hpp"
#include "pathvec/corpus.hpp"
#include "pathvec/dot.hpp"
#include "pathvec/errors.hpp"
#include "pathvec/graph.hpp"
#include "pathvec/parser.hpp"
#include "pathvec/pdg.hpp"
#include "pathvec/runconfig.hpp"
#include "pathvec/tasks.hpp"
#include "pathvec/vocab.hpp"

#ifndef PATHVEC_VERSION
#define PATHVEC_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using namespace pathvec;

namespace {

// Failures caused by the data or by missing artifacts (exit code 2), as
// opposed to invalid flags or config values (exit code 1).
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunPaths {
  fs::path dir, train, val, test, vocab, checkpoint, vectors;
};

RunPaths run_paths(const RunConfig& cfg) {
  RunPaths p;
  p.dir = fs::path(cfg.run);
  p.train = p.dir / "train.txt";
  p.val = p.dir / "val.txt";
  p.test = p.dir / "test.txt";
  p.vocab = p.dir / "vocab.txt";
  p.checkpoint = p.dir / "model.bin";
  p.vectors = p.dir / "vectors.txt";
  return p;
}

// Prints to stdout and appends to <run>/log.txt.
class Logger {
 public:
  Logger(const fs::path& dir, const std::string& command) {
    file_.open(dir / "log.txt", std::ios::app);
    line("[" + command + "]");
  }
  void line(const std::string& s) {
    std::cout << s << "\n";
    if (file_) file_ << s << "\n";
  }

 private:
  std::ofstream file_;
};

void stamp_run_dir(const RunConfig& cfg, const RunPaths& p) {
  fs::create_directories(p.dir);
  std::ofstream conf(p.dir / "config.txt", std::ios::trunc);
  write_config(cfg, conf);
  std::ofstream version(p.dir / "version.txt", std::ios::trunc);
  version << "pathvec " << PATHVEC_VERSION << "\n"
          << "real-width " << sizeof(real) * 8 << "\n";
}

int effective_threads(const RunConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

std::string fmt(double v, int precision = 3) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(precision) << v;
  return out.str();
}

void need_file(const fs::path& f, const std::string& what, const std::string& producer) {
  if (!fs::exists(f))
    throw DataError("missing " + what + " '" + f.string() + "'; run the " + producer +
                    " command first");
}

std::vector<Sample> load_dataset(const fs::path& f, const std::string& what,
                                 const std::string& producer) {
  need_file(f, what, producer);
  std::ifstream in(f);
  if (!in) throw DataError("cannot open '" + f.string() + "'");
  return read_dataset(in);
}

VocabSet load_vocab(const RunPaths& p) {
  need_file(p.vocab, "vocabulary", "extract");
  std::ifstream in(p.vocab);
  if (!in) throw DataError("cannot open '" + p.vocab.string() + "'");
  return read_vocab(in);
}

Model load_model(const RunPaths& p, const VocabSet& vocab) {
  need_file(p.checkpoint, "model checkpoint", "train");
  return load_checkpoint(p.checkpoint.string(), &vocab);
}

// ---------------------------------------------------------------------------
// corpus input

struct CorpusInput {
  std::vector<SourceFile> sources;   // .c files
  std::vector<SourceFile> dot_files; // .dot exports, content unparsed
};

std::string read_file(const fs::path& f) {
  std::ifstream in(f, std::ios::binary);
  if (!in) throw DataError("cannot read '" + f.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Class label: first path component under the corpus root, or the file stem
// for files sitting directly in the root.
std::string label_for(const fs::path& root, const fs::path& file) {
  const fs::path rel = fs::relative(file, root);
  if (rel.has_parent_path() && !rel.parent_path().string().empty())
    return rel.begin()->string();
  return file.stem().string();
}

CorpusInput load_corpus(const std::string& dir) {
  if (dir.empty())
    throw std::invalid_argument("no corpus directory set (key 'corpus' or --corpus)");
  const fs::path root(dir);
  if (!fs::is_directory(root))
    throw DataError("corpus directory '" + dir + "' does not exist");

  std::vector<fs::path> c_files, dot_files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    const std::string ext = entry.path().extension().string();
    if (ext == ".c")
      c_files.push_back(entry.path());
    else if (ext == ".dot")
      dot_files.push_back(entry.path());
  }
  std::sort(c_files.begin(), c_files.end());
  std::sort(dot_files.begin(), dot_files.end());

  CorpusInput input;
  for (const fs::path& f : c_files)
    input.sources.push_back({fs::relative(f, root).string(), label_for(root, f), read_file(f)});
  for (const fs::path& f : dot_files)
    input.dot_files.push_back({fs::relative(f, root).string(), label_for(root, f), read_file(f)});
  return input;
}

// ---------------------------------------------------------------------------
// extraction from DOT exports

std::array<std::vector<PathContext>, 3> extract_graph_paths(const CodeGraph& g,
                                                            const ExtractionLimits& limits,
                                                            std::array<int64_t, 3>& before,
                                                            std::vector<std::string>& warnings,
                                                            const std::string& where) {
  std::array<std::vector<PathContext>, 3> out;
  for (int r = 0; r < 3; ++r) {
    const Rep kind = static_cast<Rep>(r);
    ExtractResult res = r == 0   ? extract_ast_paths(g, limits)
                        : r == 1 ? extract_cfg_paths(g, limits)
                                 : extract_pdg_paths(g, limits);
    if (res.truncated)
      warnings.push_back(std::string(kRepNames[static_cast<size_t>(r)]) +
                         " enumeration capped for '" + where + "'");
    before[static_cast<size_t>(r)] += static_cast<int64_t>(res.paths.size());
    // Bake rendering so tokens match what the dataset files will hold.
    for (PathContext& pc : res.paths)
      pc = parse_path_context(render_path_context(pc), kind);
    out[static_cast<size_t>(r)] = std::move(res.paths);
  }
  return out;
}

void append_dot_samples(const std::vector<SourceFile>& dot_files, bool file_level,
                        const ExtractionLimits& limits, std::vector<Sample>& samples,
                        BuildReport& report) {
  for (size_t fi = 0; fi < dot_files.size(); ++fi) {
    const SourceFile& file = dot_files[fi];
    DotImport imported;
    try {
      imported = import_dot(file.content, file.path);
    } catch (const std::exception& e) {
      report.drops.push_back({file.path, "", e.what()});
      continue;
    }
    for (const std::string& w : imported.warnings) report.warnings.push_back(w);

    const uint64_t file_seed = mix_seed(mix_seed(limits.seed, 0xd07), fi);
    std::array<std::vector<PathContext>, 3> pooled;
    std::array<int64_t, 3> before = {0, 0, 0};
    std::vector<Sample> local;

    for (size_t gi = 0; gi < imported.graphs.size(); ++gi) {
      const CodeGraph& g = imported.graphs[gi];
      ++report.functions_seen;
      auto paths = extract_graph_paths(g, limits, before, report.warnings,
                                       file.path + ":" + g.function_name);
      if (file_level) {
        for (int r = 0; r < 3; ++r) {
          auto& pool = pooled[static_cast<size_t>(r)];
          pool.insert(pool.end(), paths[static_cast<size_t>(r)].begin(),
                      paths[static_cast<size_t>(r)].end());
        }
        continue;
      }
      Sample s;
      try {
        s.label = normalize_label(g.function_name);
      } catch (const EmptyLabel&) {
        report.drops.push_back({file.path, g.function_name, "label normalizes to nothing"});
        continue;
      }
      bool empty_rep = false;
      for (int r = 0; r < 3; ++r) {
        if (paths[static_cast<size_t>(r)].empty()) {
          report.drops.push_back({file.path, g.function_name,
                                  std::string("no ") + kRepNames[static_cast<size_t>(r)] +
                                      " paths"});
          empty_rep = true;
          break;
        }
        ExtractionLimits per = limits;
        per.seed = mix_seed(mix_seed(file_seed, gi), static_cast<uint64_t>(r));
        s.contexts[static_cast<size_t>(r)] =
            sample_paths(std::move(paths[static_cast<size_t>(r)]), per);
      }
      if (!empty_rep) local.push_back(std::move(s));
    }

    if (file_level) {
      if (imported.graphs.empty()) {
        report.drops.push_back({file.path, "", "no digraphs in file"});
        continue;
      }
      Sample s;
      try {
        s.label = normalize_label(file.label);
      } catch (const EmptyLabel&) {
        report.drops.push_back({file.path, "", "label normalizes to nothing"});
        continue;
      }
      bool empty_rep = false;
      for (int r = 0; r < 3; ++r) {
        if (pooled[static_cast<size_t>(r)].empty()) {
          report.drops.push_back({file.path, "",
                                  std::string("no ") + kRepNames[static_cast<size_t>(r)] +
                                      " paths"});
          empty_rep = true;
          break;
        }
        ExtractionLimits per = limits;
        per.seed = mix_seed(file_seed, static_cast<uint64_t>(r));
        s.contexts[static_cast<size_t>(r)] =
            sample_paths(std::move(pooled[static_cast<size_t>(r)]), per);
      }
      if (empty_rep) continue;
      local.push_back(std::move(s));
    }

    for (Sample& s : local) {
      for (int r = 0; r < 3; ++r) {
        report.paths_before_caps[static_cast<size_t>(r)] += before[static_cast<size_t>(r)];
        report.paths_after_caps[static_cast<size_t>(r)] +=
            static_cast<int64_t>(s.contexts[static_cast<size_t>(r)].size());
      }
      // `before` is per file; splitting it across method samples would
      // double-count, so only the first sample carries it.
      before = {0, 0, 0};
      ++report.samples_kept;
      samples.push_back(std::move(s));
    }
  }
}

void write_drop_report(const fs::path& file, const BuildReport& report) {
  std::ofstream out(file, std::ios::trunc);
  out << "functions seen: " << report.functions_seen << "\n";
  out << "samples kept:   " << report.samples_kept << "\n";
  out << "drops:          " << report.drops.size() << "\n";
  for (const DropRecord& d : report.drops) {
    out << "  " << d.file;
    if (!d.function.empty()) out << " :: " << d.function;
    out << " -- " << d.reason << "\n";
  }
  out << "warnings:       " << report.warnings.size() << "\n";
  for (const std::string& w : report.warnings) out << "  " << w << "\n";
}

void write_metric_rows(const fs::path& file,
                       const std::vector<std::pair<std::string, std::string>>& rows) {
  std::ofstream out(file, std::ios::trunc);
  out << "metric,value\n";
  for (const auto& [k, v] : rows) out << k << "," << v << "\n";
}

void write_dataset_file(const fs::path& file, const std::vector<Sample>& samples) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  write_dataset(samples, out);
}

// ---------------------------------------------------------------------------
// extract

// One .dot file per source file, one digraph per function, with AST, CFG and
// PDG layers over the shared node set.
void export_dot_corpus(const std::vector<SourceFile>& sources, const fs::path& out_dir,
                       BuildReport& report, Logger& log) {
  int64_t written = 0;
  for (const SourceFile& file : sources) {
    std::vector<FunctionAst> functions;
    try {
      functions = parse_c(file.content);
    } catch (const std::exception& e) {
      report.drops.push_back({file.path, "", std::string("dot export: ") + e.what()});
      continue;
    }
    std::string dots;
    for (const FunctionAst& fn : functions) {
      try {
        CodeGraph g = build_ast_graph(fn);
        const CfgInfo info = build_cfg(g, fn);
        build_pdg(g, info);
        dots += export_dot(g);
      } catch (const std::exception& e) {
        report.drops.push_back({file.path, fn.name, std::string("dot export: ") + e.what()});
      }
    }
    if (dots.empty()) continue;
    fs::path out = out_dir / fs::path(file.path).replace_extension(".dot");
    fs::create_directories(out.parent_path());
    std::ofstream stream(out, std::ios::binary | std::ios::trunc);
    if (!stream) throw DataError("cannot write '" + out.string() + "'");
    stream << dots;
    ++written;
  }
  log.line("exported " + std::to_string(written) + " DOT files to " + out_dir.string());
}

int cmd_extract(const RunConfig& cfg, const std::string& dot_out) {
  const RunPaths p = run_paths(cfg);
  stamp_run_dir(cfg, p);
  Logger log(p.dir, "extract");

  CorpusInput input = load_corpus(cfg.corpus);
  if (input.sources.empty() && input.dot_files.empty())
    throw DataError("no .c or .dot inputs under '" + cfg.corpus + "'");
  log.line("inputs: " + std::to_string(input.sources.size()) + " C files, " +
           std::to_string(input.dot_files.size()) + " DOT files");

  const bool file_level = cfg.granularity == "file";
  CorpusOptions opts;
  opts.limits = cfg.limits;
  opts.threads = effective_threads(cfg);

  BuildReport report;
  std::vector<Sample> samples =
      file_level ? build_file_samples(input.sources, opts, report)
                 : build_method_samples(input.sources, opts, report);
  append_dot_samples(input.dot_files, file_level, cfg.limits, samples, report);
  if (!dot_out.empty()) export_dot_corpus(input.sources, dot_out, report, log);

  if (samples.empty())
    throw DataError("no valid samples were extracted from '" + cfg.corpus + "' (" +
                    std::to_string(report.drops.size()) + " drops, see extract_report.txt)");

  log.line("functions seen: " + std::to_string(report.functions_seen) +
           ", samples kept: " + std::to_string(samples.size()) +
           ", drops: " + std::to_string(report.drops.size()));

  const double kept = static_cast<double>(report.samples_kept);
  auto mean_of = [&](const std::array<int64_t, 3>& totals, int r) {
    return kept > 0 ? static_cast<double>(totals[static_cast<size_t>(r)]) / kept : 0.0;
  };
  auto mean_row = [&](const char* name, const std::array<int64_t, 3>& totals) {
    std::ostringstream row;
    row << "  " << std::left << std::setw(13) << name;
    for (int r = 0; r < 3; ++r) row << std::setw(11) << fmt(mean_of(totals, r), 1);
    log.line(row.str());
  };
  log.line("average path contexts per sample");
  log.line("               AST        CFG        PDG");
  mean_row("enumerated", report.paths_before_caps);
  mean_row("kept", report.paths_after_caps);

  Splits splits = make_splits(std::move(samples), cfg.seed, cfg.stratified_effective());
  VocabSet vocab = build_vocabularies(splits.train);

  write_dataset_file(p.train, splits.train);
  write_dataset_file(p.val, splits.val);
  write_dataset_file(p.test, splits.test);
  {
    std::ofstream out(p.vocab, std::ios::binary | std::ios::trunc);
    write_vocab(vocab, out);
  }
  write_drop_report(p.dir / "extract_report.txt", report);

  log.line("splits: train " + std::to_string(splits.train.size()) + ", val " +
           std::to_string(splits.val.size()) + ", test " + std::to_string(splits.test.size()));
  log.line("vocabulary: " + std::to_string(vocab.tokens.size()) + " tokens, " +
           std::to_string(vocab.labels.size()) + " labels");
  log.line("wrote " + p.train.string() + ", " + p.val.string() + ", " + p.test.string() +
           ", " + p.vocab.string());
  return 0;
}

// ---------------------------------------------------------------------------
// train

int cmd_train(const RunConfig& cfg) {
  const RunPaths p = run_paths(cfg);
  stamp_run_dir(cfg, p);
  Logger log(p.dir, "train");

  VocabSet vocab = load_vocab(p);
  std::vector<Sample> train = load_dataset(p.train, "training dataset", "extract");
  std::vector<Sample> val;
  if (fs::exists(p.val))
    val = load_dataset(p.val, "validation dataset", "extract");
  else
    log.line("note: no validation dataset; selecting on the training metric");
  if (train.empty()) throw DataError("'" + p.train.string() + "' has no samples");

  Model model = init_model(cfg.model_config(), vocab);
  TrainConfig tc = cfg.train_config();
  tc.checkpoint_path = p.checkpoint.string();

  log.line("training " + cfg.task + " on " + std::to_string(train.size()) + " samples (" +
           std::to_string(val.size()) + " validation), dim " + std::to_string(cfg.dim));

  std::ofstream csv(p.dir / "metrics.csv", std::ios::trunc);
  TrainResult result = train_task(model, train, val, vocab, tc, &csv);
  save_checkpoint(result.best, p.checkpoint.string());

  const std::string metric = cfg.task == "naming" ? "subtoken F1" : "accuracy";
  log.line("best " + metric + " " + fmt(result.best_metric, 4) + " at epoch " +
           std::to_string(result.best_epoch));
  log.line("wrote " + p.checkpoint.string() + " and " + (p.dir / "metrics.csv").string());

  std::ofstream summary(p.dir / "train_summary.txt", std::ios::trunc);
  summary << "task: " << cfg.task << "\n"
          << "train samples: " << train.size() << "\n"
          << "val samples: " << val.size() << "\n"
          << "epochs run: " << (result.log.empty() ? 0 : result.log.back().epoch) << "\n"
          << "best epoch: " << result.best_epoch << "\n"
          << "best " << metric << ": " << fmt(result.best_metric, 6) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// eval

int cmd_eval(const RunConfig& cfg) {
  const RunPaths p = run_paths(cfg);
  stamp_run_dir(cfg, p);
  Logger log(p.dir, "eval");

  VocabSet vocab = load_vocab(p);
  Model model = load_model(p, vocab);
  std::vector<Sample> test = load_dataset(p.test, "test dataset", "extract");
  if (test.empty()) throw DataError("'" + p.test.string() + "' has no samples");

  std::vector<std::pair<std::string, std::string>> rows;
  std::ofstream summary(p.dir / "eval_summary.txt", std::ios::trunc);
  if (cfg.task == "naming") {
    NamingMetrics nm = evaluate_method_naming(model, test, vocab);
    rows = {{"samples", std::to_string(test.size())},
            {"precision", fmt(nm.precision, 6)},
            {"recall", fmt(nm.recall, 6)},
            {"f1", fmt(nm.f1, 6)}};
    log.line("subtoken precision " + fmt(nm.precision, 4) + ", recall " +
             fmt(nm.recall, 4) + ", F1 " + fmt(nm.f1, 4));
    summary << "method naming on " << test.size() << " samples\n"
            << "precision: " << fmt(nm.precision, 6) << "\n"
            << "recall:    " << fmt(nm.recall, 6) << "\n"
            << "f1:        " << fmt(nm.f1, 6) << "\n";
  } else {
    ClassificationResult cr = evaluate_classification(model, test, vocab);
    rows = {{"samples", std::to_string(test.size())}, {"accuracy", fmt(cr.accuracy, 6)}};
    log.line("accuracy " + fmt(cr.accuracy, 4) + " over " + std::to_string(test.size()) +
             " samples");
    summary << "classification on " << test.size() << " samples\n"
            << "accuracy: " << fmt(cr.accuracy, 6) << "\n";

    std::ofstream confusion(p.dir / "confusion.csv", std::ios::trunc);
    confusion << "true\\predicted";
    for (int i = 0; i < vocab.labels.size(); ++i) confusion << "," << vocab.labels.at(i);
    confusion << "\n";
    for (int i = 0; i < vocab.labels.size(); ++i) {
      confusion << vocab.labels.at(i);
      for (int j = 0; j < vocab.labels.size(); ++j)
        confusion << "," << cr.confusion[static_cast<size_t>(i)][static_cast<size_t>(j)];
      confusion << "\n";
    }
  }
  write_metric_rows(p.dir / "eval.csv", rows);
  log.line("wrote " + (p.dir / "eval.csv").string());
  return 0;
}

// ---------------------------------------------------------------------------
// embed

int cmd_embed(const RunConfig& cfg) {
  const RunPaths p = run_paths(cfg);
  stamp_run_dir(cfg, p);
  Logger log(p.dir, "embed");

  VocabSet vocab = load_vocab(p);
  Model model = load_model(p, vocab);

  std::vector<std::pair<std::string, fs::path>> splits;
  if (cfg.embed_split == "all")
    splits = {{"train", p.train}, {"val", p.val}, {"test", p.test}};
  else if (cfg.embed_split == "train")
    splits = {{"train", p.train}};
  else if (cfg.embed_split == "val")
    splits = {{"val", p.val}};
  else
    splits = {{"test", p.test}};

  std::vector<Sample> samples;
  std::vector<std::string> ids;
  for (const auto& [name, file] : splits) {
    std::vector<Sample> part = load_dataset(file, name + " dataset", "extract");
    for (size_t i = 0; i < part.size(); ++i) ids.push_back(name + ":" + std::to_string(i));
    samples.insert(samples.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
  }
  if (samples.empty()) throw DataError("no samples in the requested split(s)");

  VectorStore store = export_code_vectors(model, samples, ids, vocab);
  {
    std::ofstream out(p.vectors, std::ios::binary | std::ios::trunc);
    write_vector_store(store, out);
  }
  log.line("wrote " + std::to_string(store.entries.size()) + " code vectors (dim " +
           std::to_string(store.dim) + ") to " + p.vectors.string());

  std::ofstream summary(p.dir / "embed_summary.txt", std::ios::trunc);
  summary << "split: " << cfg.embed_split << "\n"
          << "vectors: " << store.entries.size() << "\n"
          << "dim: " << store.dim << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// clones and sweep

std::vector<ClonePair> sampled_pairs(const RunConfig& cfg, const VectorStore& store,
                                     Logger& log) {
  std::vector<std::string> warnings;
  std::vector<ClonePair> pairs;
  try {
    pairs = sample_clone_pairs(store, cfg.clone_classes, cfg.clone_true, cfg.clone_false,
                               cfg.seed, &warnings);
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());  // data shortfall, not a usage mistake
  }
  for (const std::string& w : warnings) log.line("warning: " + w);
  score_pairs(store, pairs);
  return pairs;
}

VectorStore load_vectors(const RunPaths& p) {
  need_file(p.vectors, "code vectors", "embed");
  std::ifstream in(p.vectors);
  if (!in) throw DataError("cannot open '" + p.vectors.string() + "'");
  return read_vector_store(in);
}

int cmd_clones(const RunConfig& cfg) {
  const RunPaths p = run_paths(cfg);
  stamp_run_dir(cfg, p);
  Logger log(p.dir, "clones");

  VectorStore store = load_vectors(p);
  std::vector<ClonePair> pairs = sampled_pairs(cfg, store, log);
  int64_t n_true = 0;
  for (const ClonePair& pr : pairs) n_true += pr.ground_truth;

  CloneMetrics m = detect_clones(pairs, cfg.theta);
  log.line("clone detection over " + std::to_string(pairs.size()) + " pairs (" +
           std::to_string(n_true) + " true) at theta " + fmt(cfg.theta, 2));
  log.line("precision " + fmt(m.precision, 4) + ", recall " + fmt(m.recall, 4) + ", F1 " +
           fmt(m.f1, 4));

  write_metric_rows(p.dir / "clones.csv",
                    {{"pairs", std::to_string(pairs.size())},
                     {"true_pairs", std::to_string(n_true)},
                     {"theta", fmt(cfg.theta, 2)},
                     {"precision", fmt(m.precision, 6)},
                     {"recall", fmt(m.recall, 6)},
                     {"f1", fmt(m.f1, 6)}});
  std::ofstream summary(p.dir / "clones_summary.txt", std::ios::trunc);
  summary << "pairs: " << pairs.size() << " (" << n_true << " true)\n"
          << "theta: " << fmt(cfg.theta, 2) << "\n"
          << "precision: " << fmt(m.precision, 6) << "\n"
          << "recall:    " << fmt(m.recall, 6) << "\n"
          << "f1:        " << fmt(m.f1, 6) << "\n";
  log.line("wrote " + (p.dir / "clones.csv").string());
  return 0;
}

int cmd_sweep(const RunConfig& cfg) {
  const RunPaths p = run_paths(cfg);
  stamp_run_dir(cfg, p);
  Logger log(p.dir, "sweep");

  VectorStore store = load_vectors(p);
  std::vector<ClonePair> pairs = sampled_pairs(cfg, store, log);
  SweepResult sr = threshold_sweep(pairs);

  std::ofstream curve(p.dir / "sweep.csv", std::ios::trunc);
  curve << "theta,precision,recall,f1\n";
  for (const SweepPoint& pt : sr.curve)
    curve << fmt(pt.theta, 2) << "," << fmt(pt.precision, 6) << "," << fmt(pt.recall, 6)
          << "," << fmt(pt.f1, 6) << "\n";

  log.line("best F1 " + fmt(sr.best_f1, 4) + " at theta " + fmt(sr.best_theta, 2) + " over " +
           std::to_string(pairs.size()) + " pairs");
  std::ofstream summary(p.dir / "sweep_summary.txt", std::ios::trunc);
  summary << "pairs: " << pairs.size() << "\n"
          << "best theta: " << fmt(sr.best_theta, 2) << "\n"
          << "best f1: " << fmt(sr.best_f1, 6) << "\n";
  log.line("wrote " + (p.dir / "sweep.csv").string());
  return 0;
}

// ---------------------------------------------------------------------------
// bench

struct BenchRow {
  std::string combo;
  int64_t samples = 0;
  double mean = 0, std_dev = 0;
  bool valid = false;
  std::string unit;
};

const std::array<std::array<bool, 3>, 4> kCombos = {
    {{true, false, false}, {true, true, false}, {true, false, true}, {true, true, true}}};

std::string combo_name(const std::array<bool, 3>& reps) {
  std::string s = "ast";
  if (reps[1]) s += "+cfg";
  if (reps[2]) s += "+pdg";
  return s;
}

BenchRow time_runs(const std::string& combo, int64_t samples, int warmup, int reps,
                   double per_minute, const std::function<void()>& body) {
  BenchRow row;
  row.combo = combo;
  row.samples = samples;
  row.unit = per_minute > 0 ? "samples/min" : "samples/s";
  if (samples <= 0) return row;  // reported as n/a

  for (int i = 0; i < warmup; ++i) body();
  std::vector<double> throughput;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    const double seconds = std::max(dt.count(), 1e-9);
    throughput.push_back(static_cast<double>(samples) / seconds *
                         (per_minute > 0 ? 60.0 : 1.0));
  }
  double mean = 0;
  for (double t : throughput) mean += t;
  mean /= static_cast<double>(throughput.size());
  double var = 0;
  for (double t : throughput) var += (t - mean) * (t - mean);
  if (throughput.size() > 1) var /= static_cast<double>(throughput.size() - 1);
  row.mean = mean;
  row.std_dev = std::sqrt(var);
  row.valid = true;
  return row;
}

// One extraction pass over the sources, building only the graphs the combo
// needs (PDG construction rides on the CFG).
void extraction_pass(const std::vector<SourceFile>& sources, const std::array<bool, 3>& reps,
                     const ExtractionLimits& limits, int64_t& samples_out) {
  int64_t samples = 0;
  for (const SourceFile& file : sources) {
    std::vector<FunctionAst> functions;
    try {
      functions = parse_c(file.content);
    } catch (const std::exception&) {
      continue;
    }
    for (const FunctionAst& fn : functions) {
      CodeGraph g = build_ast_graph(fn);
      if (reps[1] || reps[2]) {
        const CfgInfo info = build_cfg(g, fn);
        if (reps[2]) build_pdg(g, info);
      }
      std::array<std::vector<PathContext>, 3> ctx;
      if (reps[0]) ctx[0] = sample_paths(extract_ast_paths(g, limits).paths, limits);
      if (reps[1]) ctx[1] = sample_paths(extract_cfg_paths(g, limits).paths, limits);
      if (reps[2]) ctx[2] = sample_paths(extract_pdg_paths(g, limits).paths, limits);
      ++samples;
    }
  }
  samples_out = samples;
}

int cmd_bench(const RunConfig& cfg, const std::string& phase) {
  const RunPaths p = run_paths(cfg);
  stamp_run_dir(cfg, p);
  Logger log(p.dir, "bench");

  const int reps = std::max(3, cfg.bench_reps);
  const int warmup = std::max(0, cfg.bench_warmup);
  if (reps != cfg.bench_reps)
    log.line("note: bench_reps raised to 3 (the minimum for a mean and deviation)");

  std::vector<BenchRow> rows;
  if (phase == "extract") {
    CorpusInput input = load_corpus(cfg.corpus);
    int64_t n = 0;
    if (!input.sources.empty()) extraction_pass(input.sources, {true, false, false},
                                                cfg.limits, n);
    for (const auto& combo : kCombos) {
      int64_t count = 0;
      rows.push_back(time_runs(
          combo_name(combo), n, warmup, reps, 1.0,
          [&] { extraction_pass(input.sources, combo, cfg.limits, count); }));
    }
  } else {
    VocabSet vocab = load_vocab(p);
    std::vector<Sample> data = load_dataset(p.train, "training dataset", "extract");
    for (const auto& combo : kCombos) {
      ModelConfig mc = cfg.model_config();
      mc.active = combo;
      Model model = init_model(mc, vocab);
      std::vector<BatchedSample> batched;
      for (const Sample& s : data)
        batched.push_back(make_batched(encode_sample(s, vocab), mc));

      const int64_t n = static_cast<int64_t>(batched.size());
      if (phase == "train") {
        AdamState adam = init_adam(model);
        Rng dropout_rng(mix_seed(cfg.seed, 0xbe9c));
        const size_t batch_size =
            std::max<size_t>(1, static_cast<size_t>(std::max(1, cfg.batch)));
        rows.push_back(time_runs(combo_name(combo), n, warmup, reps, 0.0, [&] {
          Model grads = zeros_like(model);
          for (size_t start = 0; start < batched.size(); start += batch_size) {
            const size_t stop = std::min(batched.size(), start + batch_size);
            scale_gradients(grads, real(0));
            for (size_t i = start; i < stop; ++i) {
              Forward f = forward(model, batched[i], true, &dropout_rng);
              backward(model, batched[i], f, grads);
            }
            scale_gradients(grads, real(1) / static_cast<real>(stop - start));
            adam_step(model, grads, adam, TrainConfig{}.adam);
          }
        }));
      } else {
        rows.push_back(time_runs(combo_name(combo), n, warmup, reps, 0.0, [&] {
          for (const BatchedSample& b : batched) forward(model, b);
        }));
      }
    }
  }

  log.line("phase: " + phase + " (" + std::to_string(reps) + " timed runs, " +
           std::to_string(warmup) + " warmup)");
  log.line("combo            samples    mean       std        unit");
  std::ofstream csv(p.dir / "bench.csv", std::ios::trunc);
  csv << "phase,combo,samples,reps,mean,std,unit\n";
  for (const BenchRow& row : rows) {
    std::ostringstream pretty;
    pretty << std::left << std::setw(17) << row.combo << std::setw(11) << row.samples;
    if (row.valid)
      pretty << std::setw(11) << fmt(row.mean, 1) << std::setw(11) << fmt(row.std_dev, 1)
             << row.unit;
    else
      pretty << std::setw(11) << "n/a" << std::setw(11) << "n/a" << row.unit;
    log.line(pretty.str());
    csv << phase << "," << row.combo << "," << row.samples << "," << reps << ","
        << (row.valid ? fmt(row.mean, 3) : "n/a") << ","
        << (row.valid ? fmt(row.std_dev, 3) : "n/a") << "," << row.unit << "\n";
  }
  log.line("wrote " + (p.dir / "bench.csv").string());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"path-context code embeddings over AST, CFG and PDG graphs"};
  app.require_subcommand(1);

  std::string config_file, preset, run_flag, corpus_flag, phase = "extract",
                                                          split_flag;
  std::vector<std::string> sets;
  uint64_t seed_flag = 0;
  bool seed_given = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_file, "config file with key=value lines");
    sub->add_option("-s,--set", sets, "override one key, e.g. --set dim=64")
        ->type_name("KEY=VALUE");
    sub->add_option("--preset", preset, "setting bundle: desk or paper-ojclone");
    sub->add_option("-r,--run", run_flag, "run directory for artifacts");
    sub->add_option("--seed", seed_flag, "random seed")->each([&](const std::string&) {
      seed_given = true;
    });
  };

  CLI::App* extract = app.add_subcommand("extract", "parse a corpus into datasets");
  add_common(extract);
  extract->add_option("--corpus", corpus_flag, "directory of .c sources or .dot exports");
  std::string dot_out;
  extract->add_option("--dot-out", dot_out, "also export per-function DOT graphs here");

  add_common(app.add_subcommand("train", "train the attention model"));
  add_common(app.add_subcommand("eval", "score the test split"));
  CLI::App* embed = app.add_subcommand("embed", "export code vectors");
  add_common(embed);
  embed->add_option("--split", split_flag, "dataset split: train, val, test or all");
  add_common(app.add_subcommand("clones", "detect clones among code vectors"));
  add_common(app.add_subcommand("sweep", "sweep the clone threshold"));
  CLI::App* bench = app.add_subcommand("bench", "measure throughput per representation set");
  add_common(bench);
  bench->add_option("--corpus", corpus_flag, "corpus directory (extract phase)");
  bench->add_option("--phase", phase, "extract, train or infer")
      ->check(CLI::IsMember({"extract", "train", "infer"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    RunConfig cfg;
    if (!config_file.empty()) load_config_file(cfg, config_file);
    apply_environment(cfg);
    if (!preset.empty()) apply_preset(cfg, preset);
    for (const std::string& s : sets) {
      const size_t eq = s.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("--set wants KEY=VALUE, got '" + s + "'");
      apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
    }
    if (!run_flag.empty()) cfg.run = run_flag;
    if (!corpus_flag.empty()) cfg.corpus = corpus_flag;
    if (!split_flag.empty()) apply_setting(cfg, "embed_split", split_flag);
    if (seed_given) apply_setting(cfg, "seed", std::to_string(seed_flag));
    cfg.limits.validate();

    if (app.got_subcommand("extract")) return cmd_extract(cfg, dot_out);
    if (app.got_subcommand("train")) return cmd_train(cfg);
    if (app.got_subcommand("eval")) return cmd_eval(cfg);
    if (app.got_subcommand("embed")) return cmd_embed(cfg);
    if (app.got_subcommand("clones")) return cmd_clones(cfg);
    if (app.got_subcommand("sweep")) return cmd_sweep(cfg);
    if (app.got_subcommand("bench")) return cmd_bench(cfg, phase);
    std::cerr << "error: no subcommand\n";
    return 1;
  } catch (const NumericFault& e) {
    std::cerr << "numeric fault: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
