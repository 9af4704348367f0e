#include "pathvec/tasks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "pathvec/checkpoint.hpp"
#include "pathvec/errors.hpp"

namespace pathvec {

NamingMetrics subtoken_metrics(const std::vector<std::string>& predicted,
                               const std::vector<std::string>& truth) {
  if (predicted.size() != truth.size())
    throw ShapeMismatch("prediction and truth lists differ in length");

  int64_t tp = 0, pred_total = 0, true_total = 0;
  for (size_t i = 0; i < predicted.size(); ++i) {
    const auto pred = split_label(predicted[i]);
    const auto want = split_label(truth[i]);
    pred_total += static_cast<int64_t>(pred.size());
    true_total += static_cast<int64_t>(want.size());
    std::map<std::string, int> pool;
    for (const std::string& t : want) ++pool[t];
    for (const std::string& p : pred) {
      auto it = pool.find(p);
      if (it != pool.end() && it->second > 0) {
        --it->second;
        ++tp;
      }
    }
  }

  NamingMetrics m;
  m.precision = pred_total ? static_cast<double>(tp) / static_cast<double>(pred_total) : 0;
  m.recall = true_total ? static_cast<double>(tp) / static_cast<double>(true_total) : 0;
  m.f1 = m.precision + m.recall > 0
             ? 2 * m.precision * m.recall / (m.precision + m.recall)
             : 0;
  return m;
}

int predict_label(const Model& m, const BatchedSample& s) {
  Forward f = forward(m, s, false, nullptr);
  return static_cast<int>(std::max_element(f.probs.begin(), f.probs.end()) -
                          f.probs.begin());
}

NamingMetrics evaluate_method_naming(const Model& m, const std::vector<Sample>& samples,
                                     const VocabSet& vocab) {
  std::vector<std::string> predicted, truth;
  predicted.reserve(samples.size());
  truth.reserve(samples.size());
  for (const Sample& s : samples) {
    const int pred = predict_label(m, make_batched(encode_sample(s, vocab), m.config));
    predicted.push_back(vocab.labels.at(pred));
    truth.push_back(s.label);
  }
  return subtoken_metrics(predicted, truth);
}

ClassificationResult evaluate_classification(const Model& m,
                                             const std::vector<Sample>& samples,
                                             const VocabSet& vocab) {
  ClassificationResult out;
  out.confusion.assign(static_cast<size_t>(m.num_labels),
                       std::vector<int64_t>(static_cast<size_t>(m.num_labels), 0));
  int64_t correct = 0;
  for (const Sample& s : samples) {
    const int pred = predict_label(m, make_batched(encode_sample(s, vocab), m.config));
    const int want = vocab.labels.find(s.label);
    if (want == pred) ++correct;
    if (want >= 0)
      ++out.confusion[static_cast<size_t>(want)][static_cast<size_t>(pred)];
  }
  out.accuracy = samples.empty()
                     ? 0
                     : static_cast<double>(correct) / static_cast<double>(samples.size());
  return out;
}

VectorStore export_code_vectors(const Model& m, const std::vector<Sample>& samples,
                                const std::vector<std::string>& ids,
                                const VocabSet& vocab) {
  if (ids.size() != samples.size())
    throw ShapeMismatch("one id per sample is required");
  VectorStore store;
  store.dim = m.code_dim();
  store.entries.reserve(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    Forward f = forward(m, make_batched(encode_sample(samples[i], vocab), m.config),
                        false, nullptr);
    store.entries.push_back({ids[i], samples[i].label, std::move(f.code_vector)});
  }
  return store;
}

void write_vector_store(const VectorStore& store, std::ostream& out) {
  out << store.dim << ' ' << store.entries.size() << '\n';
  out << std::setprecision(std::numeric_limits<real>::max_digits10);
  for (const VectorEntry& e : store.entries) {
    out << e.id << '\t' << e.label << '\t';
    for (size_t i = 0; i < e.vec.size(); ++i) {
      if (i) out << ' ';
      out << e.vec[i];
    }
    out << '\n';
  }
}

VectorStore read_vector_store(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError(1, "missing vector store header");
  VectorStore store;
  size_t count = 0;
  {
    std::istringstream head(line);
    if (!(head >> store.dim >> count) || store.dim <= 0)
      throw FormatError(1, "header must be 'dim count'");
  }
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const size_t t1 = line.find('\t');
    const size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
    if (t1 == std::string::npos || t2 == std::string::npos)
      throw FormatError(lineno, "expected id<TAB>label<TAB>components");
    VectorEntry e;
    e.id = line.substr(0, t1);
    e.label = line.substr(t1 + 1, t2 - t1 - 1);
    std::istringstream comps(line.substr(t2 + 1));
    real v;
    while (comps >> v) e.vec.push_back(v);
    if (static_cast<int>(e.vec.size()) != store.dim)
      throw FormatError(lineno, "expected " + std::to_string(store.dim) + " components, got " +
                                    std::to_string(e.vec.size()));
    store.entries.push_back(std::move(e));
  }
  if (store.entries.size() != count)
    throw FormatError(lineno, "header promised " + std::to_string(count) + " entries, found " +
                                  std::to_string(store.entries.size()));
  return store;
}

double cosine_similarity(const std::vector<real>& a, const std::vector<real>& b) {
  if (a.size() != b.size()) throw ShapeMismatch("cosine of vectors with different widths");
  double dot = 0, na = 0, nb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<double>(a[i]) * static_cast<double>(b[i]);
    na += static_cast<double>(a[i]) * static_cast<double>(a[i]);
    nb += static_cast<double>(b[i]) * static_cast<double>(b[i]);
  }
  if (na == 0 || nb == 0) throw ZeroVector();
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

namespace {

int64_t pairs_of(int64_t n) { return n * (n - 1) / 2; }

// Unranks pair index k within {0..n-1} choose 2, ordered (0,1),(0,2),...
std::pair<int, int> unrank_pair(int64_t k, int n) {
  int i = 0;
  while (k >= n - 1 - i) {
    k -= n - 1 - i;
    ++i;
  }
  return {i, i + 1 + static_cast<int>(k)};
}

}  // namespace

std::vector<ClonePair> sample_clone_pairs(const VectorStore& store, int n_classes,
                                          int64_t n_true, int64_t n_false, uint64_t seed,
                                          std::vector<std::string>* warnings) {
  if (n_classes <= 0 || n_true < 0 || n_false < 0)
    throw std::invalid_argument("pair counts must be non-negative and classes positive");

  std::map<std::string, std::vector<int>> by_label;
  for (size_t i = 0; i < store.entries.size(); ++i)
    by_label[store.entries[i].label].push_back(static_cast<int>(i));
  if (static_cast<int>(by_label.size()) < n_classes)
    throw std::invalid_argument("vector store covers " + std::to_string(by_label.size()) +
                                " classes but " + std::to_string(n_classes) +
                                " were requested");

  std::vector<std::vector<int>> cls;
  for (const auto& [label, idx] : by_label) {
    cls.push_back(idx);
    if (static_cast<int>(cls.size()) == n_classes) break;
  }

  // Flattened member list and pair-space sizes.
  std::vector<int> members;
  std::vector<int> class_of;
  int64_t total_true = 0;
  std::vector<int64_t> cum_true;  // cumulative same-class pair counts
  for (size_t c = 0; c < cls.size(); ++c) {
    total_true += pairs_of(static_cast<int64_t>(cls[c].size()));
    cum_true.push_back(total_true);
    for (int id : cls[c]) {
      members.push_back(id);
      class_of.push_back(static_cast<int>(c));
    }
  }
  const int64_t m = static_cast<int64_t>(members.size());
  const int64_t total_false = pairs_of(m) - total_true;

  auto clamp = [&](int64_t want, int64_t have, const char* kind) {
    if (want <= have) return want;
    if (warnings)
      warnings->push_back("requested " + std::to_string(want) + " " + kind +
                          " pairs but only " + std::to_string(have) + " exist; emitting " +
                          std::to_string(have));
    return have;
  };
  const int64_t want_true = clamp(n_true, total_true, "true");
  const int64_t want_false = clamp(n_false, total_false, "false");

  Rng rng(seed);
  std::vector<ClonePair> out;
  out.reserve(static_cast<size_t>(want_true + want_false));

  // Same-class pairs: unrank a uniform draw over the per-class pair spaces,
  // dedup, and fall back to full enumeration when the space is tight.
  if (want_true > 0) {
    std::set<std::pair<int, int>> seen;
    if (want_true * 3 < total_true) {
      int64_t guard = want_true * 60 + 1000;
      while (static_cast<int64_t>(seen.size()) < want_true && guard-- > 0) {
        const int64_t k = static_cast<int64_t>(rng.below(static_cast<uint64_t>(total_true)));
        const size_t c = static_cast<size_t>(
            std::upper_bound(cum_true.begin(), cum_true.end(), k) - cum_true.begin());
        const int64_t base = c == 0 ? 0 : cum_true[c - 1];
        auto [i, j] = unrank_pair(k - base, static_cast<int>(cls[c].size()));
        auto pair = std::minmax(cls[c][static_cast<size_t>(i)],
                                cls[c][static_cast<size_t>(j)]);
        if (seen.insert({pair.first, pair.second}).second)
          out.push_back({pair.first, pair.second, 1, 0});
      }
    }
    if (static_cast<int64_t>(seen.size()) < want_true) {
      std::vector<std::pair<int, int>> all;
      for (const auto& group : cls)
        for (size_t i = 0; i < group.size(); ++i)
          for (size_t j = i + 1; j < group.size(); ++j) {
            auto pair = std::minmax(group[i], group[j]);
            if (!seen.count({pair.first, pair.second}))
              all.push_back({pair.first, pair.second});
          }
      for (size_t i = all.size(); i > 1; --i)
        std::swap(all[i - 1], all[rng.below(i)]);
      for (size_t i = 0; static_cast<int64_t>(out.size()) < want_true; ++i)
        out.push_back({all[i].first, all[i].second, 1, 0});
    }
  }

  // Cross-class pairs: rejection over the flattened member list.
  if (want_false > 0) {
    std::set<std::pair<int, int>> seen;
    if (want_false * 3 < total_false) {
      int64_t guard = want_false * 60 + 1000;
      while (static_cast<int64_t>(seen.size()) < want_false && guard-- > 0) {
        const size_t x = static_cast<size_t>(rng.below(static_cast<uint64_t>(m)));
        const size_t y = static_cast<size_t>(rng.below(static_cast<uint64_t>(m)));
        if (x == y || class_of[x] == class_of[y]) continue;
        auto pair = std::minmax(members[x], members[y]);
        if (seen.insert({pair.first, pair.second}).second)
          out.push_back({pair.first, pair.second, 0, 0});
      }
    }
    if (static_cast<int64_t>(seen.size()) < want_false) {
      std::vector<std::pair<int, int>> all;
      for (size_t x = 0; x < members.size(); ++x)
        for (size_t y = x + 1; y < members.size(); ++y) {
          if (class_of[x] == class_of[y]) continue;
          auto pair = std::minmax(members[x], members[y]);
          if (!seen.count({pair.first, pair.second}))
            all.push_back({pair.first, pair.second});
        }
      for (size_t i = all.size(); i > 1; --i)
        std::swap(all[i - 1], all[rng.below(i)]);
      int64_t emitted = static_cast<int64_t>(seen.size());
      for (size_t i = 0; emitted < want_false; ++i, ++emitted)
        out.push_back({all[i].first, all[i].second, 0, 0});
    }
  }
  return out;
}

void score_pairs(const VectorStore& store, std::vector<ClonePair>& pairs) {
  for (ClonePair& p : pairs) {
    if (p.id_a < 0 || p.id_b < 0 ||
        p.id_a >= static_cast<int>(store.entries.size()) ||
        p.id_b >= static_cast<int>(store.entries.size()))
      throw IndexOutOfRange("clone pair references a missing store entry");
    p.similarity = cosine_similarity(store.entries[static_cast<size_t>(p.id_a)].vec,
                                     store.entries[static_cast<size_t>(p.id_b)].vec);
  }
}

CloneMetrics detect_clones(const std::vector<ClonePair>& pairs, double theta) {
  CloneMetrics m;
  m.predictions.reserve(pairs.size());
  int64_t tp = 0, fp = 0, fn = 0;
  for (const ClonePair& p : pairs) {
    const int pred = p.similarity > theta ? 1 : 0;
    m.predictions.push_back(pred);
    if (pred == 1 && p.ground_truth == 1) ++tp;
    if (pred == 1 && p.ground_truth == 0) ++fp;
    if (pred == 0 && p.ground_truth == 1) ++fn;
  }
  m.precision = tp + fp ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0;
  m.recall = tp + fn ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0;
  m.f1 = m.precision + m.recall > 0
             ? 2 * m.precision * m.recall / (m.precision + m.recall)
             : 0;
  return m;
}

SweepResult threshold_sweep(const std::vector<ClonePair>& pairs) {
  SweepResult out;
  out.best_f1 = -1;
  out.curve.reserve(201);
  for (int k = 0; k <= 200; ++k) {
    const double theta = (k - 100) / 100.0;
    const CloneMetrics m = detect_clones(pairs, theta);
    out.curve.push_back({theta, m.precision, m.recall, m.f1});
    if (m.f1 > out.best_f1) {
      out.best_f1 = m.f1;
      out.best_theta = theta;
    }
  }
  return out;
}

namespace {

int argmax(const std::vector<real>& v) {
  return static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
}

struct SplitEval {
  double loss = 0;
  double metric = 0;
};

SplitEval eval_split(const Model& m, const std::vector<BatchedSample>& batched,
                     const std::vector<Sample>* raw, const VocabSet& vocab,
                     TaskKind task) {
  SplitEval out;
  int64_t labeled = 0, correct = 0;
  std::vector<std::string> predicted, truth;
  for (size_t i = 0; i < batched.size(); ++i) {
    Forward f = forward(m, batched[i], false, nullptr);
    const int pred = argmax(f.probs);
    if (batched[i].label >= 0) {
      out.loss += static_cast<double>(f.loss);
      ++labeled;
    }
    if (task == TaskKind::Classification) {
      if (pred == batched[i].label) ++correct;
    } else {
      predicted.push_back(vocab.labels.at(pred));
      truth.push_back((*raw)[i].label);
    }
  }
  out.loss = labeled ? out.loss / static_cast<double>(labeled) : 0;
  out.metric = task == TaskKind::Classification
                   ? (batched.empty() ? 0
                                      : static_cast<double>(correct) /
                                            static_cast<double>(batched.size()))
                   : subtoken_metrics(predicted, truth).f1;
  return out;
}

}  // namespace

TrainResult train_task(Model model, const std::vector<Sample>& train,
                       const std::vector<Sample>& val, const VocabSet& vocab,
                       const TrainConfig& cfg, std::ostream* csv) {
  if (train.empty()) throw std::invalid_argument("training split is empty");
  if (cfg.batch_size <= 0) throw std::invalid_argument("batch size must be positive");
  if (cfg.max_epochs <= 0) throw std::invalid_argument("epoch count must be positive");
  if (cfg.patience <= 0) throw std::invalid_argument("patience must be positive");

  std::vector<BatchedSample> tr;
  tr.reserve(train.size());
  for (const Sample& s : train) {
    tr.push_back(make_batched(encode_sample(s, vocab), model.config));
    if (tr.back().label < 0)
      throw std::invalid_argument("training label '" + s.label +
                                  "' is outside the vocabulary");
  }
  std::vector<BatchedSample> va;
  va.reserve(val.size());
  for (const Sample& s : val) va.push_back(make_batched(encode_sample(s, vocab), model.config));

  if (csv) *csv << "epoch,split,loss,metric,seconds\n";
  auto emit = [&](TrainResult& res, int epoch, const char* split, double loss,
                  double metric, double seconds) {
    res.log.push_back({epoch, split, loss, metric, seconds});
    if (csv)
      *csv << epoch << ',' << split << ',' << loss << ',' << metric << ',' << seconds
           << '\n';
  };

  AdamState adam = init_adam(model);
  Rng shuffle_rng(mix_seed(cfg.seed, 0x5f5e11));
  Rng dropout_rng(mix_seed(cfg.seed, 0xd0b0));
  Model grads = zeros_like(model);

  TrainResult out;
  out.best_metric = -1;
  int since_best = 0;
  std::vector<size_t> order(tr.size());
  std::iota(order.begin(), order.end(), size_t{0});

  using clock = std::chrono::steady_clock;
  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    const auto t0 = clock::now();
    for (size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[shuffle_rng.below(i)]);

    double loss_sum = 0;
    int64_t seen = 0, correct = 0;
    std::vector<std::string> predicted, truth;
    for (size_t start = 0; start < order.size();
         start += static_cast<size_t>(cfg.batch_size)) {
      const size_t stop = std::min(order.size(), start + static_cast<size_t>(cfg.batch_size));
      scale_gradients(grads, real(0));
      for (size_t i = start; i < stop; ++i) {
        const BatchedSample& b = tr[order[i]];
        Forward f = forward(model, b, true, &dropout_rng);
        backward(model, b, f, grads);
        loss_sum += static_cast<double>(f.loss);
        ++seen;
        const int pred = argmax(f.probs);
        if (cfg.task == TaskKind::Classification) {
          if (pred == b.label) ++correct;
        } else {
          predicted.push_back(vocab.labels.at(pred));
          truth.push_back(train[order[i]].label);
        }
      }
      scale_gradients(grads, real(1) / static_cast<real>(stop - start));
      adam_step(model, grads, adam, cfg.adam);
    }
    const double train_loss = loss_sum / static_cast<double>(seen);
    const double train_metric =
        cfg.task == TaskKind::Classification
            ? static_cast<double>(correct) / static_cast<double>(seen)
            : subtoken_metrics(predicted, truth).f1;
    const double train_secs =
        std::chrono::duration<double>(clock::now() - t0).count();
    emit(out, epoch, "train", train_loss, train_metric, train_secs);

    double selection = train_metric;
    if (!va.empty()) {
      const auto v0 = clock::now();
      const SplitEval ve = eval_split(model, va, &val, vocab, cfg.task);
      const double val_secs = std::chrono::duration<double>(clock::now() - v0).count();
      emit(out, epoch, "val", ve.loss, ve.metric, val_secs);
      selection = ve.metric;
    }

    if (selection > out.best_metric + 1e-12) {
      out.best_metric = selection;
      out.best_epoch = epoch;
      out.best = model;
      since_best = 0;
      if (!cfg.checkpoint_path.empty()) save_checkpoint(model, cfg.checkpoint_path);
    } else if (++since_best >= cfg.patience) {
      break;
    }
  }
  if (out.best_epoch < 0) {
    out.best = model;
    out.best_epoch = cfg.max_epochs;
  }
  return out;
}

}  // namespace pathvec
