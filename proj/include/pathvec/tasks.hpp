#pragma once

// Task drivers over the trained model: method-name prediction scored by
// subtoken precision/recall/F1, program classification scored by accuracy,
// and unsupervised clone detection over exported code vectors with cosine
// similarity and a threshold. Also the training loop shared by the tasks.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pathvec/corpus.hpp"
#include "pathvec/model.hpp"

namespace pathvec {

struct NamingMetrics {
  double precision = 0, recall = 0, f1 = 0;
};

// Micro-averaged over the multiset intersection of '|'-separated subtokens,
// summed across all prediction/truth pairs.
NamingMetrics subtoken_metrics(const std::vector<std::string>& predicted,
                               const std::vector<std::string>& truth);

// Argmax over the label distribution; ties go to the lowest index.
int predict_label(const Model& m, const BatchedSample& s);

NamingMetrics evaluate_method_naming(const Model& m, const std::vector<Sample>& samples,
                                     const VocabSet& vocab);

struct ClassificationResult {
  double accuracy = 0;
  std::vector<std::vector<int64_t>> confusion;  // [true label][predicted label]
};
ClassificationResult evaluate_classification(const Model& m,
                                             const std::vector<Sample>& samples,
                                             const VocabSet& vocab);

struct VectorEntry {
  std::string id;
  std::string label;
  std::vector<real> vec;

  bool operator==(const VectorEntry&) const = default;
};
struct VectorStore {
  int dim = 0;
  std::vector<VectorEntry> entries;

  bool operator==(const VectorStore&) const = default;
};

// One code vector per sample, dropout off. `ids` parallels `samples`.
VectorStore export_code_vectors(const Model& m, const std::vector<Sample>& samples,
                                const std::vector<std::string>& ids,
                                const VocabSet& vocab);

// Text format: "dim count" header line, then id<TAB>label<TAB>space-separated
// components with round-trip-exact precision.
void write_vector_store(const VectorStore& store, std::ostream& out);
VectorStore read_vector_store(std::istream& in);

// Throws ZeroVector on a zero-magnitude input.
double cosine_similarity(const std::vector<real>& a, const std::vector<real>& b);

struct ClonePair {
  int id_a = 0, id_b = 0;   // indices into the vector store
  int ground_truth = 0;     // 1 = same class, 0 = different classes
  double similarity = 0;
};

// Uniform pairs without replacement from the lexicographically first
// `n_classes` labels: `n_true` same-class and `n_false` cross-class pairs.
// Requests beyond the available pair counts are clamped with a warning.
std::vector<ClonePair> sample_clone_pairs(const VectorStore& store, int n_classes,
                                          int64_t n_true, int64_t n_false, uint64_t seed,
                                          std::vector<std::string>* warnings = nullptr);

void score_pairs(const VectorStore& store, std::vector<ClonePair>& pairs);

struct CloneMetrics {
  double precision = 0, recall = 0, f1 = 0;
  std::vector<int> predictions;  // 1 iff similarity > theta
};
CloneMetrics detect_clones(const std::vector<ClonePair>& pairs, double theta = 0.4);

struct SweepPoint {
  double theta = 0, precision = 0, recall = 0, f1 = 0;
};
struct SweepResult {
  double best_theta = -1;
  double best_f1 = 0;
  std::vector<SweepPoint> curve;  // 201 points over [-1.00, 1.00] step 0.01
};
// Ties on F1 resolve to the smallest theta.
SweepResult threshold_sweep(const std::vector<ClonePair>& pairs);

enum class TaskKind { MethodNaming, Classification };

struct TrainConfig {
  AdamConfig adam;
  int batch_size = 1024;
  int max_epochs = 20;
  int patience = 5;  // epochs without validation improvement before stopping
  uint64_t seed = 1;
  TaskKind task = TaskKind::Classification;
  std::string checkpoint_path;  // best model saved here on improvement when set
};

struct EpochRow {
  int epoch = 0;
  std::string split;
  double loss = 0;
  double metric = 0;
  double seconds = 0;
};

struct TrainResult {
  Model best;
  int best_epoch = -1;
  double best_metric = 0;
  std::vector<EpochRow> log;
};

// Epoch loop with shuffled mean-loss batches and Adam updates; validates
// after every epoch, keeps the best model, stops early after `patience`
// epochs without improvement. The train row's metric is measured on the
// training predictions made during the epoch (dropout active). Writes
// "epoch,split,loss,metric,seconds" CSV rows to `csv` when given. A
// NumericFault propagates; a checkpoint written earlier stays on disk.
TrainResult train_task(Model model, const std::vector<Sample>& train,
                       const std::vector<Sample>& val, const VocabSet& vocab,
                       const TrainConfig& cfg, std::ostream* csv = nullptr);

}  // namespace pathvec
