#pragma once

// Attention model over path contexts, written as plain loops with exact
// reverse-mode gradients. Each active representation owns a pipeline: token
// and path embedding tables, a dense compression layer with tanh, and an
// attention vector that weighs the context vectors into one aggregate. The
// per-representation aggregates concatenate into the code vector, which a
// bias-free linear layer turns into label probabilities.
//
// Batch slots are padded to fixed caps with a validity mask; masked slots
// never enter the attention softmax, so they contribute nothing to outputs
// or gradients while keeping the per-sample compute shape constant.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pathvec/real.hpp"
#include "pathvec/rng.hpp"
#include "pathvec/vocab.hpp"

namespace pathvec {

struct Matrix {
  int rows = 0, cols = 0;
  std::vector<real> a;

  static Matrix zeros(int rows, int cols) {
    Matrix m;
    m.rows = rows;
    m.cols = cols;
    m.a.assign(static_cast<size_t>(rows) * static_cast<size_t>(cols), real(0));
    return m;
  }
  real& operator()(int r, int c) {
    return a[static_cast<size_t>(r) * static_cast<size_t>(cols) + static_cast<size_t>(c)];
  }
  real operator()(int r, int c) const {
    return a[static_cast<size_t>(r) * static_cast<size_t>(cols) + static_cast<size_t>(c)];
  }
  bool operator==(const Matrix&) const = default;
};

struct Pipeline {
  Matrix token_embedding;       // |tokens| x D
  Matrix path_embedding;        // |paths of this kind| x D
  Matrix dense;                 // D x 3D
  std::vector<real> bias;       // D
  std::vector<real> attention;  // D

  bool operator==(const Pipeline&) const = default;
};

struct ModelConfig {
  int dim = 128;
  std::array<bool, 3> active = {true, true, true};  // indexed by Rep
  real dropout = real(0.25);
  std::array<int, 3> caps = {200, 10, 100};  // context slots per representation
  uint64_t seed = 1;

  int active_count() const {
    return static_cast<int>(active[0]) + static_cast<int>(active[1]) +
           static_cast<int>(active[2]);
  }
  bool operator==(const ModelConfig&) const = default;
};

struct Model {
  ModelConfig config;
  std::array<Pipeline, 3> pipes;  // inactive entries stay empty
  Matrix prediction;              // num_labels x code_dim, no bias
  std::array<uint64_t, 5> vocab_hashes = {};  // tokens, ast/cfg/pdg paths, labels
  int num_labels = 0;

  int code_dim() const { return config.active_count() * config.dim; }
  bool operator==(const Model&) const = default;
};

// Randomly initialized model sized to the vocabularies. Embedding tables and
// attention vectors start uniform in +-0.5/sqrt(D); dense and prediction
// weights uniform in +-0.5/sqrt(fan_in); biases at zero. Throws
// std::invalid_argument on an empty active set, non-positive dimension or
// cap, or an empty label vocabulary.
Model init_model(const ModelConfig& config, const VocabSet& vocab);

// Model-shaped zero tensors, used to accumulate gradients.
Model zeros_like(const Model& m);

// Named views over every parameter tensor of the active pipelines, in a
// fixed order shared by gradients, optimizer state and checkpoints.
struct TensorRef {
  std::string name;
  std::vector<real>* data;
  std::vector<int> shape;
};
std::vector<TensorRef> model_tensors(Model& m);

// One sample padded to the model's caps. Inactive representations keep empty
// slot vectors.
struct BatchedSample {
  std::array<std::vector<EncodedContext>, 3> slots;
  std::array<std::vector<uint8_t>, 3> mask;  // 1 = real context, 0 = padding
  int label = -1;                            // -1 = unknown (inference only)
};
BatchedSample make_batched(const EncodedSample& s, const ModelConfig& config);

// x = tanh(dense * [tok[t1]; path[p]; tok[t2]] + bias). Throws
// IndexOutOfRange when an index misses its table.
std::vector<real> embed_context(const Pipeline& p, int t1, int path, int t2);

struct Attention {
  std::vector<real> weights;    // per slot; exactly 0 on masked slots
  std::vector<real> aggregate;  // convex combination of unmasked contexts
};
// Softmax of attention logits over unmasked slots (max-subtracted). Throws
// AllMasked when no slot is valid.
Attention attend(const Pipeline& p, const std::vector<std::vector<real>>& contexts,
                 const std::vector<uint8_t>& mask);

// Numerically stable softmax in place (subtracts the max logit).
void softmax_inplace(std::vector<real>& logits);

// -log(probs[label]) with the probability clamped at 1e-12.
real cross_entropy(const std::vector<real>& probs, int label);

struct Forward {
  std::vector<real> code_vector;
  std::vector<real> probs;
  real loss = real(0);  // cross-entropy when label >= 0, else 0

  // Intermediates kept for the backward pass.
  std::array<std::vector<std::vector<real>>, 3> contexts;  // post-tanh, pre-dropout
  std::array<std::vector<real>, 3> dropout_scale;          // per slot: 0 or 1/keep
  std::array<std::vector<real>, 3> weights;
  std::array<std::vector<real>, 3> aggregate;
};

// Full pass over one padded sample. Dropout (inverted, on the context
// vectors only) applies when `training` is set and needs `dropout_rng`.
// Throws NumericFault when the output stops being finite.
Forward forward(const Model& m, const BatchedSample& s, bool training = false,
                Rng* dropout_rng = nullptr);

// Accumulates d(loss)/d(theta) for this sample into `grads` (shaped via
// zeros_like). Masked slots receive exactly zero gradient.
void backward(const Model& m, const BatchedSample& s, const Forward& f, Model& grads);

// Scales every gradient tensor, e.g. by 1/batch for a mean-loss gradient.
void scale_gradients(Model& grads, real factor);

struct AdamConfig {
  real lr = real(0.001);
  real beta1 = real(0.9);
  real beta2 = real(0.999);
  real eps = real(1e-8);
};

struct AdamState {
  std::vector<std::vector<real>> m, v;  // parallel to model_tensors order
  int64_t step = 0;
};
AdamState init_adam(Model& model);

// Standard bias-corrected Adam update. Throws ShapeMismatch when the
// gradient tensors do not line up with the parameters or state.
void adam_step(Model& params, Model& grads, AdamState& state, const AdamConfig& cfg);

}  // namespace pathvec
