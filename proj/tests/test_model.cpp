#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "pathvec/checkpoint.hpp"
#include "pathvec/errors.hpp"
#include "pathvec/model.hpp"
#include "pathvec/rng.hpp"

using namespace pathvec;

namespace {

VocabSet toy_vocab(int extra_tokens = 6, int extra_paths = 5, int labels = 5) {
  VocabSet v;
  v.tokens.add("<pad>", 0);
  v.tokens.add("<unk>", 0);
  v.tokens.add("method_name", 0);
  for (int i = 0; i < extra_tokens; ++i) v.tokens.add("tok" + std::to_string(i), 1);
  for (int r = 0; r < 3; ++r) {
    v.paths[r].add("<pad>", 0);
    v.paths[r].add("<unk>", 0);
    for (int i = 0; i < extra_paths; ++i)
      v.paths[r].add("p" + std::to_string(r) + "_" + std::to_string(i), 1);
  }
  for (int i = 0; i < labels; ++i) v.labels.add("label" + std::to_string(i), 1);
  return v;
}

ModelConfig small_config(int dim = 4) {
  ModelConfig c;
  c.dim = dim;
  c.caps = {4, 2, 3};
  c.dropout = real(0);
  c.seed = 7;
  return c;
}

EncodedSample toy_encoded(int label = 2) {
  EncodedSample es;
  es.label = label;
  es.contexts[0] = {{3, 2, 4}, {4, 3, 3}, {5, 2, 6}};
  es.contexts[1] = {{3, 2, 5}};
  es.contexts[2] = {{6, 3, 3}, {4, 2, 4}};
  return es;
}

double batch_loss(const Model& m, const std::vector<BatchedSample>& batch) {
  double total = 0;
  for (const BatchedSample& b : batch) total += static_cast<double>(forward(m, b).loss);
  return total / static_cast<double>(batch.size());
}

}  // namespace

TEST_CASE("initialization respects shapes, bounds and the seed") {
  VocabSet v = toy_vocab();
  ModelConfig cfg = small_config(8);
  Model m = init_model(cfg, v);

  CHECK(m.num_labels == 5);
  CHECK(m.code_dim() == 24);
  CHECK(m.prediction.rows == 5);
  CHECK(m.prediction.cols == 24);
  for (int r = 0; r < 3; ++r) {
    CHECK(m.pipes[r].token_embedding.rows == v.tokens.size());
    CHECK(m.pipes[r].path_embedding.rows == v.paths[r].size());
    CHECK(m.pipes[r].dense.rows == 8);
    CHECK(m.pipes[r].dense.cols == 24);
    CHECK(m.pipes[r].bias.size() == 8);
    CHECK(m.pipes[r].attention.size() == 8);
    for (real b : m.pipes[r].bias) CHECK(b == real(0));
    const double emb_bound = 0.5 / std::sqrt(8.0);
    for (real x : m.pipes[r].token_embedding.a) CHECK(std::abs(x) <= emb_bound);
    const double dense_bound = 0.5 / std::sqrt(24.0);
    for (real x : m.pipes[r].dense.a) CHECK(std::abs(x) <= dense_bound);
  }
  for (real x : m.prediction.a) CHECK(std::abs(x) <= 0.5 / std::sqrt(24.0));

  Model again = init_model(cfg, v);
  CHECK(again == m);
  cfg.seed = 8;
  Model other = init_model(cfg, v);
  CHECK(!(other == m));
}

TEST_CASE("initialization rejects bad configurations") {
  VocabSet v = toy_vocab();
  ModelConfig cfg = small_config();
  cfg.dim = 0;
  CHECK_THROWS_AS(init_model(cfg, v), std::invalid_argument);
  cfg = small_config();
  cfg.active = {false, false, false};
  CHECK_THROWS_AS(init_model(cfg, v), std::invalid_argument);
  cfg = small_config();
  cfg.caps = {0, 2, 3};
  CHECK_THROWS_AS(init_model(cfg, v), std::invalid_argument);
  cfg = small_config();
  cfg.dropout = real(1);
  CHECK_THROWS_AS(init_model(cfg, v), std::invalid_argument);
  cfg = small_config();
  CHECK_THROWS_AS(init_model(cfg, VocabSet{}), std::invalid_argument);
}

TEST_CASE("model_tensors lists active pipelines in a fixed order") {
  VocabSet v = toy_vocab();
  ModelConfig cfg = small_config();
  cfg.active = {true, false, true};
  Model m = init_model(cfg, v);
  auto refs = model_tensors(m);
  REQUIRE(refs.size() == 11);
  CHECK(refs[0].name == "ast.token_embedding");
  CHECK(refs[4].name == "ast.attention");
  CHECK(refs[5].name == "pdg.token_embedding");
  CHECK(refs[10].name == "prediction");
  CHECK(m.code_dim() == 8);

  Model z = zeros_like(m);
  for (auto& t : model_tensors(z))
    for (real x : *t.data) CHECK(x == real(0));
  CHECK(z.prediction.rows == m.prediction.rows);
}

TEST_CASE("make_batched pads to the caps and truncates the overflow") {
  ModelConfig cfg = small_config();
  EncodedSample es = toy_encoded();
  es.contexts[1] = {{3, 2, 5}, {4, 2, 5}, {5, 2, 5}};  // cap is 2
  BatchedSample b = make_batched(es, cfg);
  CHECK(b.label == 2);
  REQUIRE(b.slots[0].size() == 4);
  REQUIRE(b.mask[0].size() == 4);
  CHECK(b.mask[0][2] == 1);
  CHECK(b.mask[0][3] == 0);
  CHECK(b.slots[0][3].start == kPadIndex);
  CHECK(b.slots[1].size() == 2);
  CHECK(b.mask[1][1] == 1);
  CHECK(b.slots[2].size() == 3);
  CHECK(b.mask[2][2] == 0);
}

TEST_CASE("embed_context matches hand evaluation") {
  VocabSet v = toy_vocab();
  ModelConfig cfg = small_config(2);
  Model m = init_model(cfg, v);
  Pipeline& p = m.pipes[0];

  // All zeros: tanh(0) = 0 exactly.
  std::fill(p.token_embedding.a.begin(), p.token_embedding.a.end(), real(0));
  std::fill(p.path_embedding.a.begin(), p.path_embedding.a.end(), real(0));
  std::fill(p.dense.a.begin(), p.dense.a.end(), real(0));
  std::fill(p.bias.begin(), p.bias.end(), real(0));
  auto x = embed_context(p, 3, 2, 4);
  CHECK(x == std::vector<real>{real(0), real(0)});

  // Unit weight onto a unit token component: tanh(1).
  p.token_embedding(3, 0) = real(1);
  p.dense(0, 0) = real(1);
  x = embed_context(p, 3, 2, 4);
  CHECK(x[0] == doctest::Approx(std::tanh(1.0)).epsilon(1e-12));
  CHECK(x[0] == doctest::Approx(0.761594).epsilon(1e-6));
  CHECK(x[1] == real(0));

  // The second token slot reads from the table too (offset 2D in the dense row).
  p.dense(1, 4) = real(2);
  p.token_embedding(4, 0) = real(0.5);
  x = embed_context(p, 3, 2, 4);
  CHECK(x[1] == doctest::Approx(std::tanh(1.0)).epsilon(1e-12));

  CHECK_THROWS_AS(embed_context(p, -1, 2, 4), IndexOutOfRange);
  CHECK_THROWS_AS(embed_context(p, 3, 99, 4), IndexOutOfRange);
  CHECK_THROWS_AS(embed_context(p, 3, 2, v.tokens.size()), IndexOutOfRange);
}

TEST_CASE("context vectors stay strictly inside (-1, 1)") {
  VocabSet v = toy_vocab();
  Model m = init_model(small_config(6), v);
  for (int t1 = 3; t1 < 9; ++t1)
    for (int path = 2; path < 7; ++path) {
      auto x = embed_context(m.pipes[1], t1, path, 11 - t1);
      for (real c : x) {
        CHECK(c > real(-1));
        CHECK(c < real(1));
      }
    }
}

TEST_CASE("attention of a single context returns it bit-exactly") {
  VocabSet v = toy_vocab();
  Model m = init_model(small_config(5), v);
  std::vector<std::vector<real>> ctx = {embed_context(m.pipes[0], 3, 2, 4)};
  Attention att = attend(m.pipes[0], ctx, {1});
  CHECK(att.weights == std::vector<real>{real(1)});
  CHECK(att.aggregate == ctx[0]);
}

TEST_CASE("attention splits evenly over identical or zero-logit contexts") {
  VocabSet v = toy_vocab();
  Model m = init_model(small_config(3), v);
  auto x = embed_context(m.pipes[0], 3, 2, 4);
  Attention att = attend(m.pipes[0], {x, x}, {1, 1});
  CHECK(att.weights[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(att.weights[1] == doctest::Approx(0.5).epsilon(1e-15));

  std::fill(m.pipes[0].attention.begin(), m.pipes[0].attention.end(), real(0));
  auto y = embed_context(m.pipes[0], 5, 3, 6);
  att = attend(m.pipes[0], {x, y, x}, {1, 1, 1});
  for (real w : att.weights) CHECK(w == doctest::Approx(1.0 / 3).epsilon(1e-15));
}

TEST_CASE("attention matches the hand-computed two-logit softmax") {
  Pipeline p;
  p.attention = {real(1)};
  p.dense = Matrix::zeros(1, 3);
  const double ln3 = std::log(3.0);
  std::vector<std::vector<real>> ctx = {{real(0)}, {static_cast<real>(ln3)}};
  Attention att = attend(p, ctx, {1, 1});
  CHECK(att.weights[0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(att.weights[1] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(att.aggregate[0] == doctest::Approx(0.75 * ln3).epsilon(1e-12));
}

TEST_CASE("masked attention slots get exactly zero weight") {
  VocabSet v = toy_vocab();
  Model m = init_model(small_config(4), v);
  auto x = embed_context(m.pipes[2], 3, 2, 4);
  auto y = embed_context(m.pipes[2], 5, 3, 6);
  Attention att = attend(m.pipes[2], {x, y, x}, {1, 0, 1});
  CHECK(att.weights[1] == real(0));
  CHECK(att.weights[0] + att.weights[2] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(attend(m.pipes[2], {x, y}, {0, 0}), AllMasked);
}

TEST_CASE("attention and softmax invariants hold over randomized trials") {
  VocabSet v = toy_vocab();
  Model m = init_model(small_config(5), v);
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::vector<real>> ctx;
    std::vector<uint8_t> mask;
    const int n = 1 + static_cast<int>(rng.below(6));
    bool any = false;
    for (int i = 0; i < n; ++i) {
      std::vector<real> x(5);
      for (real& c : x) c = static_cast<real>(rng.uniform(-3, 3));
      ctx.push_back(std::move(x));
      mask.push_back(rng.unit() < 0.7 ? 1 : 0);
      any = any || mask.back();
    }
    if (!any) mask[0] = 1;
    Attention att = attend(m.pipes[0], ctx, mask);
    double sum = 0;
    for (size_t i = 0; i < att.weights.size(); ++i) {
      CHECK(att.weights[i] >= real(0));
      CHECK(att.weights[i] <= real(1));
      if (!mask[i]) CHECK(att.weights[i] == real(0));
      sum += static_cast<double>(att.weights[i]);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));

    // Aggregate stays inside the per-component convex hull.
    for (int j = 0; j < 5; ++j) {
      real lo = real(1e30), hi = real(-1e30);
      for (size_t i = 0; i < ctx.size(); ++i) {
        if (!mask[i]) continue;
        lo = std::min(lo, ctx[i][j]);
        hi = std::max(hi, ctx[i][j]);
      }
      CHECK(att.aggregate[j] >= lo - real(1e-12));
      CHECK(att.aggregate[j] <= hi + real(1e-12));
    }

    // Softmax: sums to one, shift-invariant.
    std::vector<real> logits(4);
    for (real& l : logits) l = static_cast<real>(rng.uniform(-20, 20));
    std::vector<real> shifted = logits;
    for (real& l : shifted) l += real(13.25);
    softmax_inplace(logits);
    softmax_inplace(shifted);
    double total = 0;
    for (size_t i = 0; i < logits.size(); ++i) {
      total += static_cast<double>(logits[i]);
      CHECK(std::abs(logits[i] - shifted[i]) <= 1e-9);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("cross entropy fixtures") {
  std::vector<real> onehot = {real(0), real(1), real(0)};
  CHECK(cross_entropy(onehot, 1) == real(0));

  std::vector<real> uniform(104, real(1.0 / 104));
  CHECK(cross_entropy(uniform, 17) == doctest::Approx(std::log(104.0)).epsilon(1e-12));
  CHECK(cross_entropy(uniform, 17) == doctest::Approx(4.644).epsilon(1e-3));

  CHECK(cross_entropy(onehot, 0) == doctest::Approx(-std::log(1e-12)).epsilon(1e-12));
  CHECK_THROWS_AS(cross_entropy(onehot, 3), IndexOutOfRange);
}

TEST_CASE("loss drops when probability mass moves onto the true label") {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(8));
    std::vector<real> p(n);
    double sum = 0;
    for (real& x : p) {
      x = static_cast<real>(rng.uniform(0.05, 1.0));
      sum += static_cast<double>(x);
    }
    for (real& x : p) x = static_cast<real>(x / sum);
    const int label = static_cast<int>(rng.below(n));
    std::vector<real> q = p;
    const int donor = (label + 1) % n;
    const real shift = q[donor] / 2;
    q[donor] -= shift;
    q[label] += shift;
    CHECK(cross_entropy(q, label) < cross_entropy(p, label));
  }
}

TEST_CASE("forward with zero prediction weights is uniform") {
  VocabSet v = toy_vocab();
  Model m = init_model(small_config(), v);
  std::fill(m.prediction.a.begin(), m.prediction.a.end(), real(0));
  Forward f = forward(m, make_batched(toy_encoded(), m.config));
  for (real p : f.probs) CHECK(p == doctest::Approx(1.0 / 5).epsilon(1e-12));
  CHECK(f.loss == doctest::Approx(std::log(5.0)).epsilon(1e-12));
}

TEST_CASE("code vector width follows the active set") {
  VocabSet v = toy_vocab();
  ModelConfig cfg = small_config(6);
  cfg.active = {true, false, false};
  Model ast_only = init_model(cfg, v);
  Forward f = forward(ast_only, make_batched(toy_encoded(), cfg));
  CHECK(f.code_vector.size() == 6);
  CHECK(ast_only.code_dim() == 6);

  cfg.active = {true, true, true};
  Model full = init_model(cfg, v);
  f = forward(full, make_batched(toy_encoded(), cfg));
  CHECK(f.code_vector.size() == 18);
  double sum = 0;
  for (real p : f.probs) sum += static_cast<double>(p);
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("forward probabilities match an independent scalar softmax") {
  VocabSet v = toy_vocab(4, 3, 3);
  ModelConfig cfg = small_config(2);
  cfg.active = {true, false, false};
  cfg.caps = {1, 1, 1};
  Model m = init_model(cfg, v);

  // Zero the embedding inputs so the context vector is tanh(bias), i.e. the
  // code vector is known in closed form.
  Pipeline& p = m.pipes[0];
  std::fill(p.token_embedding.a.begin(), p.token_embedding.a.end(), real(0));
  std::fill(p.path_embedding.a.begin(), p.path_embedding.a.end(), real(0));
  std::fill(p.dense.a.begin(), p.dense.a.end(), real(0));
  p.bias = {real(0.3), real(-1.1)};
  m.prediction.a = {real(0.5), real(-0.25), real(1.5), real(0.75), real(-2), real(0.1)};

  EncodedSample es;
  es.label = 1;
  es.contexts[0] = {{3, 2, 4}};
  Forward f = forward(m, make_batched(es, cfg));

  const double v0 = std::tanh(0.3), v1 = std::tanh(-1.1);
  const double logits[3] = {0.5 * v0 - 0.25 * v1, 1.5 * v0 + 0.75 * v1,
                            -2.0 * v0 + 0.1 * v1};
  const double top = std::max({logits[0], logits[1], logits[2]});
  double denom = 0;
  for (double l : logits) denom += std::exp(l - top);
  for (int i = 0; i < 3; ++i)
    CHECK(static_cast<double>(f.probs[i]) ==
          doctest::Approx(std::exp(logits[i] - top) / denom).epsilon(1e-12));
}

TEST_CASE("forward throws AllMasked when an active kind has no contexts") {
  VocabSet v = toy_vocab();
  Model m = init_model(small_config(), v);
  EncodedSample es = toy_encoded();
  es.contexts[1].clear();
  CHECK_THROWS_AS(forward(m, make_batched(es, m.config)), AllMasked);
}

TEST_CASE("masked slot contents cannot influence the forward pass") {
  VocabSet v = toy_vocab();
  Model m = init_model(small_config(), v);
  BatchedSample a = make_batched(toy_encoded(), m.config);
  BatchedSample b = a;
  b.slots[0][3] = {7, 4, 8};  // masked slot, different indices
  Forward fa = forward(m, a);
  Forward fb = forward(m, b);
  CHECK(fa.probs == fb.probs);
  CHECK(fa.code_vector == fb.code_vector);
}

TEST_CASE("dropout scales context vectors and vanishes at inference") {
  VocabSet v = toy_vocab();
  ModelConfig cfg = small_config();
  cfg.dropout = real(0.25);
  Model m = init_model(cfg, v);
  BatchedSample b = make_batched(toy_encoded(), cfg);

  Forward plain = forward(m, b, false, nullptr);
  for (const auto& scales : plain.dropout_scale)
    for (real s : scales) CHECK(s == real(1));

  Rng rng(41);
  Forward trained = forward(m, b, true, &rng);
  bool saw_drop = false, saw_keep = false;
  for (const auto& scales : trained.dropout_scale)
    for (real s : scales) {
      const bool dropped = s == real(0);
      const bool kept = std::abs(static_cast<double>(s) - 4.0 / 3.0) < 1e-12;
      CHECK((dropped || kept));
      saw_drop = saw_drop || dropped;
      saw_keep = saw_keep || kept;
    }
  CHECK(saw_keep);
  CHECK(saw_drop);  // 9 slots at rate 0.25 under this seed

  Rng rng_a(41), rng_b(41);
  Forward fa = forward(m, b, true, &rng_a);
  Forward fb = forward(m, b, true, &rng_b);
  CHECK(fa.probs == fb.probs);

  cfg.dropout = real(0);
  Model nodrop = init_model(cfg, v);
  Rng rng_c(41);
  CHECK(forward(nodrop, make_batched(toy_encoded(), cfg), true, &rng_c).probs ==
        forward(nodrop, make_batched(toy_encoded(), cfg), false, nullptr).probs);

  CHECK_THROWS_AS(forward(m, b, true, nullptr), std::invalid_argument);
}

TEST_CASE("analytic gradients match central finite differences") {
  VocabSet v = toy_vocab(6, 5, 5);
  for (uint64_t seed : {1ull, 2ull, 3ull}) {
    ModelConfig cfg = small_config();
    cfg.seed = seed;
    Model m = init_model(cfg, v);

    std::vector<BatchedSample> batch = {make_batched(toy_encoded(2), cfg),
                                        make_batched(toy_encoded(0), cfg)};
    batch[1].slots[0][0] = {5, 4, 6};
    batch[1].slots[2][1] = {7, 3, 8};

    Model grads = zeros_like(m);
    for (const BatchedSample& b : batch) {
      Forward f = forward(m, b);
      backward(m, b, f, grads);
    }
    scale_gradients(grads, real(1) / static_cast<real>(batch.size()));

    auto params = model_tensors(m);
    auto gt = model_tensors(grads);
    const double h = 1e-6;
    for (size_t t = 0; t < params.size(); ++t) {
      for (size_t i = 0; i < params[t].data->size(); ++i) {
        real& w = (*params[t].data)[i];
        const real saved = w;
        w = saved + static_cast<real>(h);
        const double up = batch_loss(m, batch);
        w = saved - static_cast<real>(h);
        const double down = batch_loss(m, batch);
        w = saved;
        const double fd = (up - down) / (2 * h);
        const double an = static_cast<double>((*gt[t].data)[i]);
        const double scale = std::max({1e-4, std::abs(fd), std::abs(an)});
        if (std::abs(an - fd) / scale >= 1e-4) {
          CAPTURE(params[t].name);
          CAPTURE(i);
          CAPTURE(an);
          CAPTURE(fd);
          CHECK(std::abs(an - fd) / scale < 1e-4);
        }
      }
    }
  }
}

TEST_CASE("masked and untouched rows receive exactly zero gradient") {
  VocabSet v = toy_vocab();
  Model m = init_model(small_config(), v);
  EncodedSample es = toy_encoded();
  BatchedSample b = make_batched(es, m.config);
  b.slots[0][3] = {8, 4, 8};  // masked slot aimed at otherwise unused rows

  Model grads = zeros_like(m);
  Forward f = forward(m, b);
  backward(m, b, f, grads);

  const int D = m.config.dim;
  for (int j = 0; j < D; ++j) {
    CHECK(grads.pipes[0].token_embedding(8, j) == real(0));
    CHECK(grads.pipes[0].path_embedding(4, j) == real(0));
  }
  // A row that does appear in an unmasked slot must carry gradient.
  real used = real(0);
  for (int j = 0; j < D; ++j) used += std::abs(grads.pipes[0].token_embedding(3, j));
  CHECK(used > real(0));
}

TEST_CASE("adam leaves parameters alone on zero gradient and steps at lr") {
  VocabSet v = toy_vocab();
  Model m = init_model(small_config(), v);
  Model zero = zeros_like(m);
  AdamState st = init_adam(m);
  Model before = m;
  adam_step(m, zero, st, AdamConfig{});
  CHECK(m == before);

  Model g = zeros_like(m);
  g.pipes[0].bias[0] = real(0.5);
  g.pipes[0].bias[1] = real(-0.25);
  AdamConfig cfg;
  AdamState fresh = init_adam(m);
  adam_step(m, g, fresh, cfg);
  CHECK(static_cast<double>(before.pipes[0].bias[0] - m.pipes[0].bias[0]) ==
        doctest::Approx(0.001).epsilon(1e-6));
  CHECK(static_cast<double>(before.pipes[0].bias[1] - m.pipes[0].bias[1]) ==
        doctest::Approx(-0.001).epsilon(1e-6));
  CHECK(m.pipes[0].bias[2] == before.pipes[0].bias[2]);
}

TEST_CASE("adam rejects mismatched shapes") {
  VocabSet v = toy_vocab();
  Model m = init_model(small_config(), v);
  AdamState st = init_adam(m);
  ModelConfig other = small_config();
  other.active = {true, false, false};
  Model g = zeros_like(init_model(other, v));
  CHECK_THROWS_AS(adam_step(m, g, st, AdamConfig{}), ShapeMismatch);
}

TEST_CASE("ten optimizer steps are bit-deterministic") {
  VocabSet v = toy_vocab();
  auto run = [&] {
    Model m = init_model(small_config(), v);
    AdamState st = init_adam(m);
    BatchedSample b = make_batched(toy_encoded(), m.config);
    for (int step = 0; step < 10; ++step) {
      Model grads = zeros_like(m);
      Forward f = forward(m, b);
      backward(m, b, f, grads);
      adam_step(m, grads, st, AdamConfig{});
    }
    return m;
  };
  CHECK(run() == run());
}

TEST_CASE("checkpoints round trip bit-exactly") {
  VocabSet v = toy_vocab();
  ModelConfig cfg = small_config(5);
  cfg.active = {true, false, true};
  cfg.dropout = real(0.25);
  Model m = init_model(cfg, v);
  const std::string path = "ckpt_roundtrip.bin";
  save_checkpoint(m, path);
  Model back = load_checkpoint(path, &v);
  CHECK(back == m);

  EncodedSample es = toy_encoded();
  Forward fa = forward(m, make_batched(es, cfg));
  Forward fb = forward(back, make_batched(es, back.config));
  CHECK(fa.probs == fb.probs);
  CHECK(fa.code_vector == fb.code_vector);
  std::remove(path.c_str());
}

TEST_CASE("corrupted checkpoints are rejected") {
  VocabSet v = toy_vocab();
  Model m = init_model(small_config(), v);
  const std::string path = "ckpt_corrupt.bin";
  save_checkpoint(m, path);

  std::string bytes;
  {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    bytes = buf.str();
  }
  bytes[bytes.size() / 2] = static_cast<char>(bytes[bytes.size() / 2] ^ 0x20);
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  }
  CHECK_THROWS_AS(load_checkpoint(path), ChecksumMismatch);
  std::remove(path.c_str());
}

TEST_CASE("checkpoints refuse a different vocabulary") {
  VocabSet v = toy_vocab();
  Model m = init_model(small_config(), v);
  const std::string path = "ckpt_vocab.bin";
  save_checkpoint(m, path);

  VocabSet other = toy_vocab();
  other.tokens.add("straggler", 1);
  CHECK_THROWS_AS(load_checkpoint(path, &other), VocabMismatch);
  CHECK_NOTHROW(load_checkpoint(path, &v));
  CHECK_NOTHROW(load_checkpoint(path));  // hash check only happens on request
  std::remove(path.c_str());
}
