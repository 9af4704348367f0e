#include "pathvec/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pathvec/errors.hpp"

namespace pathvec {

namespace {

constexpr std::array<const char*, 3> kPipeNames = {"ast", "cfg", "pdg"};

void fill_uniform(std::vector<real>& v, Rng& rng, double bound) {
  for (real& x : v) x = static_cast<real>(rng.uniform(-bound, bound));
}

}  // namespace

Model init_model(const ModelConfig& config, const VocabSet& vocab) {
  if (config.dim <= 0) throw std::invalid_argument("model dimension must be positive");
  if (config.active_count() == 0)
    throw std::invalid_argument("at least one representation must be active");
  for (int cap : config.caps)
    if (cap <= 0) throw std::invalid_argument("context caps must be positive");
  if (config.dropout < real(0) || config.dropout >= real(1))
    throw std::invalid_argument("dropout must lie in [0, 1)");
  if (vocab.labels.size() == 0) throw std::invalid_argument("label vocabulary is empty");

  Model m;
  m.config = config;
  m.num_labels = vocab.labels.size();
  m.vocab_hashes = {vocab.tokens.hash(), vocab.paths[0].hash(), vocab.paths[1].hash(),
                    vocab.paths[2].hash(), vocab.labels.hash()};

  const int D = config.dim;
  const double emb_bound = 0.5 / std::sqrt(static_cast<double>(D));
  Rng rng(config.seed);
  for (int r = 0; r < 3; ++r) {
    if (!config.active[static_cast<size_t>(r)]) continue;
    Pipeline& p = m.pipes[static_cast<size_t>(r)];
    p.token_embedding = Matrix::zeros(vocab.tokens.size(), D);
    p.path_embedding = Matrix::zeros(vocab.paths[static_cast<size_t>(r)].size(), D);
    p.dense = Matrix::zeros(D, 3 * D);
    p.bias.assign(static_cast<size_t>(D), real(0));
    p.attention.assign(static_cast<size_t>(D), real(0));
    fill_uniform(p.token_embedding.a, rng, emb_bound);
    fill_uniform(p.path_embedding.a, rng, emb_bound);
    fill_uniform(p.dense.a, rng, 0.5 / std::sqrt(3.0 * D));
    fill_uniform(p.attention, rng, emb_bound);
  }
  m.prediction = Matrix::zeros(m.num_labels, m.code_dim());
  fill_uniform(m.prediction.a, rng, 0.5 / std::sqrt(static_cast<double>(m.code_dim())));
  return m;
}

Model zeros_like(const Model& m) {
  Model z = m;
  for (TensorRef& t : model_tensors(z)) std::fill(t.data->begin(), t.data->end(), real(0));
  return z;
}

std::vector<TensorRef> model_tensors(Model& m) {
  std::vector<TensorRef> out;
  const int D = m.config.dim;
  for (int r = 0; r < 3; ++r) {
    if (!m.config.active[static_cast<size_t>(r)]) continue;
    Pipeline& p = m.pipes[static_cast<size_t>(r)];
    const std::string base = kPipeNames[static_cast<size_t>(r)];
    out.push_back({base + ".token_embedding", &p.token_embedding.a,
                   {p.token_embedding.rows, p.token_embedding.cols}});
    out.push_back({base + ".path_embedding", &p.path_embedding.a,
                   {p.path_embedding.rows, p.path_embedding.cols}});
    out.push_back({base + ".dense", &p.dense.a, {p.dense.rows, p.dense.cols}});
    out.push_back({base + ".bias", &p.bias, {D}});
    out.push_back({base + ".attention", &p.attention, {D}});
  }
  out.push_back({"prediction", &m.prediction.a, {m.prediction.rows, m.prediction.cols}});
  return out;
}

BatchedSample make_batched(const EncodedSample& s, const ModelConfig& config) {
  BatchedSample b;
  b.label = s.label;
  for (int r = 0; r < 3; ++r) {
    const int cap = config.caps[static_cast<size_t>(r)];
    auto& slots = b.slots[static_cast<size_t>(r)];
    auto& mask = b.mask[static_cast<size_t>(r)];
    slots.assign(static_cast<size_t>(cap), EncodedContext{});
    mask.assign(static_cast<size_t>(cap), 0);
    const auto& src = s.contexts[static_cast<size_t>(r)];
    const size_t n = std::min(static_cast<size_t>(cap), src.size());
    for (size_t i = 0; i < n; ++i) {
      slots[i] = src[i];
      mask[i] = 1;
    }
  }
  return b;
}

std::vector<real> embed_context(const Pipeline& p, int t1, int path, int t2) {
  auto check = [](int idx, const Matrix& table, const char* what) {
    if (idx < 0 || idx >= table.rows)
      throw IndexOutOfRange(std::string(what) + " index " + std::to_string(idx) +
                            " outside a table of " + std::to_string(table.rows) + " rows");
  };
  check(t1, p.token_embedding, "token");
  check(t2, p.token_embedding, "token");
  check(path, p.path_embedding, "path");

  const int D = p.dense.rows;
  const real* e1 = &p.token_embedding.a[static_cast<size_t>(t1) * static_cast<size_t>(D)];
  const real* ep = &p.path_embedding.a[static_cast<size_t>(path) * static_cast<size_t>(D)];
  const real* e2 = &p.token_embedding.a[static_cast<size_t>(t2) * static_cast<size_t>(D)];

  std::vector<real> x(static_cast<size_t>(D));
  for (int i = 0; i < D; ++i) {
    const real* row = &p.dense.a[static_cast<size_t>(i) * static_cast<size_t>(3 * D)];
    real z = p.bias[static_cast<size_t>(i)];
    for (int j = 0; j < D; ++j) z += row[j] * e1[j];
    for (int j = 0; j < D; ++j) z += row[D + j] * ep[j];
    for (int j = 0; j < D; ++j) z += row[2 * D + j] * e2[j];
    x[static_cast<size_t>(i)] = std::tanh(z);
  }
  return x;
}

Attention attend(const Pipeline& p, const std::vector<std::vector<real>>& contexts,
                 const std::vector<uint8_t>& mask) {
  if (contexts.size() != mask.size())
    throw ShapeMismatch("attention mask does not match the context count");
  const int D = static_cast<int>(p.attention.size());
  const size_t n = contexts.size();

  Attention out;
  out.weights.assign(n, real(0));
  out.aggregate.assign(static_cast<size_t>(D), real(0));

  std::vector<real> logit(n, real(0));
  real best = real(0);
  bool any = false;
  for (size_t i = 0; i < n; ++i) {
    if (!mask[i]) continue;
    real l = real(0);
    for (int j = 0; j < D; ++j)
      l += p.attention[static_cast<size_t>(j)] * contexts[i][static_cast<size_t>(j)];
    logit[i] = l;
    best = any ? std::max(best, l) : l;
    any = true;
  }
  if (!any) throw AllMasked("every context slot is masked");

  real denom = real(0);
  for (size_t i = 0; i < n; ++i) {
    if (!mask[i]) continue;
    out.weights[i] = std::exp(logit[i] - best);
    denom += out.weights[i];
  }
  for (size_t i = 0; i < n; ++i) {
    if (!mask[i]) continue;
    out.weights[i] /= denom;
    for (int j = 0; j < D; ++j)
      out.aggregate[static_cast<size_t>(j)] +=
          out.weights[i] * contexts[i][static_cast<size_t>(j)];
  }
  return out;
}

void softmax_inplace(std::vector<real>& logits) {
  if (logits.empty()) return;
  const real best = *std::max_element(logits.begin(), logits.end());
  real denom = real(0);
  for (real& l : logits) {
    l = std::exp(l - best);
    denom += l;
  }
  for (real& l : logits) l /= denom;
}

real cross_entropy(const std::vector<real>& probs, int label) {
  if (label < 0 || label >= static_cast<int>(probs.size()))
    throw IndexOutOfRange("label index " + std::to_string(label) +
                          " outside " + std::to_string(probs.size()) + " classes");
  const real p = std::max(probs[static_cast<size_t>(label)], real(1e-12));
  return -std::log(p);
}

Forward forward(const Model& m, const BatchedSample& s, bool training, Rng* dropout_rng) {
  const bool drop = training && m.config.dropout > real(0);
  if (drop && dropout_rng == nullptr)
    throw std::invalid_argument("training forward pass needs a dropout rng");
  const real keep = real(1) - m.config.dropout;

  Forward f;
  f.code_vector.reserve(static_cast<size_t>(m.code_dim()));
  for (int r = 0; r < 3; ++r) {
    if (!m.config.active[static_cast<size_t>(r)]) continue;
    const Pipeline& p = m.pipes[static_cast<size_t>(r)];
    const auto& slots = s.slots[static_cast<size_t>(r)];
    const auto& mask = s.mask[static_cast<size_t>(r)];
    if (static_cast<int>(slots.size()) != m.config.caps[static_cast<size_t>(r)] ||
        slots.size() != mask.size())
      throw ShapeMismatch("sample slots do not match the model caps");

    auto& ctx = f.contexts[static_cast<size_t>(r)];
    ctx.resize(slots.size());
    for (size_t i = 0; i < slots.size(); ++i)
      ctx[i] = embed_context(p, slots[i].start, slots[i].path, slots[i].end);

    auto& scale = f.dropout_scale[static_cast<size_t>(r)];
    scale.assign(slots.size(), real(1));

    Attention att;
    if (drop) {
      for (size_t i = 0; i < slots.size(); ++i)
        scale[i] = dropout_rng->unit() < keep ? real(1) / keep : real(0);
      std::vector<std::vector<real>> dropped = ctx;
      for (size_t i = 0; i < dropped.size(); ++i) {
        if (scale[i] == real(1)) continue;
        for (real& x : dropped[i]) x *= scale[i];
      }
      att = attend(p, dropped, mask);
    } else {
      att = attend(p, ctx, mask);
    }
    f.weights[static_cast<size_t>(r)] = std::move(att.weights);
    f.aggregate[static_cast<size_t>(r)] = std::move(att.aggregate);
    const auto& agg = f.aggregate[static_cast<size_t>(r)];
    f.code_vector.insert(f.code_vector.end(), agg.begin(), agg.end());
  }

  const int d = m.prediction.cols;
  if (static_cast<int>(f.code_vector.size()) != d)
    throw ShapeMismatch("code vector width does not match the prediction matrix");
  f.probs.assign(static_cast<size_t>(m.num_labels), real(0));
  for (int i = 0; i < m.num_labels; ++i) {
    const real* row = &m.prediction.a[static_cast<size_t>(i) * static_cast<size_t>(d)];
    real y = real(0);
    for (int j = 0; j < d; ++j) y += row[j] * f.code_vector[static_cast<size_t>(j)];
    f.probs[static_cast<size_t>(i)] = y;
  }
  softmax_inplace(f.probs);

  real total = real(0);
  for (real p : f.probs) total += p;
  if (!std::isfinite(total)) throw NumericFault("non-finite probabilities in forward pass");

  if (s.label >= 0) {
    f.loss = cross_entropy(f.probs, s.label);
    if (!std::isfinite(f.loss)) throw NumericFault("non-finite loss");
  }
  return f;
}

void backward(const Model& m, const BatchedSample& s, const Forward& f, Model& grads) {
  if (s.label < 0) throw std::invalid_argument("backward needs a labeled sample");
  if (grads.prediction.a.size() != m.prediction.a.size())
    throw ShapeMismatch("gradient accumulator does not match the model");

  const int D = m.config.dim;
  const int d = m.code_dim();

  std::vector<real> dy(f.probs);
  dy[static_cast<size_t>(s.label)] -= real(1);

  std::vector<real> dv(static_cast<size_t>(d), real(0));
  for (int i = 0; i < m.num_labels; ++i) {
    const real g = dy[static_cast<size_t>(i)];
    const real* wrow = &m.prediction.a[static_cast<size_t>(i) * static_cast<size_t>(d)];
    real* grow = &grads.prediction.a[static_cast<size_t>(i) * static_cast<size_t>(d)];
    for (int j = 0; j < d; ++j) {
      grow[j] += g * f.code_vector[static_cast<size_t>(j)];
      dv[static_cast<size_t>(j)] += g * wrow[j];
    }
  }

  int offset = 0;
  for (int r = 0; r < 3; ++r) {
    if (!m.config.active[static_cast<size_t>(r)]) continue;
    const Pipeline& p = m.pipes[static_cast<size_t>(r)];
    Pipeline& gp = grads.pipes[static_cast<size_t>(r)];
    const auto& mask = s.mask[static_cast<size_t>(r)];
    const auto& ctx = f.contexts[static_cast<size_t>(r)];
    const auto& scale = f.dropout_scale[static_cast<size_t>(r)];
    const auto& alpha = f.weights[static_cast<size_t>(r)];
    const real* dagg = &dv[static_cast<size_t>(offset)];
    offset += D;

    const size_t n = ctx.size();
    std::vector<real> dalpha(n, real(0));
    real mixed = real(0);
    for (size_t i = 0; i < n; ++i) {
      if (!mask[i]) continue;
      real acc = real(0);
      for (int j = 0; j < D; ++j)
        acc += dagg[j] * ctx[i][static_cast<size_t>(j)] * scale[i];
      dalpha[i] = acc;
      mixed += alpha[i] * dalpha[i];
    }

    std::vector<real> dx(static_cast<size_t>(D));
    for (size_t i = 0; i < n; ++i) {
      if (!mask[i]) continue;
      const real dlogit = alpha[i] * (dalpha[i] - mixed);
      for (int j = 0; j < D; ++j) {
        const real xd = ctx[i][static_cast<size_t>(j)] * scale[i];
        gp.attention[static_cast<size_t>(j)] += dlogit * xd;
        const real dxd = alpha[i] * dagg[j] + dlogit * p.attention[static_cast<size_t>(j)];
        dx[static_cast<size_t>(j)] = dxd * scale[i];
      }

      const EncodedContext& slot = s.slots[static_cast<size_t>(r)][i];
      const size_t row1 = static_cast<size_t>(slot.start) * static_cast<size_t>(D);
      const size_t rowp = static_cast<size_t>(slot.path) * static_cast<size_t>(D);
      const size_t row2 = static_cast<size_t>(slot.end) * static_cast<size_t>(D);
      const real* e1 = &p.token_embedding.a[row1];
      const real* ep = &p.path_embedding.a[rowp];
      const real* e2 = &p.token_embedding.a[row2];
      real* g1 = &gp.token_embedding.a[row1];
      real* gpath = &gp.path_embedding.a[rowp];
      real* g2 = &gp.token_embedding.a[row2];
      for (int k = 0; k < D; ++k) {
        const real x = ctx[i][static_cast<size_t>(k)];
        const real dz = dx[static_cast<size_t>(k)] * (real(1) - x * x);
        if (dz == real(0)) continue;
        gp.bias[static_cast<size_t>(k)] += dz;
        const size_t base = static_cast<size_t>(k) * static_cast<size_t>(3 * D);
        const real* drow = &p.dense.a[base];
        real* grow = &gp.dense.a[base];
        for (int j = 0; j < D; ++j) {
          grow[j] += dz * e1[j];
          grow[D + j] += dz * ep[j];
          grow[2 * D + j] += dz * e2[j];
          g1[j] += dz * drow[j];
          gpath[j] += dz * drow[D + j];
          g2[j] += dz * drow[2 * D + j];
        }
      }
    }
  }
}

void scale_gradients(Model& grads, real factor) {
  for (TensorRef& t : model_tensors(grads))
    for (real& x : *t.data) x *= factor;
}

AdamState init_adam(Model& model) {
  AdamState st;
  for (TensorRef& t : model_tensors(model)) {
    st.m.emplace_back(t.data->size(), real(0));
    st.v.emplace_back(t.data->size(), real(0));
  }
  return st;
}

void adam_step(Model& params, Model& grads, AdamState& state, const AdamConfig& cfg) {
  auto pt = model_tensors(params);
  auto gt = model_tensors(grads);
  if (pt.size() != gt.size() || pt.size() != state.m.size() ||
      pt.size() != state.v.size())
    throw ShapeMismatch("optimizer state does not match the model");

  ++state.step;
  const real bc1 = real(1) - std::pow(cfg.beta1, static_cast<real>(state.step));
  const real bc2 = real(1) - std::pow(cfg.beta2, static_cast<real>(state.step));
  for (size_t k = 0; k < pt.size(); ++k) {
    std::vector<real>& w = *pt[k].data;
    const std::vector<real>& g = *gt[k].data;
    std::vector<real>& mm = state.m[k];
    std::vector<real>& vv = state.v[k];
    if (w.size() != g.size() || w.size() != mm.size() || w.size() != vv.size())
      throw ShapeMismatch("tensor '" + pt[k].name + "' changed size mid-training");
    for (size_t i = 0; i < w.size(); ++i) {
      mm[i] = cfg.beta1 * mm[i] + (real(1) - cfg.beta1) * g[i];
      vv[i] = cfg.beta2 * vv[i] + (real(1) - cfg.beta2) * g[i] * g[i];
      const real mhat = mm[i] / bc1;
      const real vhat = vv[i] / bc2;
      w[i] -= cfg.lr * mhat / (std::sqrt(vhat) + cfg.eps);
    }
  }
}

}  // namespace pathvec
