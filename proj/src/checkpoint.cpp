#include "pathvec/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "pathvec/errors.hpp"

namespace pathvec {

namespace {

constexpr char kMagic[8] = {'P', 'V', 'E', 'C', 'M', 'D', 'L', '1'};
constexpr uint32_t kVersion = 1;

uint64_t fnv64(const std::string& bytes, size_t count) {
  uint64_t h = 14695981039346656037ull;
  for (size_t i = 0; i < count; ++i) {
    h ^= static_cast<unsigned char>(bytes[i]);
    h *= 1099511628211ull;
  }
  return h;
}

struct Writer {
  std::string out;

  void u8(uint8_t v) { out.push_back(static_cast<char>(v)); }
  void u32(uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<uint8_t>(v >> (8 * i)));
  }
  void u64(uint64_t v) {
    for (int i = 0; i < 8; ++i) u8(static_cast<uint8_t>(v >> (8 * i)));
  }
  void i32(int32_t v) { u32(static_cast<uint32_t>(v)); }
  void i64(int64_t v) { u64(static_cast<uint64_t>(v)); }
  void f64(double v) { u64(std::bit_cast<uint64_t>(v)); }
  void bytes(const char* p, size_t n) { out.append(p, n); }
  void str(const std::string& s) {
    u32(static_cast<uint32_t>(s.size()));
    bytes(s.data(), s.size());
  }
  void value(real v) {
    if constexpr (sizeof(real) == 8)
      u64(std::bit_cast<uint64_t>(static_cast<double>(v)));
    else
      u32(std::bit_cast<uint32_t>(static_cast<float>(v)));
  }
};

struct Reader {
  const std::string& in;
  size_t pos = 0;

  void need(size_t n) const {
    if (pos + n > in.size()) throw FormatError(0, "checkpoint truncated");
  }
  uint8_t u8() {
    need(1);
    return static_cast<uint8_t>(in[pos++]);
  }
  uint32_t u32() {
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(u8()) << (8 * i);
    return v;
  }
  uint64_t u64() {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(u8()) << (8 * i);
    return v;
  }
  int32_t i32() { return static_cast<int32_t>(u32()); }
  int64_t i64() { return static_cast<int64_t>(u64()); }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string str() {
    uint32_t n = u32();
    need(n);
    std::string s = in.substr(pos, n);
    pos += n;
    return s;
  }
  real value() {
    if constexpr (sizeof(real) == 8)
      return static_cast<real>(std::bit_cast<double>(u64()));
    else
      return static_cast<real>(std::bit_cast<float>(u32()));
  }
};

}  // namespace

void save_checkpoint(const Model& model, const std::string& path) {
  Writer w;
  w.bytes(kMagic, sizeof(kMagic));
  w.u32(kVersion);
  w.u8(static_cast<uint8_t>(sizeof(real)));

  const ModelConfig& c = model.config;
  w.i32(c.dim);
  for (bool a : c.active) w.u8(a ? 1 : 0);
  w.f64(static_cast<double>(c.dropout));
  for (int cap : c.caps) w.i32(cap);
  w.u64(c.seed);
  w.i32(model.num_labels);
  for (uint64_t h : model.vocab_hashes) w.u64(h);

  auto tensors = model_tensors(const_cast<Model&>(model));
  w.u32(static_cast<uint32_t>(tensors.size()));
  for (const TensorRef& t : tensors) {
    w.str(t.name);
    w.u32(static_cast<uint32_t>(t.shape.size()));
    for (int dim : t.shape) w.i64(dim);
    w.u64(t.data->size());
    for (real v : *t.data) w.value(v);
  }

  w.u64(fnv64(w.out, w.out.size()));

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open checkpoint for writing: " + path);
  out.write(w.out.data(), static_cast<std::streamsize>(w.out.size()));
  out.flush();
  if (!out) throw std::runtime_error("failed writing checkpoint: " + path);
}

Model load_checkpoint(const std::string& path, const VocabSet* expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open checkpoint: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();

  if (bytes.size() < sizeof(kMagic) + 8) throw FormatError(0, "checkpoint too small");
  const uint64_t stored = [&] {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
      v |= static_cast<uint64_t>(static_cast<unsigned char>(bytes[bytes.size() - 8 +
                                                                  static_cast<size_t>(i)]))
           << (8 * i);
    return v;
  }();
  if (fnv64(bytes, bytes.size() - 8) != stored)
    throw ChecksumMismatch("checkpoint checksum mismatch: " + path);

  Reader r{bytes};
  r.need(sizeof(kMagic));
  if (bytes.compare(0, sizeof(kMagic), kMagic, sizeof(kMagic)) != 0)
    throw FormatError(0, "not a checkpoint file");
  r.pos = sizeof(kMagic);
  if (r.u32() != kVersion) throw FormatError(0, "unsupported checkpoint version");
  if (r.u8() != sizeof(real))
    throw FormatError(0, "checkpoint was written with a different real width");

  Model m;
  m.config.dim = r.i32();
  for (auto& a : m.config.active) a = r.u8() != 0;
  m.config.dropout = static_cast<real>(r.f64());
  for (auto& cap : m.config.caps) cap = r.i32();
  m.config.seed = r.u64();
  m.num_labels = r.i32();
  for (auto& h : m.vocab_hashes) h = r.u64();

  const uint32_t count = r.u32();
  for (uint32_t t = 0; t < count; ++t) {
    const std::string name = r.str();
    const uint32_t ndim = r.u32();
    std::vector<int> shape;
    size_t total = 1;
    for (uint32_t i = 0; i < ndim; ++i) {
      shape.push_back(static_cast<int>(r.i64()));
      total *= static_cast<size_t>(shape.back());
    }
    const uint64_t n = r.u64();
    if (n != total) throw FormatError(0, "tensor '" + name + "' shape/count mismatch");
    std::vector<real> data(n);
    for (uint64_t i = 0; i < n; ++i) data[i] = r.value();

    auto as_matrix = [&](Matrix& dst) {
      if (shape.size() != 2) throw FormatError(0, "tensor '" + name + "' is not 2-D");
      dst.rows = shape[0];
      dst.cols = shape[1];
      dst.a = std::move(data);
    };
    auto as_vector = [&](std::vector<real>& dst) {
      if (shape.size() != 1) throw FormatError(0, "tensor '" + name + "' is not 1-D");
      dst = std::move(data);
    };

    if (name == "prediction") {
      as_matrix(m.prediction);
      continue;
    }
    const size_t dot = name.find('.');
    int rep = -1;
    if (dot != std::string::npos) {
      const std::string head = name.substr(0, dot);
      if (head == "ast") rep = 0;
      if (head == "cfg") rep = 1;
      if (head == "pdg") rep = 2;
    }
    if (rep < 0) throw FormatError(0, "unknown tensor '" + name + "'");
    Pipeline& p = m.pipes[static_cast<size_t>(rep)];
    const std::string field = name.substr(dot + 1);
    if (field == "token_embedding")
      as_matrix(p.token_embedding);
    else if (field == "path_embedding")
      as_matrix(p.path_embedding);
    else if (field == "dense")
      as_matrix(p.dense);
    else if (field == "bias")
      as_vector(p.bias);
    else if (field == "attention")
      as_vector(p.attention);
    else
      throw FormatError(0, "unknown tensor '" + name + "'");
  }

  const size_t expected_tensors =
      static_cast<size_t>(m.config.active_count()) * 5 + 1;
  if (count != expected_tensors)
    throw FormatError(0, "checkpoint tensor count does not match its config");
  if (m.prediction.rows != m.num_labels || m.prediction.cols != m.code_dim())
    throw FormatError(0, "prediction matrix does not match the checkpoint config");

  if (expected != nullptr) {
    const std::array<uint64_t, 5> have = {
        expected->tokens.hash(), expected->paths[0].hash(), expected->paths[1].hash(),
        expected->paths[2].hash(), expected->labels.hash()};
    static constexpr std::array<const char*, 5> kWhich = {
        "token", "ast_path", "cfg_path", "pdg_path", "label"};
    for (size_t i = 0; i < 5; ++i)
      if (have[i] != m.vocab_hashes[i])
        throw VocabMismatch(std::string("checkpoint was trained with a different ") +
                            kWhich[i] + " vocabulary");
  }
  return m;
}

}  // namespace pathvec
