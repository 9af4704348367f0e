#include "pathvec/runconfig.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "pathvec/errors.hpp"

namespace pathvec {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value,
                            const std::string& wanted) {
  throw std::invalid_argument("config key '" + key + "' wants " + wanted + ", got '" +
                              value + "'");
}

template <typename T>
T parse_number(const std::string& key, const std::string& value, const char* wanted) {
  std::istringstream in(trim(value));
  T out;
  char extra;
  if (!(in >> out) || in >> extra) bad_value(key, value, wanted);
  return out;
}

int parse_int(const std::string& key, const std::string& value) {
  return parse_number<int>(key, value, "an integer");
}
int64_t parse_int64(const std::string& key, const std::string& value) {
  return parse_number<int64_t>(key, value, "an integer");
}
uint64_t parse_uint64(const std::string& key, const std::string& value) {
  return parse_number<uint64_t>(key, value, "a non-negative integer");
}
double parse_double(const std::string& key, const std::string& value) {
  return parse_number<double>(key, value, "a number");
}

std::array<bool, 3> parse_reps(const std::string& value) {
  std::array<bool, 3> reps = {false, false, false};
  std::istringstream in(value);
  std::string part;
  while (std::getline(in, part, ',')) {
    part = trim(part);
    if (part == "ast")
      reps[0] = true;
    else if (part == "cfg")
      reps[1] = true;
    else if (part == "pdg")
      reps[2] = true;
    else if (!part.empty())
      bad_value("reps", value, "a comma list drawn from ast,cfg,pdg");
  }
  if (!reps[0])
    throw std::invalid_argument("config key 'reps' must include 'ast' ('" + value + "')");
  return reps;
}

std::string render_reps(const std::array<bool, 3>& reps) {
  std::string out;
  const char* names[] = {"ast", "cfg", "pdg"};
  for (int r = 0; r < 3; ++r) {
    if (!reps[static_cast<size_t>(r)]) continue;
    if (!out.empty()) out += ',';
    out += names[r];
  }
  return out;
}

std::string parse_choice(const std::string& key, const std::string& value,
                         const std::vector<std::string>& allowed) {
  const std::string v = trim(value);
  for (const std::string& a : allowed)
    if (v == a) return v;
  std::string wanted = "one of";
  for (const std::string& a : allowed) wanted += " '" + a + "'";
  bad_value(key, value, wanted);
}

struct KeyDef {
  const char* name;
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, const std::string&)> set;
};

std::string fmt(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

const std::vector<KeyDef>& key_table() {
  static const std::vector<KeyDef> keys = {
      {"reps", [](const RunConfig& c) { return render_reps(c.reps); },
       [](RunConfig& c, const std::string& v) { c.reps = parse_reps(v); }},
      {"granularity", [](const RunConfig& c) { return c.granularity; },
       [](RunConfig& c, const std::string& v) {
         c.granularity = parse_choice("granularity", v, {"file", "method"});
       }},
      {"ast_max_len", [](const RunConfig& c) { return std::to_string(c.limits.ast_max_len); },
       [](RunConfig& c, const std::string& v) { c.limits.ast_max_len = parse_int("ast_max_len", v); }},
      {"ast_max_width",
       [](const RunConfig& c) { return std::to_string(c.limits.ast_max_width); },
       [](RunConfig& c, const std::string& v) {
         c.limits.ast_max_width = parse_int("ast_max_width", v);
       }},
      {"max_ast", [](const RunConfig& c) { return std::to_string(c.limits.max_ast); },
       [](RunConfig& c, const std::string& v) { c.limits.max_ast = parse_int("max_ast", v); }},
      {"max_cfg", [](const RunConfig& c) { return std::to_string(c.limits.max_cfg); },
       [](RunConfig& c, const std::string& v) { c.limits.max_cfg = parse_int("max_cfg", v); }},
      {"max_pdg", [](const RunConfig& c) { return std::to_string(c.limits.max_pdg); },
       [](RunConfig& c, const std::string& v) { c.limits.max_pdg = parse_int("max_pdg", v); }},
      {"enumeration_cap",
       [](const RunConfig& c) { return std::to_string(c.limits.enumeration_cap); },
       [](RunConfig& c, const std::string& v) {
         c.limits.enumeration_cap = parse_int("enumeration_cap", v);
       }},
      {"threads", [](const RunConfig& c) { return std::to_string(c.threads); },
       [](RunConfig& c, const std::string& v) { c.threads = parse_int("threads", v); }},
      {"stratified", [](const RunConfig& c) { return c.stratified; },
       [](RunConfig& c, const std::string& v) {
         c.stratified = parse_choice("stratified", v, {"auto", "on", "off"});
       }},
      {"dim", [](const RunConfig& c) { return std::to_string(c.dim); },
       [](RunConfig& c, const std::string& v) { c.dim = parse_int("dim", v); }},
      {"dropout", [](const RunConfig& c) { return fmt(c.dropout); },
       [](RunConfig& c, const std::string& v) { c.dropout = parse_double("dropout", v); }},
      {"lr", [](const RunConfig& c) { return fmt(c.lr); },
       [](RunConfig& c, const std::string& v) { c.lr = parse_double("lr", v); }},
      {"batch", [](const RunConfig& c) { return std::to_string(c.batch); },
       [](RunConfig& c, const std::string& v) { c.batch = parse_int("batch", v); }},
      {"epochs", [](const RunConfig& c) { return std::to_string(c.epochs); },
       [](RunConfig& c, const std::string& v) { c.epochs = parse_int("epochs", v); }},
      {"patience", [](const RunConfig& c) { return std::to_string(c.patience); },
       [](RunConfig& c, const std::string& v) { c.patience = parse_int("patience", v); }},
      {"seed", [](const RunConfig& c) { return std::to_string(c.seed); },
       [](RunConfig& c, const std::string& v) {
         c.seed = parse_uint64("seed", v);
         c.limits.seed = c.seed;
       }},
      {"task", [](const RunConfig& c) { return c.task; },
       [](RunConfig& c, const std::string& v) {
         c.task = parse_choice("task", v, {"classification", "naming"});
       }},
      {"theta", [](const RunConfig& c) { return fmt(c.theta); },
       [](RunConfig& c, const std::string& v) { c.theta = parse_double("theta", v); }},
      {"clone_classes", [](const RunConfig& c) { return std::to_string(c.clone_classes); },
       [](RunConfig& c, const std::string& v) {
         c.clone_classes = parse_int("clone_classes", v);
       }},
      {"clone_true", [](const RunConfig& c) { return std::to_string(c.clone_true); },
       [](RunConfig& c, const std::string& v) { c.clone_true = parse_int64("clone_true", v); }},
      {"clone_false", [](const RunConfig& c) { return std::to_string(c.clone_false); },
       [](RunConfig& c, const std::string& v) {
         c.clone_false = parse_int64("clone_false", v);
       }},
      {"bench_reps", [](const RunConfig& c) { return std::to_string(c.bench_reps); },
       [](RunConfig& c, const std::string& v) { c.bench_reps = parse_int("bench_reps", v); }},
      {"bench_warmup", [](const RunConfig& c) { return std::to_string(c.bench_warmup); },
       [](RunConfig& c, const std::string& v) {
         c.bench_warmup = parse_int("bench_warmup", v);
       }},
      {"corpus", [](const RunConfig& c) { return c.corpus; },
       [](RunConfig& c, const std::string& v) { c.corpus = trim(v); }},
      {"run", [](const RunConfig& c) { return c.run; },
       [](RunConfig& c, const std::string& v) { c.run = trim(v); }},
      {"embed_split", [](const RunConfig& c) { return c.embed_split; },
       [](RunConfig& c, const std::string& v) {
         c.embed_split = parse_choice("embed_split", v, {"train", "val", "test", "all"});
       }},
  };
  return keys;
}

std::string upcase(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

bool RunConfig::stratified_effective() const {
  if (stratified == "on") return true;
  if (stratified == "off") return false;
  return granularity == "file";
}

ModelConfig RunConfig::model_config() const {
  ModelConfig m;
  m.dim = dim;
  m.active = reps;
  m.dropout = static_cast<real>(dropout);
  m.caps = {limits.max_ast, limits.max_cfg, limits.max_pdg};
  m.seed = seed;
  return m;
}

TrainConfig RunConfig::train_config() const {
  TrainConfig t;
  t.adam.lr = static_cast<real>(lr);
  t.batch_size = batch;
  t.max_epochs = epochs;
  t.patience = patience;
  t.seed = seed;
  t.task = task == "naming" ? TaskKind::MethodNaming : TaskKind::Classification;
  return t;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  const std::string k = trim(key);
  for (const KeyDef& def : key_table()) {
    if (k == def.name) {
      def.set(cfg, value);
      return;
    }
  }
  throw std::invalid_argument("unknown config key '" + k + "'");
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected key=value, got '" + line + "'");
    apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
}

void apply_environment(RunConfig& cfg) {
  for (const KeyDef& def : key_table()) {
    const std::string var = "PATHVEC_" + upcase(def.name);
    if (const char* value = std::getenv(var.c_str())) def.set(cfg, value);
  }
}

void apply_preset(RunConfig& cfg, const std::string& name) {
  if (name == "desk") {
    cfg.clone_classes = 5;
    cfg.clone_true = 2000;
    cfg.clone_false = 2000;
  } else if (name == "paper-ojclone") {
    cfg.clone_classes = 15;
    cfg.clone_true = 50000;
    cfg.clone_false = 50000;
    cfg.granularity = "file";
    cfg.task = "classification";
  } else {
    throw std::invalid_argument("unknown preset '" + name +
                                "' (available: desk, paper-ojclone)");
  }
}

void write_config(const RunConfig& cfg, std::ostream& out) {
  for (const KeyDef& def : key_table()) out << def.name << "=" << def.get(cfg) << "\n";
}

std::vector<std::string> config_keys() {
  std::vector<std::string> names;
  for (const KeyDef& def : key_table()) names.emplace_back(def.name);
  return names;
}

}  // namespace pathvec
