#pragma once

// Flat key=value configuration shared by every subcommand. Values resolve
// with flag > environment > config file > default precedence, and the
// resolved set serializes back out so a run directory records exactly what
// ran. Environment overrides use the PATHVEC_ prefix with the key upcased
// (PATHVEC_MAX_AST=50 overrides max_ast).

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pathvec/model.hpp"
#include "pathvec/paths.hpp"
#include "pathvec/tasks.hpp"

namespace pathvec {

struct RunConfig {
  std::array<bool, 3> reps = {true, true, true};  // AST is mandatory
  std::string granularity = "file";               // file | method
  ExtractionLimits limits;                        // limits.seed mirrors `seed`
  int threads = 0;                                // 0 = logical CPU count
  std::string stratified = "auto";                // auto | on | off

  int dim = 128;
  double dropout = 0.25;
  double lr = 0.001;
  int batch = 1024;
  int epochs = 20;
  int patience = 5;
  uint64_t seed = 1;
  std::string task = "classification";  // classification | naming

  double theta = 0.4;
  int clone_classes = 5;
  int64_t clone_true = 2000;
  int64_t clone_false = 2000;

  int bench_reps = 3;
  int bench_warmup = 1;

  std::string corpus;               // input directory for extract and bench
  std::string run = "runs/latest";  // artifact directory
  std::string embed_split = "test";  // train | val | test | all

  bool operator==(const RunConfig&) const = default;

  // "auto" stratifies file-level corpora only; method names rarely repeat
  // ten times.
  bool stratified_effective() const;
  ModelConfig model_config() const;
  TrainConfig train_config() const;  // checkpoint_path left for the caller
};

// One key=value assignment. Unknown keys and unparsable values throw
// std::invalid_argument naming the key.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

// key=value lines; '#' comments and blank lines are skipped.
void load_config_file(RunConfig& cfg, const std::string& path);

// PATHVEC_<KEY> environment overrides, applied for every known key.
void apply_environment(RunConfig& cfg);

// Named setting bundles: "desk" (the default-scale clone protocol) and
// "paper-ojclone" (15 classes, 50K true + 50K false pairs).
void apply_preset(RunConfig& cfg, const std::string& name);

// Every key in declaration order, reloadable through load_config_file.
void write_config(const RunConfig& cfg, std::ostream& out);

std::vector<std::string> config_keys();

}  // namespace pathvec
