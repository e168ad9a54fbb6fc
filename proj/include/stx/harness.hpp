// Copyright 2026 The stx Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Config-driven experiment runner. A grid is a directory holding
// manifest.json (shared pipeline settings plus the list of experiment files)
// and one JSON file per experiment. All artifacts of one seed live under
// <out>/seed-<n>/ and are reused unless forced:
//
//   data/        corpora and the wordpiece model
//   pretrain/    asr.ckpt, mt.ckpt and their loss traces
//   synth/       synthesized corpora
//   experiments/<name>/  checkpoint, loss trace, result.json, decodes.jsonl

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stx/models.hpp"
#include "stx/synthesis.hpp"
#include "stx/training.hpp"

namespace stx::harness {

namespace fs = std::filesystem;

enum class Preset { kDesk, kPaperArch };
Preset preset_from_string(const std::string& s);
std::string to_string(Preset p);

// Synthesized corpora an experiment may name besides the real ones
// (st_set, asr_set, mt_set).
inline const std::vector<std::string>& synthetic_corpora() {
  static const std::vector<std::string> names{"tts_multi", "tts_single", "mt_synthetic",
                                              "text_synthetic", "speech_synthetic"};
  return names;
}

// Settings shared by every experiment of a seed.
struct PipelineConfig {
  world::ScaleConfig scale;
  Preset preset = Preset::kDesk;
  int vocab_size = 200;
  long asr_steps = 3000;
  long mt_steps = 2000;
  double learning_rate = 1e-3;
  int batch_size = 16;
  int beam = 2;
  std::vector<std::uint64_t> seeds{1};

  void validate() const;
};

enum class ExperimentKind { kSt, kAsr, kMt, kCascade };

struct ExperimentConfig {
  std::string name;
  ExperimentKind kind = ExperimentKind::kSt;
  bool pretrain_encoder = false;
  bool pretrain_decoder = false;
  bool freeze_encoder = false;
  int extra_layers = 0;
  training::MixtureSpec mixture;
  bool multitask = false;
  long steps = 1000;
  std::vector<std::string> eval_sets{"eval_in", "eval_out"};
  // Display only: table caption key, row label and reference values.
  std::string table;
  std::string row;
  std::vector<double> reference;

  void validate() const;
  // Stable digest of every field that affects results; the name and display
  // fields are excluded, so identically configured experiments share results.
  std::string fingerprint() const;
};

ExperimentConfig experiment_from_json(const std::string& text);
std::string experiment_to_json(const ExperimentConfig& cfg);

struct GridConfig {
  PipelineConfig pipeline;
  std::vector<ExperimentConfig> experiments;
};

// Reads manifest.json and the experiment files it lists. Names must be unique
// and every corpus named in a mixture must be declared.
GridConfig load_grid(const fs::path& manifest);

struct ResultRow {
  std::string experiment;
  std::string eval_set;  // in_domain or out_of_domain
  std::string metric;    // BLEU, WER or WER_lower_nopunct
  double value = 0.0;
  std::uint64_t seed = 0;
  long steps = 0;
  std::string fingerprint;
  std::string table;
  std::string row;
  std::optional<double> reference;
};

struct ExperimentOutcome {
  std::vector<ResultRow> rows;
  bool trained = false;          // false when reused from disk
  bool frozen_bytes_equal = true;
  int frozen_tensors = 0;
  bool loss_decreased = true;
  long steps_run = 0;
};

using Logger = std::function<void(const std::string&)>;

// Artifacts of one seed, created on demand and cached on disk.
class Workspace {
 public:
  Workspace(fs::path out_dir, std::uint64_t seed, PipelineConfig pipeline, bool force = false,
            Logger log = {});
  ~Workspace();
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  const fs::path& root() const { return root_; }
  std::uint64_t seed() const { return seed_; }
  const PipelineConfig& pipeline() const { return pipeline_; }

  void prepare_data();
  void pretrain();
  void synthesize();
  ExperimentOutcome train(const ExperimentConfig& cfg);
  // Scores an already trained experiment; throws "missing checkpoint".
  ExperimentOutcome evaluate(const ExperimentConfig& cfg);
  // Reads a finished experiment's rows; nullopt if it has not run.
  std::optional<ExperimentOutcome> stored(const ExperimentConfig& cfg) const;

  const text::WordpieceModel& wordpieces();
  const world::Corpus& corpus(const std::string& name);
  const training::TrainingSet& training_set(const std::string& corpus, world::Task view);
  models::Seq2Seq pretrained(world::Task task);
  models::ModelConfig model_config(world::Task task, int extra_layers) const;

 private:
  struct Cache;
  fs::path root_;
  std::uint64_t seed_;
  PipelineConfig pipeline_;
  bool force_;
  Logger log_;
  std::unique_ptr<Cache> cache_;

  fs::path experiment_dir(const ExperimentConfig& cfg) const;
  std::vector<ResultRow> score(const ExperimentConfig& cfg, const models::Seq2Seq* model,
                               const fs::path& dir);
  void write_result(const fs::path& dir, const ExperimentConfig& cfg, const ExperimentOutcome& outcome) const;
  std::optional<ExperimentOutcome> adopt_twin(const ExperimentConfig& cfg);
};

// Trains (or reuses) every experiment for every seed; a failure aborts the
// grid and keeps finished results on disk.
std::vector<ResultRow> run_grid(const GridConfig& grid, const fs::path& out_dir, bool force,
                                Logger log = {});

// Rows of every finished experiment under out_dir.
std::vector<ResultRow> collect_results(const GridConfig& grid, const fs::path& out_dir);

void write_results_csv(const std::vector<ResultRow>& rows, const fs::path& path);
// One markdown table per caption, experiments as rows and eval sets as
// columns, with median and per-seed values and the reference annotation.
std::string render_markdown(const std::vector<ResultRow>& rows);

// Bytes needed to hold parameters, gradients and both optimizer moments.
std::size_t training_memory_bytes(world::Task task, const models::ModelConfig& cfg, int vocab);

}  // namespace stx::harness
