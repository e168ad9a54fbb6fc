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

// Supervised training loops, evaluation and checkpoints.

#pragma once

#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "stx/audio.hpp"
#include "stx/grad.hpp"
#include "stx/models.hpp"
#include "stx/text.hpp"
#include "stx/toyworld.hpp"

namespace stx::training {

using models::Seq2Seq;
using world::Task;

// How raw corpora become model inputs.
struct Featurizer {
  const text::WordpieceModel* wordpieces = nullptr;
  audio::MelConfig mel;
  int frame_stack = 3;
};

struct Example {
  models::DenseSequence speech;  // speech tasks
  text::TokenSequence source;    // text task
  text::TokenSequence target;
  std::string source_text;
  std::string reference;
};

// A corpus viewed as one task: ASR (speech -> transcript), ST (speech ->
// translation) or MT (source -> target text).
struct TrainingSet {
  std::string name;
  Task task = Task::kSt;
  std::vector<Example> examples;

  bool speech() const { return task != Task::kMt; }
};

// Any corpus with speech can be viewed as ASR; ST needs translations; MT
// needs a text-pair corpus.
TrainingSet make_training_set(const world::Corpus& corpus, Task view, const Featurizer& feat,
                              std::string name = {});

using SetMap = std::map<std::string, TrainingSet>;

struct MixtureSpec {
  std::vector<std::pair<std::string, double>> weights;

  // Positive weights, distinct names, every name present with the right task.
  void validate(const SetMap& sets, Task task) const;
  std::vector<double> probabilities() const;
  static MixtureSpec single(const std::string& name) { return {{{name, 1.0}}}; }
};

// Draws mixture components with probability proportional to weight.
class MixtureSampler {
 public:
  explicit MixtureSampler(const std::vector<double>& weights);
  int draw(std::mt19937_64& rng) { return dist_(rng); }

 private:
  std::discrete_distribution<int> dist_;
};

// Uniform draw of one of `count` tasks; draws nothing when count is 1.
int draw_task(int count, std::mt19937_64& rng);

struct TrainOptions {
  long steps = 1000;
  int batch_size = 16;
  double learning_rate = 1e-3;
  double clip_norm = 5.0;
};

// Parameter names, or prefixes ending in '.', to freeze before training.
using FreezeSpec = std::vector<std::string>;

void apply_freeze(Seq2Seq& model, const FreezeSpec& spec);

struct TrainTrace {
  std::vector<double> loss;
  std::vector<int> picks;  // mixture component (or task) drawn per step
};

// Optimizer state and sampling stream carried across calls, so a run can be
// split and resumed.
struct TrainState {
  grad::OptimizerState optimizer;
  std::mt19937_64 rng;
  long step = 0;
};

// Per step: pick a corpus by weight, draw a batch uniformly with replacement,
// take one clipped Adam step on the trainable parameters. Frozen leading
// encoder layers are run once per example up front and their outputs reused.
TrainTrace train_task(Seq2Seq& model, const SetMap& sets, const MixtureSpec& mixture,
                      const TrainOptions& options, TrainState& state);

// Default ASR pretraining mixture: ASR set and the ST set's transcript view
// at 8:1.
MixtureSpec asr_pretraining_mixture(const std::string& asr_set, const std::string& st_transcripts);

// Three task networks; the ST encoder layers alias the ASR encoder and the ST
// attention and decoder alias the MT ones.
struct MultitaskModels {
  Seq2Seq st;
  Seq2Seq asr;
  Seq2Seq mt;

  // Throws when one parameter name maps to two distinct tensors.
  void check_aliasing() const;
};

MultitaskModels make_multitask(const Seq2Seq& asr, const Seq2Seq& mt, int extra_layers,
                               std::mt19937_64& rng);

struct MultitaskPlan {
  MixtureSpec st;
  MixtureSpec asr;  // empty disables the task
  MixtureSpec mt;   // empty disables the task
};

// Each step draws one enabled task uniformly and trains it for one step. A
// single enabled task draws nothing extra, so it reproduces train_task.
TrainTrace multitask_train(MultitaskModels& models, const SetMap& sets, const MultitaskPlan& plan,
                           const TrainOptions& options, TrainState& state);

enum class Metric { kBleu, kWer };

struct EvalResult {
  Metric metric = Metric::kBleu;
  text::Normalization normalization = text::Normalization::kVerbatim;
  double score = 0.0;
  std::vector<std::string> hypotheses;
  std::vector<std::string> references;
  std::vector<std::string> sources;
};

EvalResult score_outputs(std::vector<std::string> hypotheses, std::vector<std::string> references,
                         Metric metric, text::Normalization normalization);

// BLEU needs a translation task; WER needs ASR.
EvalResult evaluate(const Seq2Seq& model, const TrainingSet& set, const text::WordpieceModel& wpm,
                    Metric metric, text::Normalization normalization,
                    const models::BeamOptions& beam = {});

// Decodes every example of a set, in input order. Any speech set suits a
// speech model.
std::vector<text::TokenSequence> decode_set(const Seq2Seq& model, const TrainingSet& set,
                                            const models::BeamOptions& beam);

struct CheckpointInfo {
  std::string fingerprint;
  long step = 0;
  std::uint64_t seed = 0;
};

// JSON header line (fingerprint, config, step, seed, rng and optimizer
// layout) followed by little-endian float64 parameter and moment data.
void save_checkpoint(const Seq2Seq& model, const std::filesystem::path& path, const TrainState& state,
                     std::uint64_t seed);
// Into an existing model, whose fingerprint must match.
CheckpointInfo load_checkpoint(const std::filesystem::path& path, Seq2Seq& model,
                               TrainState* state = nullptr);
// Builds the architecture recorded in the header, then loads into it.
Seq2Seq load_model(const std::filesystem::path& path, TrainState* state = nullptr);

std::string config_to_json(const models::ModelConfig& cfg);
models::ModelConfig config_from_json(const std::string& json);

// Smoothed (window 50) loss: median over the last 10% of steps is below the
// median over the first 10%.
bool loss_decreased(const std::vector<double>& loss, int window = 50);

void write_loss_csv(const std::filesystem::path& path, const std::vector<double>& loss);

}  // namespace stx::training
