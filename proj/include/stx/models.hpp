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

// Attention-based LSTM sequence-to-sequence models for recognition,
// translation and direct speech translation.
//
// Sequences inside a batch are laid out time-major: row t * B + b of a
// [T * B, D] tensor holds step t of example b.

#pragma once

#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "stx/audio.hpp"
#include "stx/grad.hpp"
#include "stx/text.hpp"
#include "stx/toyworld.hpp"

namespace stx::models {

using grad::Tensor;
using world::Task;

struct ModelConfig {
  int input_dim = 20;  // mel channels per frame
  int frame_stack = 3;
  int cell = 64;
  int encoder_layers = 2;
  int extra_layers = 0;  // stacked above the pretrained speech encoder
  int decoder_layers = 2;
  int heads = 4;
  int attention_dim = 64;
  int embed_dim = 64;
  bool residual = true;
  double init_scale = 0.05;

  void validate() const;
  std::string describe() const;

  static ModelConfig desk(Task task);
  // Full-size layer counts and widths: 5-layer speech encoder (plus 3 extra
  // for translation), 6-layer text encoder, 8-layer residual translation
  // decoder, cell 1024, 80 mel channels.
  static ModelConfig paper_arch(Task task);
};

struct LstmLayer {
  Tensor wx;    // [in, 4H]
  Tensor wh;    // [H, 4H]
  Tensor bias;  // [4H]
  int input = 0;
  int cell = 0;
};

struct BiLstmLayer {
  LstmLayer forward;
  LstmLayer backward;
  bool frozen = false;
};

struct EncoderStack {
  std::optional<Tensor> embedding;  // token input only
  std::vector<BiLstmLayer> layers;
  int input_dim = 0;

  int output_dim() const { return 2 * layers.back().forward.cell; }
};

struct AttentionModule {
  Tensor w_key;    // [Dk, A]
  Tensor w_query;  // [Dq, A]
  Tensor v;        // [A]
  Tensor w_value;  // [Dk, Dv]
  int heads = 1;
};

struct DecoderStack {
  Tensor embedding;  // [V, E]
  std::vector<LstmLayer> layers;
  Tensor w_out;  // [V, H + Dv]
  Tensor b_out;  // [V]
  bool residual = true;

  int vocab() const { return w_out.dim(0); }
};

struct Seq2Seq {
  Task task = Task::kSt;
  ModelConfig config;
  EncoderStack encoder;
  AttentionModule attention;
  DecoderStack decoder;

  bool speech_input() const { return task != Task::kMt; }
  int vocab() const { return decoder.vocab(); }
  std::vector<Tensor> parameters() const;
  std::vector<Tensor> trainable() const;
  // Task, configuration and every parameter name with its shape.
  std::string fingerprint() const;
  // Independent copy with the same values; handles are not shared.
  Seq2Seq clone() const;
  void set_encoder_frozen(int layer, bool frozen);
  // Leading encoder layers that are frozen.
  int frozen_prefix() const;
};

struct ParameterSpec {
  std::string name;
  grad::Shape shape;
};

// Names and shapes of every parameter `build_model` would allocate; lets
// large configurations be checked without allocating them.
std::vector<ParameterSpec> plan_parameters(Task task, const ModelConfig& cfg, int vocab);
std::size_t parameter_count(const std::vector<ParameterSpec>& plan);

// Fresh model with uniform(-init_scale, init_scale) parameters.
Seq2Seq build_model(Task task, const ModelConfig& cfg, int vocab, std::mt19937_64& rng);

// Dense per-step encoder input, e.g. stacked features or cached states.
struct DenseSequence {
  int steps = 0;
  int dim = 0;
  std::vector<double> values;
};

// Per-utterance mean and variance normalization per channel, then
// concatenation of `stack` consecutive frames (the tail is zero padded).
DenseSequence speech_input(const audio::FeatureSequence& features, int stack);

struct SourceBatch {
  int steps = 0;
  int batch = 0;
  std::vector<int> lengths;
  Tensor dense;             // [T * B, D] for dense input
  std::vector<int> tokens;  // T * B ids for token input
  std::vector<std::vector<double>> keep;  // [T][B], 1 inside the sequence

  bool is_dense() const { return dense.defined(); }
};

SourceBatch dense_batch(std::span<const DenseSequence* const> seqs);
SourceBatch token_batch(std::span<const text::TokenSequence* const> seqs);

struct EncoderOutput {
  Tensor states;  // [T * B, D]
  int steps = 0;
  int batch = 0;
  std::vector<int> lengths;
};

// One direction of an LSTM over a [T * B, in] input; rows past a sequence's
// end carry the state unchanged.
Tensor lstm_direction(const LstmLayer& layer, const Tensor& input, const SourceBatch& batch,
                      bool reverse);

// Runs encoder layers [first_layer, end). Dense input at first_layer > 0 is
// taken to be the output of layer first_layer - 1.
EncoderOutput bilstm_encode(const Seq2Seq& model, const SourceBatch& batch, int first_layer = 0,
                            int end_layer = -1);

// Output of the first `layers` encoder layers for one sequence, without tape.
DenseSequence encode_prefix(const Seq2Seq& model, const DenseSequence& input, int layers);

struct AttentionMemory {
  Tensor keys;    // [T, B, A]
  Tensor values;  // [T * B, Dv]
  Tensor mask;    // [T, B * H], 0 inside, -1e9 past the end
  int steps = 0;
  int batch = 0;
};

AttentionMemory prepare_memory(const AttentionModule& attn, const EncoderOutput& enc);
// Memory for example `row` of `enc` repeated `copies` times.
AttentionMemory replicate_memory(const AttentionModule& attn, const EncoderOutput& enc, int row,
                                 int copies);

struct AttentionResult {
  Tensor context;  // [B, Dv]
  Tensor weights;  // [T, B * H]; column b * H + h is head h of example b
};

// Per head h: score_t = v_h . tanh(W1_h k_t + W2_h q), softmax over t, context
// is the weighted sum of the head's slice of the projected values.
AttentionResult additive_attention(const AttentionModule& attn, const AttentionMemory& memory,
                                   const Tensor& query);

struct DecoderState {
  std::vector<Tensor> h;
  std::vector<Tensor> c;
  Tensor context;
};

DecoderState initial_state(const Seq2Seq& model, int batch);

struct StepOutput {
  Tensor features;  // [B, H + Dv], input of the output projection
  DecoderState state;
  Tensor weights;
};

// One input-feeding step: [embed(token); previous context] through the LSTM
// stack, then attention queried by the top layer.
StepOutput decoder_step(const Seq2Seq& model, const AttentionMemory& memory,
                        const DecoderState& state, std::span<const int> tokens);

Tensor output_logits(const Seq2Seq& model, const Tensor& features);

// Teacher-forced logits [L * B, V] for time-major prefixes (L * B ids, each
// column starting with bos). Pads may only trail.
Tensor decode_forward(const Seq2Seq& model, const AttentionMemory& memory,
                      std::span<const int> prefix, int batch,
                      std::vector<Tensor>* attention_weights = nullptr);

// Mean token cross-entropy of targets (without bos/eos) given the source.
Tensor sequence_loss(const Seq2Seq& model, const SourceBatch& source,
                     std::span<const text::TokenSequence* const> targets,
                     int encoder_first_layer = 0);

// Fresh encoder layers stacked above a pretrained speech encoder by default.
inline constexpr int kDefaultExtraLayers = 3;

// Pretrained speech encoder (frozen iff requested) plus `extra_layers` fresh
// trainable layers, with the translation model's attention and decoder.
Seq2Seq st_assemble(const Seq2Seq& asr, const Seq2Seq& mt, int extra_layers,
                    bool freeze_pretrained_encoder, std::mt19937_64& rng);

struct BeamOptions {
  int beam_width = 2;
  int max_len = 40;
};

struct Hypothesis {
  text::TokenSequence tokens;  // without bos/eos
  double log_prob = 0.0;
  bool finished = false;
};

// Feeds token tokens[r] to a copy of the state of previous row parents[r]
// and returns next-token log-probabilities for every new row.
using ExpandFn = std::function<std::vector<std::vector<double>>(std::span<const int> parents,
                                                                std::span<const int> tokens)>;

// Length-terminated beam search over an abstract scorer. Stops at max_len,
// when no hypothesis is live, or when no live one can beat the best ended
// one; pad and bos are never proposed.
Hypothesis beam_search_with(const ExpandFn& expand, int vocab, const BeamOptions& options);

// Beam search for example `row` of an encoded batch. Scores are summed token
// log-probabilities; ties prefer the lower token id.
Hypothesis beam_search(const Seq2Seq& model, const EncoderOutput& enc, int row,
                       const BeamOptions& options);

std::vector<text::TokenSequence> beam_decode(const Seq2Seq& model, const SourceBatch& source,
                                             const BeamOptions& options,
                                             int encoder_first_layer = 0);

}  // namespace stx::models
