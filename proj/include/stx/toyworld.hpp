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

// A small bilingual spoken-language world: template sentence generators for
// a read and a conversational domain, a rule-based translation oracle, and a
// parametric multi-speaker formant synthesizer.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "stx/audio.hpp"

namespace stx::world {

enum class Domain { kRead, kConversational };
enum class SpeechSource { kReal, kTtsMulti, kTtsSingle };
enum class LabelSource { kNone, kOracle, kModelMt, kCascade };
enum class Task { kAsr, kMt, kSt };
enum class WordClass { kNoun, kAdjective, kDigit, kVerb, kFunction };

std::string to_string(Domain d);
std::string to_string(SpeechSource s);
std::string to_string(LabelSource s);
std::string to_string(Task t);
Domain domain_from_string(const std::string& s);
SpeechSource speech_source_from_string(const std::string& s);
LabelSource label_source_from_string(const std::string& s);
Task task_from_string(const std::string& s);

class LexiconError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct LexiconEntry {
  std::string word;
  WordClass cls;
  std::vector<std::string> target;  // digits expand to two tokens
  std::vector<int> phonemes;
};

const std::vector<LexiconEntry>& lexicon();
// nullptr for out-of-lexicon words.
const LexiconEntry* lookup(const std::string& word);

struct Phoneme {
  double f1;
  double f2;
  double duration;  // seconds, before rate scaling
};
inline constexpr int kNumPhonemes = 12;
const std::vector<Phoneme>& phoneme_inventory();

// Speaker box: pitch [0.7, 1.4], formant shift [0.85, 1.15], rate [0.8, 1.25].
struct SpeakerEmbedding {
  double pitch = 1.0;
  double formant = 1.0;
  double rate = 1.0;

  bool operator==(const SpeakerEmbedding&) const = default;
};

inline constexpr double kPitchMin = 0.7, kPitchMax = 1.4;
inline constexpr double kFormantMin = 0.85, kFormantMax = 1.15;
inline constexpr double kRateMin = 0.8, kRateMax = 1.25;
inline constexpr double kBaseF0 = 110.0;

SpeakerEmbedding sample_speaker(std::mt19937_64& rng);
// The voice used for every single-speaker TTS utterance.
SpeakerEmbedding single_speaker();
bool in_speaker_box(const SpeakerEmbedding& s);

std::string sample_sentence(Domain domain, std::mt19937_64& rng);
// True when the sentence is generated by one of the domain's templates.
bool parses(const std::string& sentence, Domain domain);
// Distinct content words each domain's templates can produce.
std::vector<std::string> domain_content_words(Domain domain);

// Word-by-word lexicon mapping; an adjective directly followed by a noun
// swaps order and each digit expands to two target tokens. Punctuation stays
// attached to its source position.
std::string oracle_translate(const std::string& source);

struct Utterance {
  audio::Waveform waveform;
  std::string transcript;
  std::optional<std::string> translation;
  SpeakerEmbedding speaker;
  SpeechSource speech = SpeechSource::kReal;
  LabelSource label = LabelSource::kNone;
  Domain domain = Domain::kRead;
};

struct TextPair {
  std::string source;
  std::string target;
  Domain domain = Domain::kRead;
  LabelSource label = LabelSource::kOracle;
};

struct SynthesisTrace {
  std::vector<double> phoneme_durations;  // rendered, seconds
  std::vector<double> phoneme_f0;
};

// Renders text as speech. `real` adds per-phoneme duration and pitch jitter
// (+-10%, +-15% in the conversational domain); the tts modes are jitter-free
// and smooth the harmonic envelope across frequency. tts_single ignores
// `speaker`.
Utterance synth_speech(const std::string& text, const SpeakerEmbedding& speaker,
                       SpeechSource mode, Domain domain, std::mt19937_64& rng,
                       SynthesisTrace* trace = nullptr);

struct Corpus {
  Task task = Task::kSt;
  std::string name;
  std::string seed_fingerprint;
  std::vector<Utterance> utterances;  // ASR and ST
  std::vector<TextPair> pairs;        // MT

  std::size_t size() const { return task == Task::kMt ? pairs.size() : utterances.size(); }
  // Task-required fields present on every example.
  void validate() const;
};

struct ScaleConfig {
  int mt_size = 5000;
  int asr_size = 3000;
  int st_size = 500;
  int eval_in_size = 200;
  int eval_out_size = 200;
  audio::AugmentConfig augment;

  void validate() const;
};

struct WorldCorpora {
  Corpus mt_set;
  Corpus asr_set;
  Corpus st_set;
  Corpus eval_in;
  Corpus eval_out;
};

WorldCorpora build_corpora(const ScaleConfig& scale, std::uint64_t seed);

// Independent stream for (seed, stream tag, example index).
std::mt19937_64 derive_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0);

// Directory layout: manifest.jsonl plus wav/<index>.{f32,json} for speech.
void save_corpus(const Corpus& corpus, const std::filesystem::path& dir);
Corpus load_corpus(const std::filesystem::path& dir);

}  // namespace stx::world
