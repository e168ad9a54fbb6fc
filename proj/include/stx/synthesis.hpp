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

// Weakly supervised data pipelines and the cascade baseline. Every producer
// takes its input by const reference and returns a new corpus; provenance of
// each synthesized field is carried on the utterance (speech source and
// label source).

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "stx/models.hpp"
#include "stx/text.hpp"
#include "stx/toyworld.hpp"
#include "stx/training.hpp"

namespace stx::synthesis {

using world::Corpus;

// Source sentences in, target sentences out, same order.
using Translator = std::function<std::vector<std::string>(std::span<const std::string>)>;
// Speech examples in, transcripts out, same order.
using Transcriber = std::function<std::vector<std::string>(const training::TrainingSet&)>;

Translator oracle_translator();
// Beam decoding with a trained translation model; the model must be MT and
// share the wordpiece vocabulary.
Translator model_translator(const models::Seq2Seq& mt, const text::WordpieceModel& wpm,
                            models::BeamOptions beam = {});
Transcriber model_transcriber(const models::Seq2Seq& asr, const text::WordpieceModel& wpm,
                              models::BeamOptions beam = {});

// Speech for every source sentence of an MT corpus, one fresh speaker per
// example (multi) or the fixed voice (single), augmented like real training
// speech; the target becomes the translation. Example i draws from an rng
// derived from (seed, i).
Corpus tts_synthesize_corpus(const Corpus& mt_corpus, world::SpeechSource mode,
                             const audio::AugmentConfig& augment, std::uint64_t seed,
                             std::string name = {});

// Keeps the speech of a recognition corpus and adds translations of its
// transcripts. `label` names the translator (model_mt or oracle).
Corpus mt_synthesize_corpus(const Corpus& asr_corpus, const Translator& translator,
                            world::LabelSource label = world::LabelSource::kModelMt,
                            std::string name = {});

struct CascadeOutput {
  std::vector<std::string> transcripts;
  std::vector<std::string> translations;
};

CascadeOutput cascade_translate(const training::TrainingSet& speech, const Transcriber& asr,
                                const Translator& mt);

enum class UnlabeledKind { kText, kSpeech };

struct LabelingTools {
  Translator translator;       // both kinds
  world::LabelSource translator_label = world::LabelSource::kOracle;
  world::SpeechSource tts_mode = world::SpeechSource::kTtsMulti;  // text kind
  audio::AugmentConfig augment;                                   // text kind
  Transcriber transcriber;                                        // speech kind
  const training::Featurizer* featurizer = nullptr;               // speech kind
};

// Text kind: sources of an MT corpus (targets ignored) become TTS speech with
// translated targets. Speech kind: utterances of a recognition corpus
// (transcripts ignored) get cascade translations.
Corpus label_unlabeled(UnlabeledKind kind, const Corpus& unlabeled, const LabelingTools& tools,
                       std::uint64_t seed, std::string name = {});

}  // namespace stx::synthesis
