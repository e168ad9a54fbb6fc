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

// Shared subword vocabulary and the two evaluation metrics.

#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace stx::text {

inline constexpr int kPad = 0;
inline constexpr int kBos = 1;
inline constexpr int kEos = 2;
inline constexpr int kUnk = 3;

using TokenSequence = std::vector<int>;

// Subword vocabulary over bytes. A word-initial piece carries the leading
// space of its word (every word except the first in a line), so decoding is
// plain concatenation.
class WordpieceModel {
 public:
  WordpieceModel() = default;
  explicit WordpieceModel(std::vector<std::string> vocabulary);

  const std::vector<std::string>& vocabulary() const { return vocab_; }
  int size() const { return static_cast<int>(vocab_.size()); }
  int id(const std::string& piece) const;  // kUnk when absent
  bool contains(const std::string& piece) const { return index_.contains(piece); }

  // Greedy longest-match-first per pre-tokenized chunk.
  TokenSequence encode(const std::string& text) const;
  std::string decode(std::span<const int> ids) const;

  void save(const std::filesystem::path& path) const;
  static WordpieceModel load(const std::filesystem::path& path);

 private:
  std::vector<std::string> vocab_;
  std::unordered_map<std::string, int> index_;
  std::size_t longest_ = 1;
};

// Splits into chunks of an optional single leading space plus non-space
// characters; stray spaces become single-space chunks.
std::vector<std::string> pretokenize(const std::string& text);

// Greedy pair merges over byte symbols until vocab_size entries exist or no
// pair occurs at least twice. Ties on frequency go to the lexicographically
// smallest (left, right) pair.
WordpieceModel train_wordpiece(std::span<const std::string> corpus, int vocab_size);

std::vector<std::string> split_words(const std::string& line);

struct BleuStats {
  std::array<long, 4> matches{};
  std::array<long, 4> totals{};
  long hyp_length = 0;
  long ref_length = 0;
};

BleuStats bleu_stats(std::span<const std::string> hypotheses,
                     std::span<const std::string> references);
double bleu_from_stats(const BleuStats& stats);

// Corpus BLEU-4, brevity penalty, no smoothing, scaled to [0, 100]. Any
// zero n-gram precision (including no n-grams of that order) scores 0.
double bleu(std::span<const std::string> hypotheses, std::span<const std::string> references);

enum class Normalization { kVerbatim, kLowerNoPunct };

std::string normalize(const std::string& line, Normalization mode);
int edit_distance(std::span<const std::string> a, std::span<const std::string> b);

// Word edit distance over reference length.
double wer(const std::string& hypothesis, const std::string& reference, Normalization mode);

// Corpus WER: summed edits over summed reference words.
double corpus_wer(std::span<const std::string> hypotheses, std::span<const std::string> references,
                  Normalization mode);

}  // namespace stx::text
