// Copyright 2026 The Concierge Authors.
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

#ifndef CONCIERGE_INTENT_HPP_
#define CONCIERGE_INTENT_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "concierge/textproc.hpp"
#include "concierge/types.hpp"

namespace concierge::intent {

enum class PreBookLabel { kFlight, kHotel, kNone };

std::string_view to_string(PreBookLabel label);

struct PreBookIntent {
  PreBookLabel value = PreBookLabel::kNone;
  double confidence = 0.0;
};

struct PostBookIntent {
  PostBookLabel value = PostBookLabel::kUnknown;
  double confidence = 0.0;
};

// Cue-lexicon vote between flight and hotel words. Ties and no cues give
// kNone. Confidence is total cue hits over token count, capped at 1.
PreBookIntent classify_prebook(const textproc::TokenSequence& tokens);

// First intent, in fixed priority order, whose cue lexicon hits the tokens.
PostBookIntent classify_postbook(const textproc::TokenSequence& tokens);

enum class SpecialAction { kCovidInfo };

using KeywordTarget = std::variant<PostBookLabel, SpecialAction>;

std::string keyword_target_name(const KeywordTarget& target);
// Accepts any post-book label except "unknown", plus "covid_info".
std::optional<KeywordTarget> parse_keyword_target(std::string_view text);

struct KeywordRule {
  std::string keyword;  // normalized token or phrase
  KeywordTarget target;
};

// Exact contiguous token/phrase containment; first rule in order wins.
std::optional<KeywordTarget> keyword_match(
    const textproc::TokenSequence& tokens,
    const std::vector<KeywordRule>& rules);

// Labels accepted in annotated corpora, in report display order.
const std::vector<std::string>& taxonomy();
bool in_taxonomy(std::string_view label);
inline constexpr std::string_view kPreBookLabel = "pre_book";
inline constexpr std::string_view kUnintelligibleLabel = "unintelligible";

// Multinomial bag-of-words model with additive smoothing. Only integer
// counts are stored; log tables are derived so a reloaded model scores
// bit-identically to the trained one.
class LearnedModel {
 public:
  struct ClassCounts {
    std::uint64_t documents = 0;
    std::map<std::string, std::uint64_t> tokens;
  };

  // Throws std::invalid_argument when alpha <= 0, no classes are given, or a
  // class has no documents.
  LearnedModel(std::map<std::string, ClassCounts> counts, double alpha);

  const std::vector<std::string>& classes() const { return classes_; }
  const std::vector<std::string>& vocabulary() const { return vocabulary_; }
  const std::map<std::string, ClassCounts>& counts() const { return counts_; }
  double alpha() const { return alpha_; }

  double class_log_prior(std::size_t class_index) const {
    return log_prior_[class_index];
  }
  // nullopt for out-of-vocabulary tokens.
  std::optional<double> token_log_likelihood(std::size_t class_index,
                                             std::string_view token) const;

 private:
  std::map<std::string, ClassCounts> counts_;
  double alpha_;
  std::vector<std::string> classes_;
  std::vector<std::string> vocabulary_;
  std::map<std::string, std::size_t, std::less<>> vocabulary_index_;
  std::vector<double> log_prior_;
  std::vector<std::vector<double>> log_likelihood_;  // [class][vocab]
};

struct LabeledText {
  std::string text;
  std::string label;
};

LearnedModel train_learned(const std::vector<LabeledText>& corpus,
                           double alpha);

struct LearnedPrediction {
  std::string label;
  std::vector<std::pair<std::string, double>> scores;  // per class, sorted
};

// Highest score wins; equal scores go to the lexicographically smallest label.
std::string argmax_label(
    const std::vector<std::pair<std::string, double>>& scores);

LearnedPrediction classify_learned(const LearnedModel& model,
                                   const textproc::TokenSequence& tokens);

}  // namespace concierge::intent

#endif  // CONCIERGE_INTENT_HPP_
