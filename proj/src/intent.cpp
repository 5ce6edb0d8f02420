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

#include "concierge/intent.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <stdexcept>

namespace concierge::intent {
namespace {

constexpr std::array<std::string_view, 4> kFlightCues = {"flight", "fly",
                                                         "flights", "plane"};
constexpr std::array<std::string_view, 5> kHotelCues = {
    "hotel", "room", "stay", "apartment", "accommodation"};

struct PostBookCues {
  PostBookLabel label;
  std::vector<std::string_view> cues;
};

// Priority order: the first row with a hit wins.
const std::vector<PostBookCues>& postbook_cues() {
  static const std::vector<PostBookCues> rows = {
      {PostBookLabel::kCancelBooking, {"cancel", "cancellation"}},
      {PostBookLabel::kChangeBooking, {"change", "amend", "modify"}},
      {PostBookLabel::kPayments,
       {"pay", "payment", "refund", "charge", "credit"}},
      {PostBookLabel::kCheckBookingStatus, {"status", "confirmation"}},
      {PostBookLabel::kRequestHumanAgent, {"agent", "human", "representative"}},
      {PostBookLabel::kGreeting, {"hi", "hello", "hey"}},
  };
  return rows;
}

template <typename Cues>
std::size_t count_hits(const textproc::TokenSequence& tokens, const Cues& cues) {
  return static_cast<std::size_t>(
      std::count_if(tokens.begin(), tokens.end(), [&](const std::string& t) {
        return std::find(cues.begin(), cues.end(), t) != cues.end();
      }));
}

double ratio(std::size_t hits, std::size_t total) {
  if (total == 0) return 0.0;
  return std::min(1.0, static_cast<double>(hits) / static_cast<double>(total));
}

}  // namespace

std::string_view to_string(PreBookLabel label) {
  switch (label) {
    case PreBookLabel::kFlight: return "flight";
    case PreBookLabel::kHotel: return "hotel";
    case PreBookLabel::kNone: return "none";
  }
  return "?";
}

PreBookIntent classify_prebook(const textproc::TokenSequence& tokens) {
  const std::size_t flight = count_hits(tokens, kFlightCues);
  const std::size_t hotel = count_hits(tokens, kHotelCues);
  PreBookIntent result;
  result.confidence = ratio(flight + hotel, tokens.size());
  if (flight > hotel) {
    result.value = PreBookLabel::kFlight;
  } else if (hotel > flight) {
    result.value = PreBookLabel::kHotel;
  }
  return result;
}

PostBookIntent classify_postbook(const textproc::TokenSequence& tokens) {
  for (const PostBookCues& row : postbook_cues()) {
    const std::size_t hits = count_hits(tokens, row.cues);
    if (hits > 0) return {row.label, ratio(hits, tokens.size())};
  }
  return {};
}

std::string keyword_target_name(const KeywordTarget& target) {
  if (std::holds_alternative<SpecialAction>(target)) return "covid_info";
  return std::string(to_string(std::get<PostBookLabel>(target)));
}

std::optional<KeywordTarget> parse_keyword_target(std::string_view text) {
  if (text == "covid_info") return KeywordTarget{SpecialAction::kCovidInfo};
  const auto label = parse_postbook_label(text);
  if (!label || *label == PostBookLabel::kUnknown) return std::nullopt;
  return KeywordTarget{*label};
}

std::optional<KeywordTarget> keyword_match(
    const textproc::TokenSequence& tokens,
    const std::vector<KeywordRule>& rules) {
  for (const KeywordRule& rule : rules) {
    const textproc::TokenSequence phrase = textproc::tokenize(rule.keyword);
    if (phrase.empty() || phrase.size() > tokens.size()) continue;
    const auto hit = std::search(tokens.begin(), tokens.end(), phrase.begin(),
                                 phrase.end());
    if (hit != tokens.end()) return rule.target;
  }
  return std::nullopt;
}

const std::vector<std::string>& taxonomy() {
  static const std::vector<std::string> labels = {
      std::string(kPreBookLabel),
      "request_human_agent",
      "check_booking_status",
      "payments",
      "change_booking",
      "cancel_booking",
      "other_post_book",
      "greeting",
      std::string(kUnintelligibleLabel),
  };
  return labels;
}

bool in_taxonomy(std::string_view label) {
  const auto& labels = taxonomy();
  return std::find(labels.begin(), labels.end(), label) != labels.end();
}

LearnedModel::LearnedModel(std::map<std::string, ClassCounts> counts,
                           double alpha)
    : counts_(std::move(counts)), alpha_(alpha) {
  if (!(alpha_ > 0.0) || !std::isfinite(alpha_)) {
    throw std::invalid_argument("smoothing alpha must be positive");
  }
  if (counts_.empty()) throw std::invalid_argument("model has no classes");

  std::set<std::string> vocabulary;
  std::uint64_t total_documents = 0;
  for (const auto& [label, c] : counts_) {
    if (label.empty()) throw std::invalid_argument("empty class label");
    if (c.documents == 0) {
      throw std::invalid_argument("class '" + label + "' has no documents");
    }
    total_documents += c.documents;
    classes_.push_back(label);
    for (const auto& [token, n] : c.tokens) vocabulary.insert(token);
  }
  vocabulary_.assign(vocabulary.begin(), vocabulary.end());
  for (std::size_t i = 0; i < vocabulary_.size(); ++i) {
    vocabulary_index_.emplace(vocabulary_[i], i);
  }

  const double vocab_size = static_cast<double>(vocabulary_.size());
  for (const auto& [label, c] : counts_) {
    log_prior_.push_back(std::log(static_cast<double>(c.documents)) -
                         std::log(static_cast<double>(total_documents)));
    std::uint64_t class_tokens = 0;
    for (const auto& [token, n] : c.tokens) class_tokens += n;
    const double denominator =
        std::log(static_cast<double>(class_tokens) + alpha_ * vocab_size);
    std::vector<double> row(vocabulary_.size());
    for (std::size_t v = 0; v < vocabulary_.size(); ++v) {
      const auto it = c.tokens.find(vocabulary_[v]);
      const double n = it == c.tokens.end() ? 0.0 : static_cast<double>(it->second);
      row[v] = std::log(n + alpha_) - denominator;
    }
    log_likelihood_.push_back(std::move(row));
  }
}

std::optional<double> LearnedModel::token_log_likelihood(
    std::size_t class_index, std::string_view token) const {
  const auto it = vocabulary_index_.find(token);
  if (it == vocabulary_index_.end()) return std::nullopt;
  return log_likelihood_[class_index][it->second];
}

LearnedModel train_learned(const std::vector<LabeledText>& corpus,
                           double alpha) {
  if (corpus.empty()) throw std::invalid_argument("training corpus is empty");
  std::map<std::string, LearnedModel::ClassCounts> counts;
  for (const LabeledText& doc : corpus) {
    if (doc.label.empty()) throw std::invalid_argument("empty training label");
    LearnedModel::ClassCounts& c = counts[doc.label];
    ++c.documents;
    for (const std::string& token : textproc::tokenize(doc.text)) {
      ++c.tokens[token];
    }
  }
  return LearnedModel(std::move(counts), alpha);
}

std::string argmax_label(
    const std::vector<std::pair<std::string, double>>& scores) {
  const std::pair<std::string, double>* best = nullptr;
  for (const auto& entry : scores) {
    if (best == nullptr || entry.second > best->second ||
        (entry.second == best->second && entry.first < best->first)) {
      best = &entry;
    }
  }
  return best == nullptr ? std::string() : best->first;
}

LearnedPrediction classify_learned(const LearnedModel& model,
                                   const textproc::TokenSequence& tokens) {
  LearnedPrediction prediction;
  const auto& classes = model.classes();
  prediction.scores.reserve(classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c) {
    double score = model.class_log_prior(c);
    for (const std::string& token : tokens) {
      if (const auto ll = model.token_log_likelihood(c, token)) score += *ll;
    }
    prediction.scores.emplace_back(classes[c], score);
  }
  prediction.label = argmax_label(prediction.scores);
  return prediction;
}

}  // namespace concierge::intent
