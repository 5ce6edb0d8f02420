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

#ifndef CONCIERGE_EVAL_HPP_
#define CONCIERGE_EVAL_HPP_

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "concierge/kernels.hpp"
#include "concierge/types.hpp"

namespace concierge::eval {

using kernels::TranscriptPair;

// An evaluation input that is well-formed but cannot be scored (no pairs,
// all-empty references, mismatched label lists, zero trials).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct WerReport {
  std::uint64_t pair_count = 0;
  std::uint64_t total_ref_words = 0;
  std::uint64_t substitutions = 0;
  std::uint64_t deletions = 0;
  std::uint64_t insertions = 0;
  double wer = 0.0;

  friend bool operator==(const WerReport&, const WerReport&) = default;
};

// Micro-averaged: total edits over total reference words.
WerReport wer_corpus(std::span<const TranscriptPair> pairs);
WerReport wer_from_totals(const kernels::EditTotals& totals);

struct PerWordErrorReport {
  std::string word;
  std::uint64_t errors = 0;
  std::uint64_t occurrences = 0;
  std::optional<double> rate;  // percent, one decimal; empty when unseen
  std::string formatted;       // "E/O (R%)"

  friend bool operator==(const PerWordErrorReport&,
                         const PerWordErrorReport&) = default;
};

// "31/415 (7.5%)"; "0/0 (–)" when the word never occurs.
std::string format_word_errors(std::uint64_t errors, std::uint64_t occurrences);

std::vector<PerWordErrorReport> per_word_errors(
    std::span<const TranscriptPair> pairs,
    std::span<const std::string> target_words);

struct ClassMetrics {
  std::string label;
  std::uint64_t true_positives = 0;
  std::uint64_t false_positives = 0;
  std::uint64_t false_negatives = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::uint64_t support = 0;  // gold occurrences

  friend bool operator==(const ClassMetrics&, const ClassMetrics&) = default;
};

// One row per label seen in either list, in taxonomy display order.
std::vector<ClassMetrics> class_metrics(std::span<const std::string> gold,
                                        std::span<const std::string> predicted);

struct DistributionRow {
  std::string label;
  std::uint64_t count = 0;
  double percent = 0.0;  // one decimal

  friend bool operator==(const DistributionRow&, const DistributionRow&) = default;
};

struct DistributionReport {
  std::vector<DistributionRow> rows;
  std::uint64_t excluded_count = 0;
  std::string excluded_reason;

  friend bool operator==(const DistributionReport&,
                         const DistributionReport&) = default;
};

DistributionReport intent_distribution(std::span<const std::string> labels,
                                       const std::set<std::string>& exclude);

struct GroupOutcome {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  friend bool operator==(const GroupOutcome&, const GroupOutcome&) = default;
};

struct ExperimentComparison {
  GroupOutcome group_a;
  GroupOutcome group_b;
  double z_statistic = 0.0;
  double p_value = 1.0;
  bool significant_at_5pct = false;

  friend bool operator==(const ExperimentComparison&,
                         const ExperimentComparison&) = default;
};

// Pooled two-proportion z-test, two-sided, no continuity correction.
// z is positive when group a has the higher success rate.
ExperimentComparison compare_groups(GroupOutcome a, GroupOutcome b);

// Standard normal upper tail, P(Z > x).
double normal_upper_tail(double x);

// Half-up rounding of num/den to the given number of decimals of a percent.
double rounded_percent(std::uint64_t num, std::uint64_t den, int decimals);

// Annotation label an action stands for, so pipeline output can be scored
// against a labeled-intent corpus. Search and clarify actions count as
// pre_book; CovidInfo counts as other_post_book.
std::string taxonomy_label(const ActionDecision& decision);

// Plain-text renderings, laid out like the published tables.
std::string render_wer(const WerReport& report, std::string_view title = {});
std::string render_word_errors(std::span<const PerWordErrorReport> rows,
                               std::string_view column = "errors");
std::string render_class_metrics(
    std::span<const std::pair<std::string, std::vector<ClassMetrics>>> models);
std::string render_distribution(const DistributionReport& report);
std::string render_comparison(const ExperimentComparison& comparison);

}  // namespace concierge::eval

#endif  // CONCIERGE_EVAL_HPP_
