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

#include "concierge/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "concierge/intent.hpp"
#include "concierge/textproc.hpp"

namespace concierge::eval {
namespace {

std::size_t taxonomy_rank(std::string_view label) {
  const auto& labels = intent::taxonomy();
  const auto it = std::find(labels.begin(), labels.end(), label);
  return static_cast<std::size_t>(it - labels.begin());
}

bool display_before(const std::string& a, const std::string& b) {
  const std::size_t ra = taxonomy_rank(a);
  const std::size_t rb = taxonomy_rank(b);
  if (ra != rb) return ra < rb;
  return a < b;
}

double safe_ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

// Column width in code points, so "–" pads like one character.
std::size_t display_width(std::string_view s) {
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) {
    return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
  }));
}

std::string pad_right(std::string s, std::size_t width) {
  const std::size_t w = display_width(s);
  if (w < width) s.append(width - w, ' ');
  return s;
}

std::string pad_left(std::string s, std::size_t width) {
  const std::size_t w = display_width(s);
  if (w < width) s.insert(0, width - w, ' ');
  return s;
}

// An empty denominator scores 0, matching ClassMetrics.
std::string percent_cell(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return "0%";
  return format_fixed(rounded_percent(num, den, 0), 0) + "%";
}

}  // namespace

double rounded_percent(std::uint64_t num, std::uint64_t den, int decimals) {
  if (den == 0) return 0.0;
  std::uint64_t scale = 100;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  const std::uint64_t units = (2 * num * scale + den) / (2 * den);
  return static_cast<double>(units) / static_cast<double>(scale / 100);
}

WerReport wer_from_totals(const kernels::EditTotals& totals) {
  WerReport report;
  report.pair_count = totals.pairs;
  report.total_ref_words = totals.reference_words;
  report.substitutions = totals.substitutions;
  report.deletions = totals.deletions;
  report.insertions = totals.insertions;
  report.wer = safe_ratio(
      totals.substitutions + totals.deletions + totals.insertions,
      totals.reference_words);
  return report;
}

WerReport wer_corpus(std::span<const TranscriptPair> pairs) {
  if (pairs.empty()) throw PreconditionError("no transcript pairs");
  const kernels::EditTotals totals = kernels::edit_totals(pairs);
  if (totals.reference_words == 0) {
    throw PreconditionError("every reference transcript is empty");
  }
  return wer_from_totals(totals);
}

std::string format_word_errors(std::uint64_t errors,
                               std::uint64_t occurrences) {
  std::string out = std::to_string(errors) + "/" + std::to_string(occurrences);
  if (occurrences == 0) return out + " (–)";
  return out + " (" + format_fixed(rounded_percent(errors, occurrences, 1), 1) +
         "%)";
}

std::vector<PerWordErrorReport> per_word_errors(
    std::span<const TranscriptPair> pairs,
    std::span<const std::string> target_words) {
  if (pairs.empty()) throw PreconditionError("no transcript pairs");
  std::vector<std::string> targets;
  for (const std::string& word : target_words) {
    textproc::TokenSequence tokens = textproc::tokenize(word);
    if (tokens.size() != 1) {
      throw PreconditionError("target '" + word + "' is not a single word");
    }
    targets.push_back(std::move(tokens.front()));
  }
  if (kernels::edit_totals(pairs).reference_words == 0) {
    throw PreconditionError("every reference transcript is empty");
  }
  const std::vector<kernels::WordTally> tallies =
      kernels::word_tallies(pairs, targets);

  std::vector<PerWordErrorReport> rows;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    PerWordErrorReport row;
    row.word = targets[i];
    row.errors = tallies[i].errors;
    row.occurrences = tallies[i].occurrences;
    if (row.occurrences > 0) {
      row.rate = rounded_percent(row.errors, row.occurrences, 1);
    }
    row.formatted = format_word_errors(row.errors, row.occurrences);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ClassMetrics> class_metrics(std::span<const std::string> gold,
                                        std::span<const std::string> predicted) {
  if (gold.size() != predicted.size()) {
    throw PreconditionError("gold and predicted label counts differ (" +
                            std::to_string(gold.size()) + " vs " +
                            std::to_string(predicted.size()) + ")");
  }
  if (gold.empty()) throw PreconditionError("no labels to score");

  std::map<std::string, ClassMetrics> by_label;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    ClassMetrics& g = by_label[gold[i]];
    ClassMetrics& p = by_label[predicted[i]];
    ++g.support;
    if (gold[i] == predicted[i]) {
      ++g.true_positives;
    } else {
      ++g.false_negatives;
      ++p.false_positives;
    }
  }
  std::vector<ClassMetrics> rows;
  for (auto& [label, m] : by_label) {
    m.label = label;
    m.precision = safe_ratio(m.true_positives, m.true_positives + m.false_positives);
    m.recall = safe_ratio(m.true_positives, m.true_positives + m.false_negatives);
    m.f1 = (m.precision + m.recall) > 0.0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    rows.push_back(std::move(m));
  }
  std::sort(rows.begin(), rows.end(),
            [](const ClassMetrics& a, const ClassMetrics& b) {
              return display_before(a.label, b.label);
            });
  return rows;
}

DistributionReport intent_distribution(std::span<const std::string> labels,
                                       const std::set<std::string>& exclude) {
  if (labels.empty()) throw PreconditionError("no labels");
  std::map<std::string, std::uint64_t> counts;
  DistributionReport report;
  for (const std::string& label : labels) {
    if (exclude.contains(label)) {
      ++report.excluded_count;
    } else {
      ++counts[label];
    }
  }
  if (counts.empty()) throw PreconditionError("every label is excluded");

  std::uint64_t included = 0;
  for (const auto& [label, n] : counts) included += n;
  for (const auto& [label, n] : counts) {
    report.rows.push_back({label, n, rounded_percent(n, included, 1)});
  }
  std::sort(report.rows.begin(), report.rows.end(),
            [](const DistributionRow& a, const DistributionRow& b) {
              return display_before(a.label, b.label);
            });
  if (!exclude.empty()) {
    std::string reason = "excluded labels:";
    for (const std::string& label : exclude) reason += " " + label;
    report.excluded_reason = std::move(reason);
  }
  return report;
}

double normal_upper_tail(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

ExperimentComparison compare_groups(GroupOutcome a, GroupOutcome b) {
  if (a.trials == 0 || b.trials == 0) {
    throw PreconditionError("both groups need at least one trial");
  }
  if (a.successes > a.trials || b.successes > b.trials) {
    throw PreconditionError("successes exceed trials");
  }
  ExperimentComparison result;
  result.group_a = a;
  result.group_b = b;
  const double na = static_cast<double>(a.trials);
  const double nb = static_cast<double>(b.trials);
  const double pooled =
      static_cast<double>(a.successes + b.successes) / (na + nb);
  if (a.successes + b.successes == 0 ||
      a.successes + b.successes == a.trials + b.trials) {
    result.z_statistic = 0.0;
    result.p_value = 1.0;
    result.significant_at_5pct = false;
    return result;
  }
  const double pa = static_cast<double>(a.successes) / na;
  const double pb = static_cast<double>(b.successes) / nb;
  const double se = std::sqrt(pooled * (1.0 - pooled) * (1.0 / na + 1.0 / nb));
  result.z_statistic = (pa - pb) / se;
  result.p_value = std::min(1.0, 2.0 * normal_upper_tail(std::fabs(result.z_statistic)));
  result.significant_at_5pct = result.p_value < 0.05;
  return result;
}

std::string taxonomy_label(const ActionDecision& decision) {
  switch (decision.kind()) {
    case ActionKind::kSearchHotels:
    case ActionKind::kSearchFlights:
    case ActionKind::kClarify:
      return std::string(intent::kPreBookLabel);
    case ActionKind::kOpenFaq:
      if (decision.faq_intent() && *decision.faq_intent() != PostBookLabel::kUnknown) {
        return std::string(to_string(*decision.faq_intent()));
      }
      break;
    case ActionKind::kHumanAgent:
      return std::string(to_string(PostBookLabel::kRequestHumanAgent));
    case ActionKind::kCovidInfo:
      return std::string(to_string(PostBookLabel::kOtherPostBook));
    case ActionKind::kGreeting:
      return std::string(to_string(PostBookLabel::kGreeting));
    case ActionKind::kUnintelligible:
      break;
  }
  return std::string(intent::kUnintelligibleLabel);
}

std::string render_wer(const WerReport& report, std::string_view title) {
  std::ostringstream out;
  if (!title.empty()) out << title << "\n";
  const std::uint64_t errors =
      report.substitutions + report.deletions + report.insertions;
  out << "WER " << format_fixed(100.0 * report.wer, 2) << "% [ " << errors
      << " / " << report.total_ref_words << ", " << report.insertions
      << " ins, " << report.deletions << " del, " << report.substitutions
      << " sub ] over " << report.pair_count << " pairs\n";
  return out.str();
}

std::string render_word_errors(std::span<const PerWordErrorReport> rows,
                               std::string_view column) {
  std::size_t word_width = std::string_view("Error word").size();
  for (const auto& row : rows) {
    word_width = std::max(word_width, display_width(row.word) + 2);
  }
  std::ostringstream out;
  out << pad_right("Error word", word_width) << " | " << column << "\n";
  out << std::string(word_width, '-') << "-+-"
      << std::string(std::max<std::size_t>(column.size(), 16), '-') << "\n";
  for (const auto& row : rows) {
    out << pad_right("\"" + row.word + "\"", word_width) << " | "
        << row.formatted << "\n";
  }
  return out.str();
}

std::string render_class_metrics(
    std::span<const std::pair<std::string, std::vector<ClassMetrics>>> models) {
  std::vector<std::string> labels;
  for (const auto& [name, rows] : models) {
    for (const ClassMetrics& m : rows) {
      if (std::find(labels.begin(), labels.end(), m.label) == labels.end()) {
        labels.push_back(m.label);
      }
    }
  }
  std::sort(labels.begin(), labels.end(), display_before);

  std::size_t label_width = std::string_view("Intent").size();
  for (const std::string& l : labels) {
    label_width = std::max(label_width, display_width(l));
  }
  constexpr std::size_t kCell = 5;
  const std::size_t group_width = 2 * kCell + 1;

  std::ostringstream out;
  out << pad_right("Intent", label_width);
  for (const auto& [name, rows] : models) {
    out << " | " << pad_right(name, group_width);
  }
  out << "\n" << std::string(label_width, ' ');
  for (std::size_t i = 0; i < models.size(); ++i) {
    out << " | " << pad_left("p", kCell) << " " << pad_left("r", kCell);
  }
  out << "\n" << std::string(label_width, '-');
  for (std::size_t i = 0; i < models.size(); ++i) {
    out << "-+-" << std::string(group_width, '-');
  }
  out << "\n";
  for (const std::string& label : labels) {
    out << pad_right(label, label_width);
    for (const auto& [name, rows] : models) {
      const auto it = std::find_if(rows.begin(), rows.end(),
                                   [&](const ClassMetrics& m) { return m.label == label; });
      std::string p = "–", r = "–";
      if (it != rows.end()) {
        p = percent_cell(it->true_positives, it->true_positives + it->false_positives);
        r = percent_cell(it->true_positives, it->true_positives + it->false_negatives);
      }
      out << " | " << pad_left(p, kCell) << " " << pad_left(r, kCell);
    }
    out << "\n";
  }
  return out.str();
}

std::string render_distribution(const DistributionReport& report) {
  std::size_t width = std::string_view("Intents").size();
  for (const auto& row : report.rows) width = std::max(width, row.label.size());
  std::ostringstream out;
  out << pad_right("Intents", width) << " | Prevalence\n";
  out << std::string(width, '-') << "-+-" << std::string(10, '-') << "\n";
  for (const auto& row : report.rows) {
    out << pad_right(row.label, width) << " | "
        << pad_left(format_fixed(row.percent, 1) + "%", 10) << "\n";
  }
  if (report.excluded_count > 0) {
    out << "(" << report.excluded_count << " rows excluded";
    if (!report.excluded_reason.empty()) out << "; " << report.excluded_reason;
    out << ")\n";
  }
  return out.str();
}

std::string render_comparison(const ExperimentComparison& c) {
  std::ostringstream out;
  auto group = [](const GroupOutcome& g) {
    return std::to_string(g.successes) + "/" + std::to_string(g.trials) + " (" +
           format_fixed(100.0 * safe_ratio(g.successes, g.trials), 2) + "%)";
  };
  out << "group a " << group(c.group_a) << " vs group b " << group(c.group_b)
      << ": " << (c.significant_at_5pct ? "significant" : "not significant")
      << " (z=" << format_fixed(c.z_statistic, 2) << "), p="
      << format_fixed(c.p_value, 4) << "\n";
  return out.str();
}

}  // namespace concierge::eval
