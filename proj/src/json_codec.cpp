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

#include "concierge/json_codec.hpp"

#include <set>
#include <stdexcept>

namespace concierge::codec {
namespace {

[[noreturn]] void bad(const std::string& what) {
  throw std::invalid_argument(what);
}

const json& field(const json& object, const char* key) {
  if (!object.is_object()) bad("expected a JSON object");
  const auto it = object.find(key);
  if (it == object.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

std::string string_field(const json& object, const char* key) {
  const json& v = field(object, key);
  if (!v.is_string()) bad(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::uint64_t count_field(const json& object, const char* key) {
  const json& v = field(object, key);
  if (!v.is_number_unsigned()) {
    bad(std::string("field '") + key + "' must be a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

double number_field(const json& object, const char* key) {
  const json& v = field(object, key);
  if (!v.is_number()) bad(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

void only_keys(const json& object, std::initializer_list<const char*> keys) {
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [key, value] : object.items()) {
    if (!allowed.contains(key)) bad("unknown field '" + key + "'");
  }
}

}  // namespace

json to_json(const ActionDecision& d) {
  json out{{"kind", to_string(d.kind())}};
  if (d.destination()) out["destination"] = *d.destination();
  if (d.origin()) out["origin"] = *d.origin();
  if (d.faq_intent()) out["faq_intent"] = to_string(*d.faq_intent());
  if (d.missing_slot()) out["missing_slot"] = to_string(*d.missing_slot());
  return out;
}

ActionDecision decision_from_json(const json& value) {
  only_keys(value, {"kind", "destination", "origin", "faq_intent", "missing_slot"});
  const auto kind = parse_action_kind(string_field(value, "kind"));
  if (!kind) bad("unknown action kind");
  auto opt = [&](const char* key) -> std::optional<std::string> {
    if (!value.contains(key)) return std::nullopt;
    return string_field(value, key);
  };
  const auto destination = opt("destination");
  const auto origin = opt("origin");
  const auto faq = opt("faq_intent");
  const auto slot = opt("missing_slot");
  ActionDecision decision = ActionDecision::unintelligible();
  try {
    switch (*kind) {
      case ActionKind::kSearchHotels:
        decision = ActionDecision::search_hotels(destination.value_or(""));
        break;
      case ActionKind::kSearchFlights:
        decision = ActionDecision::search_flights(destination.value_or(""), origin);
        break;
      case ActionKind::kOpenFaq: {
        const auto label = faq ? parse_postbook_label(*faq) : std::nullopt;
        if (!label) bad("OpenFaq needs a known faq_intent");
        decision = ActionDecision::open_faq(*label);
        break;
      }
      case ActionKind::kClarify: {
        const auto s = slot ? parse_slot(*slot) : std::nullopt;
        if (!s) bad("Clarify needs a missing_slot");
        decision = ActionDecision::clarify(*s);
        break;
      }
      case ActionKind::kHumanAgent:
        decision = ActionDecision::human_agent();
        break;
      case ActionKind::kCovidInfo:
        decision = ActionDecision::covid_info();
        break;
      case ActionKind::kGreeting:
        decision = ActionDecision::greeting();
        break;
      case ActionKind::kUnintelligible:
        break;
    }
  } catch (const InvalidDecision& e) {
    bad(e.what());
  }
  // Reject slots the kind does not carry.
  if (to_json(decision) != value) bad("decision carries slots its kind forbids");
  return decision;
}

json to_json(const StageRecord& r) {
  return json{{"stage", to_string(r.stage)},
              {"input", r.input_snapshot},
              {"output", r.output_snapshot},
              {"status", to_string(r.status)},
              {"duration_ms", r.duration_ms}};
}

StageRecord stage_record_from_json(const json& value) {
  only_keys(value, {"stage", "input", "output", "status", "duration_ms"});
  StageRecord r;
  const auto stage = parse_stage(string_field(value, "stage"));
  const auto status = parse_stage_status(string_field(value, "status"));
  if (!stage) bad("unknown stage");
  if (!status) bad("unknown stage status");
  r.stage = *stage;
  r.status = *status;
  r.input_snapshot = string_field(value, "input");
  r.output_snapshot = string_field(value, "output");
  r.duration_ms = number_field(value, "duration_ms");
  if (r.duration_ms < 0.0) bad("negative stage duration");
  return r;
}

json to_json(const PipelineTrace& trace) {
  json records = json::array();
  for (const StageRecord& r : trace.records) records.push_back(to_json(r));
  return json{{"utterance_id", trace.utterance_id},
              {"records", records},
              {"decision", to_json(trace.decision)}};
}

PipelineTrace trace_from_json(const json& value) {
  only_keys(value, {"utterance_id", "records", "decision"});
  PipelineTrace trace;
  trace.utterance_id = string_field(value, "utterance_id");
  const json& records = field(value, "records");
  if (!records.is_array()) bad("'records' must be an array");
  for (const json& r : records) trace.records.push_back(stage_record_from_json(r));
  trace.decision = decision_from_json(field(value, "decision"));
  return trace;
}

json to_json(const eval::WerReport& r) {
  return json{{"pair_count", r.pair_count},
              {"total_ref_words", r.total_ref_words},
              {"substitutions", r.substitutions},
              {"deletions", r.deletions},
              {"insertions", r.insertions},
              {"wer", r.wer}};
}

eval::WerReport wer_report_from_json(const json& value) {
  only_keys(value, {"pair_count", "total_ref_words", "substitutions",
                    "deletions", "insertions", "wer"});
  eval::WerReport r;
  r.pair_count = count_field(value, "pair_count");
  r.total_ref_words = count_field(value, "total_ref_words");
  r.substitutions = count_field(value, "substitutions");
  r.deletions = count_field(value, "deletions");
  r.insertions = count_field(value, "insertions");
  r.wer = number_field(value, "wer");
  return r;
}

json to_json(const eval::PerWordErrorReport& r) {
  json out{{"word", r.word},
           {"errors", r.errors},
           {"occurrences", r.occurrences},
           {"rate", nullptr},
           {"formatted", r.formatted}};
  if (r.rate) out["rate"] = *r.rate;
  return out;
}

eval::PerWordErrorReport word_errors_from_json(const json& value) {
  only_keys(value, {"word", "errors", "occurrences", "rate", "formatted"});
  eval::PerWordErrorReport r;
  r.word = string_field(value, "word");
  r.errors = count_field(value, "errors");
  r.occurrences = count_field(value, "occurrences");
  if (!field(value, "rate").is_null()) r.rate = number_field(value, "rate");
  r.formatted = string_field(value, "formatted");
  if (r.errors > r.occurrences) bad("errors exceed occurrences");
  return r;
}

json to_json(const eval::ClassMetrics& m) {
  return json{{"label", m.label},
              {"true_positives", m.true_positives},
              {"false_positives", m.false_positives},
              {"false_negatives", m.false_negatives},
              {"precision", m.precision},
              {"recall", m.recall},
              {"f1", m.f1},
              {"support", m.support}};
}

eval::ClassMetrics class_metrics_from_json(const json& value) {
  only_keys(value, {"label", "true_positives", "false_positives",
                    "false_negatives", "precision", "recall", "f1", "support"});
  eval::ClassMetrics m;
  m.label = string_field(value, "label");
  m.true_positives = count_field(value, "true_positives");
  m.false_positives = count_field(value, "false_positives");
  m.false_negatives = count_field(value, "false_negatives");
  m.precision = number_field(value, "precision");
  m.recall = number_field(value, "recall");
  m.f1 = number_field(value, "f1");
  m.support = count_field(value, "support");
  return m;
}

json to_json(const eval::DistributionReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back(
        json{{"label", row.label}, {"count", row.count}, {"percent", row.percent}});
  }
  return json{{"rows", rows},
              {"excluded_count", r.excluded_count},
              {"excluded_reason", r.excluded_reason}};
}

eval::DistributionReport distribution_from_json(const json& value) {
  only_keys(value, {"rows", "excluded_count", "excluded_reason"});
  eval::DistributionReport r;
  const json& rows = field(value, "rows");
  if (!rows.is_array()) bad("'rows' must be an array");
  for (const json& row : rows) {
    only_keys(row, {"label", "count", "percent"});
    r.rows.push_back({string_field(row, "label"), count_field(row, "count"),
                      number_field(row, "percent")});
  }
  r.excluded_count = count_field(value, "excluded_count");
  r.excluded_reason = string_field(value, "excluded_reason");
  return r;
}

json to_json(const eval::ExperimentComparison& c) {
  return json{
      {"group_a", {{"successes", c.group_a.successes}, {"trials", c.group_a.trials}}},
      {"group_b", {{"successes", c.group_b.successes}, {"trials", c.group_b.trials}}},
      {"z_statistic", c.z_statistic},
      {"p_value", c.p_value},
      {"significant_at_5pct", c.significant_at_5pct}};
}

eval::ExperimentComparison comparison_from_json(const json& value) {
  only_keys(value, {"group_a", "group_b", "z_statistic", "p_value",
                    "significant_at_5pct"});
  auto group = [](const json& g) {
    only_keys(g, {"successes", "trials"});
    eval::GroupOutcome out{count_field(g, "successes"), count_field(g, "trials")};
    if (out.successes > out.trials) bad("successes exceed trials");
    return out;
  };
  eval::ExperimentComparison c;
  c.group_a = group(field(value, "group_a"));
  c.group_b = group(field(value, "group_b"));
  c.z_statistic = number_field(value, "z_statistic");
  c.p_value = number_field(value, "p_value");
  const json& sig = field(value, "significant_at_5pct");
  if (!sig.is_boolean()) bad("'significant_at_5pct' must be a boolean");
  c.significant_at_5pct = sig.get<bool>();
  if (c.p_value < 0.0 || c.p_value > 1.0) bad("p_value outside [0, 1]");
  return c;
}

std::string snapshot(const json& value) {
  return cap_snapshot(value.is_string() ? value.get<std::string>()
                                        : value.dump(-1, ' ', false,
                                                     json::error_handler_t::replace));
}

}  // namespace concierge::codec
