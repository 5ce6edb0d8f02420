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

#ifndef CONCIERGE_JSON_CODEC_HPP_
#define CONCIERGE_JSON_CODEC_HPP_

// JSON encodings shared by the CLI --json output and the HTTP service.
// Every from_json accepts exactly what the matching to_json produces and
// throws std::invalid_argument otherwise.

#include <json.hpp>

#include "concierge/eval.hpp"
#include "concierge/types.hpp"

namespace concierge::codec {

using nlohmann::json;

json to_json(const ActionDecision& decision);
ActionDecision decision_from_json(const json& value);

json to_json(const StageRecord& record);
StageRecord stage_record_from_json(const json& value);

json to_json(const PipelineTrace& trace);
PipelineTrace trace_from_json(const json& value);

json to_json(const eval::WerReport& report);
eval::WerReport wer_report_from_json(const json& value);

json to_json(const eval::PerWordErrorReport& report);
eval::PerWordErrorReport word_errors_from_json(const json& value);

json to_json(const eval::ClassMetrics& metrics);
eval::ClassMetrics class_metrics_from_json(const json& value);

json to_json(const eval::DistributionReport& report);
eval::DistributionReport distribution_from_json(const json& value);

json to_json(const eval::ExperimentComparison& comparison);
eval::ExperimentComparison comparison_from_json(const json& value);

// Compact one-line rendering used for trace snapshots.
std::string snapshot(const json& value);

}  // namespace concierge::codec

#endif  // CONCIERGE_JSON_CODEC_HPP_
