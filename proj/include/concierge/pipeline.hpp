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

#ifndef CONCIERGE_PIPELINE_HPP_
#define CONCIERGE_PIPELINE_HPP_

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "concierge/config.hpp"
#include "concierge/intent.hpp"
#include "concierge/ner.hpp"
#include "concierge/router.hpp"
#include "concierge/translation.hpp"
#include "concierge/types.hpp"
#include "concierge/vtt.hpp"

namespace concierge::pipeline {

// Rejected before any utterance runs: unknown backend names or resources a
// selected backend needs but the config does not provide.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Which classifier fills the intent stage.
enum class IntentArm { kComposite, kLearned };

std::string_view to_string(IntentArm arm);
std::optional<IntentArm> parse_intent_arm(std::string_view text);

// Loaded, immutable resources shared by all stage backends.
struct Resources {
  std::shared_ptr<const ner::Gazetteer> gazetteer;
  std::map<std::string, translation::Lexicon> lexicons;  // by primary subtag
  std::vector<intent::KeywordRule> keywords;
  std::shared_ptr<const vtt::ConfusionModel> confusion;
  std::set<std::string> hinted_words;
  std::shared_ptr<const vtt::ReplayCorpus> replay;
  std::shared_ptr<const intent::LearnedModel> learned;
};

// What flows between stages. Each stage reads what earlier stages wrote.
struct Annotations {
  std::string language;
  std::string text;
  std::vector<ner::ResolvedEntity> entities;
  router::RoutingInput routing;
  std::optional<ActionDecision> decision;
};

struct StageOutcome {
  StageStatus status = StageStatus::kOk;
  std::string input_snapshot;
  std::string output_snapshot;
};

// Uniform stage contract: read the annotations, add to them, report what
// happened. Throwing marks the stage failed; the pipeline decides how the
// run continues.
class StageBackend {
 public:
  virtual ~StageBackend() = default;
  virtual Stage stage() const = 0;
  virtual std::string_view name() const = 0;
  virtual StageOutcome process(const Utterance& utterance,
                               Annotations& annotations) const = 0;
};

// Builds the backend registered under `name` for `stage`; throws ConfigError
// for unknown names or missing resources.
std::unique_ptr<StageBackend> make_backend(Stage stage, std::string_view name,
                                           const PipelineConfig& config,
                                           const Resources& resources);

struct RunResult {
  ActionDecision decision;
  PipelineTrace trace;
};

// vtt -> translation -> ner -> intent -> route. Immutable after
// construction; run() may be called concurrently.
class Pipeline {
 public:
  // Loads every file the config references. Throws ConfigError or
  // io::LoadError.
  static Pipeline from_config(const PipelineConfig& config);

  Pipeline(PipelineConfig config, Resources resources);

  RunResult run(const Utterance& utterance,
                std::optional<IntentArm> arm = std::nullopt) const;

  const PipelineConfig& config() const { return config_; }
  const Resources& resources() const { return resources_; }
  IntentArm default_arm() const { return default_arm_; }
  bool has_arm(IntentArm arm) const;
  // Backend name per stage for the given arm.
  std::map<std::string, std::string> backend_names(IntentArm arm) const;

 private:
  PipelineConfig config_;
  Resources resources_;
  IntentArm default_arm_ = IntentArm::kComposite;
  std::unique_ptr<const StageBackend> vtt_;
  std::unique_ptr<const StageBackend> translation_;
  std::unique_ptr<const StageBackend> ner_;
  std::map<IntentArm, std::shared_ptr<const StageBackend>> intent_;
  std::unique_ptr<const StageBackend> route_;
};

}  // namespace concierge::pipeline

#endif  // CONCIERGE_PIPELINE_HPP_
