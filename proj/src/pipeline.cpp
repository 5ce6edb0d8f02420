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

#include "concierge/pipeline.hpp"

#include <chrono>
#include <cstdint>
#include <exception>

#include <json.hpp>

#include "concierge/corpus_io.hpp"
#include "concierge/json_codec.hpp"
#include "concierge/textproc.hpp"

namespace concierge::pipeline {
namespace {

using nlohmann::json;

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

bool blank(std::string_view text) { return textproc::tokenize(text).empty(); }

// --- vtt ------------------------------------------------------------------

class PassthroughVtt final : public StageBackend {
 public:
  Stage stage() const override { return Stage::kVtt; }
  std::string_view name() const override { return "passthrough"; }
  StageOutcome process(const Utterance& u, Annotations& a) const override {
    if (u.replay_ref) {
      throw std::runtime_error("passthrough transcription cannot replay '" +
                               *u.replay_ref + "'");
    }
    a.text = u.text;
    return {StageStatus::kOk, u.text, a.text};
  }
};

class ReplayVtt final : public StageBackend {
 public:
  ReplayVtt(std::shared_ptr<const vtt::ReplayCorpus> corpus,
            std::string backend_name)
      : corpus_(std::move(corpus)), backend_name_(std::move(backend_name)) {}
  Stage stage() const override { return Stage::kVtt; }
  std::string_view name() const override { return "replay"; }
  StageOutcome process(const Utterance& u, Annotations& a) const override {
    if (!u.replay_ref) {
      a.text = u.text;
      return {StageStatus::kOk, u.text, a.text};
    }
    a.text = vtt::transcribe_replay(*u.replay_ref, *corpus_, backend_name_);
    return {StageStatus::kOk, "replay:" + *u.replay_ref, a.text};
  }

 private:
  std::shared_ptr<const vtt::ReplayCorpus> corpus_;
  std::string backend_name_;
};

// Transcribes the utterance text through the confusion simulator. The seed
// mixes the configured seed with the text, so a given utterance always comes
// out the same way.
class SimulatedVtt final : public StageBackend {
 public:
  SimulatedVtt(std::shared_ptr<const vtt::ConfusionModel> model,
               std::set<std::string> hinted, std::uint64_t seed)
      : model_(std::move(model)), hinted_(std::move(hinted)), seed_(seed) {}
  Stage stage() const override { return Stage::kVtt; }
  std::string_view name() const override { return "simulated"; }
  StageOutcome process(const Utterance& u, Annotations& a) const override {
    if (u.replay_ref) {
      throw std::runtime_error("simulated transcription cannot replay '" +
                               *u.replay_ref + "'");
    }
    const auto tokens = vtt::simulate(textproc::tokenize(u.text), *model_,
                                      hinted_, seed_ ^ fnv1a(u.text));
    a.text = textproc::join(tokens);
    return {StageStatus::kOk, u.text, a.text};
  }

 private:
  std::shared_ptr<const vtt::ConfusionModel> model_;
  std::set<std::string> hinted_;
  std::uint64_t seed_;
};

// --- translation ------------------------------------------------------------

class IdentityTranslation final : public StageBackend {
 public:
  Stage stage() const override { return Stage::kTranslation; }
  std::string_view name() const override { return "identity"; }
  StageOutcome process(const Utterance&, Annotations& a) const override {
    const StageStatus status = translation::is_english(a.language)
                                   ? StageStatus::kOk
                                   : StageStatus::kDegraded;
    return {status, a.text, a.text};
  }
};

class LexiconTranslation final : public StageBackend {
 public:
  explicit LexiconTranslation(const std::map<std::string, translation::Lexicon>& lexicons)
      : lexicons_(lexicons) {}
  Stage stage() const override { return Stage::kTranslation; }
  std::string_view name() const override { return "lexicon"; }
  StageOutcome process(const Utterance&, Annotations& a) const override {
    const std::string input = a.text;
    if (translation::is_english(a.language)) return {StageStatus::kOk, input, input};
    const auto it = lexicons_.find(translation::primary_language(a.language));
    if (it == lexicons_.end()) return {StageStatus::kDegraded, input, input};
    a.text = translation::translate(input, a.language, it->second);
    return {StageStatus::kOk, input, a.text};
  }

 private:
  std::map<std::string, translation::Lexicon> lexicons_;
};

// --- ner -------------------------------------------------------------------

json entities_json(const std::vector<ner::ResolvedEntity>& entities) {
  json out = json::array();
  for (const auto& e : entities) {
    out.push_back(json{{"surface", e.mention.surface},
                       {"span", {e.mention.start, e.mention.end}},
                       {"id", e.entry_id},
                       {"score", e.score},
                       {"role", ner::to_string(e.role)}});
  }
  return out;
}

class GazetteerNer final : public StageBackend {
 public:
  explicit GazetteerNer(std::shared_ptr<const ner::Gazetteer> gazetteer)
      : gazetteer_(std::move(gazetteer)) {}
  Stage stage() const override { return Stage::kNer; }
  std::string_view name() const override { return "gazetteer"; }
  StageOutcome process(const Utterance&, Annotations& a) const override {
    const textproc::TokenSequence tokens = textproc::tokenize(a.text);
    std::vector<ner::ResolvedEntity> resolved;
    bool dropped = false;
    for (const ner::Mention& m : ner::recognize(tokens, *gazetteer_)) {
      if (auto entity = ner::resolve(m, *gazetteer_)) {
        resolved.push_back(std::move(*entity));
      } else {
        dropped = true;
      }
    }
    a.entities = ner::assign_roles(std::move(resolved), tokens);
    a.routing.entities = a.entities;
    return {dropped ? StageStatus::kDegraded : StageStatus::kOk, a.text,
            codec::snapshot(entities_json(a.entities))};
  }

 private:
  std::shared_ptr<const ner::Gazetteer> gazetteer_;
};

class NoNer final : public StageBackend {
 public:
  Stage stage() const override { return Stage::kNer; }
  std::string_view name() const override { return "none"; }
  StageOutcome process(const Utterance&, Annotations& a) const override {
    a.entities.clear();
    a.routing.entities.clear();
    return {StageStatus::kOk, a.text, "[]"};
  }
};

// --- intent ------------------------------------------------------------------

json routing_signals_json(const router::RoutingInput& r) {
  json out{{"prebook",
            {{"value", intent::to_string(r.prebook.value)},
             {"confidence", r.prebook.confidence}}},
           {"postbook",
            {{"value", to_string(r.postbook.value)},
             {"confidence", r.postbook.confidence}}},
           {"keyword", nullptr}};
  if (r.keyword_hit) out["keyword"] = intent::keyword_target_name(*r.keyword_hit);
  return out;
}

class CompositeIntent final : public StageBackend {
 public:
  explicit CompositeIntent(std::vector<intent::KeywordRule> rules)
      : rules_(std::move(rules)) {}
  Stage stage() const override { return Stage::kIntent; }
  std::string_view name() const override { return "composite"; }
  StageOutcome process(const Utterance&, Annotations& a) const override {
    const textproc::TokenSequence tokens = textproc::tokenize(a.text);
    router::RoutingInput& r = a.routing;
    r.prebook = intent::classify_prebook(tokens);
    r.postbook = intent::classify_postbook(tokens);
    r.keyword_hit.reset();
    // Keyword overrides only apply once the pre-book model has passed.
    if (r.prebook.value == intent::PreBookLabel::kNone) {
      r.keyword_hit = intent::keyword_match(tokens, rules_);
    }
    json out = routing_signals_json(r);
    out["arm"] = "composite";
    return {StageStatus::kOk, a.text, codec::snapshot(out)};
  }

 private:
  std::vector<intent::KeywordRule> rules_;
};

// Maps the learned label onto the routing signals: pre_book becomes a hotel
// search unless the flight/hotel cues say flight; post-book labels feed the
// FAQ branch; anything else routes as unintelligible.
class LearnedIntent final : public StageBackend {
 public:
  explicit LearnedIntent(std::shared_ptr<const intent::LearnedModel> model)
      : model_(std::move(model)) {}
  Stage stage() const override { return Stage::kIntent; }
  std::string_view name() const override { return "learned"; }
  StageOutcome process(const Utterance&, Annotations& a) const override {
    const textproc::TokenSequence tokens = textproc::tokenize(a.text);
    const intent::LearnedPrediction prediction =
        intent::classify_learned(*model_, tokens);
    router::RoutingInput& r = a.routing;
    r.prebook = {};
    r.postbook = {};
    r.keyword_hit.reset();
    if (prediction.label == intent::kPreBookLabel) {
      r.prebook = intent::classify_prebook(tokens);
      if (r.prebook.value == intent::PreBookLabel::kNone) {
        r.prebook.value = intent::PreBookLabel::kHotel;
      }
      r.prebook.confidence = 1.0;
    } else if (const auto label = parse_postbook_label(prediction.label)) {
      r.postbook = {*label, 1.0};
    }
    json scores = json::object();
    for (const auto& [label, score] : prediction.scores) scores[label] = score;
    json out = routing_signals_json(r);
    out["arm"] = "learned";
    out["label"] = prediction.label;
    out["scores"] = scores;
    return {StageStatus::kOk, a.text, codec::snapshot(out)};
  }

 private:
  std::shared_ptr<const intent::LearnedModel> model_;
};

// --- route -----------------------------------------------------------------

class RuleRouter final : public StageBackend {
 public:
  explicit RuleRouter(router::Thresholds thresholds) : thresholds_(thresholds) {}
  Stage stage() const override { return Stage::kRoute; }
  std::string_view name() const override { return "rules"; }
  StageOutcome process(const Utterance&, Annotations& a) const override {
    json in = routing_signals_json(a.routing);
    in["entities"] = entities_json(a.routing.entities);
    a.decision = router::route(a.routing, thresholds_);
    return {StageStatus::kOk, codec::snapshot(in),
            codec::snapshot(codec::to_json(*a.decision))};
  }

 private:
  router::Thresholds thresholds_;
};

template <typename T>
std::shared_ptr<const T> require(const std::shared_ptr<const T>& resource,
                                 std::string_view what, std::string_view backend) {
  if (!resource) {
    throw ConfigError("backend '" + std::string(backend) + "' needs a " +
                      std::string(what) + " file");
  }
  return resource;
}

}  // namespace

std::string_view to_string(IntentArm arm) {
  return arm == IntentArm::kLearned ? "learned" : "composite";
}

std::optional<IntentArm> parse_intent_arm(std::string_view text) {
  if (text == "composite") return IntentArm::kComposite;
  if (text == "learned") return IntentArm::kLearned;
  return std::nullopt;
}

std::unique_ptr<StageBackend> make_backend(Stage stage, std::string_view name,
                                           const PipelineConfig& config,
                                           const Resources& resources) {
  switch (stage) {
    case Stage::kVtt:
      if (name == "passthrough") return std::make_unique<PassthroughVtt>();
      if (name == "replay") {
        return std::make_unique<ReplayVtt>(require(resources.replay, "replay", name),
                                           config.replay_backend_name);
      }
      if (name == "simulated") {
        return std::make_unique<SimulatedVtt>(
            require(resources.confusion, "confusion", name),
            resources.hinted_words, config.seed);
      }
      break;
    case Stage::kTranslation:
      if (name == "identity") return std::make_unique<IdentityTranslation>();
      if (name == "lexicon") {
        return std::make_unique<LexiconTranslation>(resources.lexicons);
      }
      break;
    case Stage::kNer:
      if (name == "gazetteer") {
        return std::make_unique<GazetteerNer>(
            require(resources.gazetteer, "gazetteer", name));
      }
      if (name == "none") return std::make_unique<NoNer>();
      break;
    case Stage::kIntent:
      if (name == "composite") {
        return std::make_unique<CompositeIntent>(resources.keywords);
      }
      if (name == "learned") {
        return std::make_unique<LearnedIntent>(
            require(resources.learned, "learned_model", name));
      }
      break;
    case Stage::kRoute:
      if (name == "rules") {
        return std::make_unique<RuleRouter>(router::Thresholds{
            config.prebook_threshold, config.postbook_threshold});
      }
      break;
  }
  throw ConfigError("unknown " + std::string(to_string(stage)) + " backend '" +
                    std::string(name) + "'");
}

Pipeline Pipeline::from_config(const PipelineConfig& config) {
  Resources resources;
  if (config.gazetteer) {
    resources.gazetteer =
        std::make_shared<const ner::Gazetteer>(io::load_gazetteer(*config.gazetteer));
  }
  for (const auto& [language, path] : config.lexicons) {
    translation::Lexicon lexicon = io::load_lexicon(path);
    if (translation::primary_language(lexicon.source_language) != language) {
      throw ConfigError("lexicon " + path.string() + " is for '" +
                        lexicon.source_language + "', configured for '" +
                        language + "'");
    }
    resources.lexicons.emplace(language, std::move(lexicon));
  }
  if (config.keywords) resources.keywords = io::load_keywords(*config.keywords);
  if (config.confusion) {
    resources.confusion =
        std::make_shared<const vtt::ConfusionModel>(io::load_confusion(*config.confusion));
  }
  if (config.hints) resources.hinted_words = vtt::hint_words(io::load_hints(*config.hints));
  if (config.replay) {
    resources.replay =
        std::make_shared<const vtt::ReplayCorpus>(io::load_replay(*config.replay));
  }
  if (config.learned_model) {
    resources.learned = std::make_shared<const intent::LearnedModel>(
        io::load_learned_model(*config.learned_model));
  }
  return Pipeline(config, std::move(resources));
}

Pipeline::Pipeline(PipelineConfig config, Resources resources)
    : config_(std::move(config)), resources_(std::move(resources)) {
  vtt_ = make_backend(Stage::kVtt, config_.vtt_backend, config_, resources_);
  translation_ = make_backend(Stage::kTranslation, config_.translation_backend,
                              config_, resources_);
  ner_ = make_backend(Stage::kNer, config_.ner_backend, config_, resources_);
  route_ = make_backend(Stage::kRoute, "rules", config_, resources_);

  const auto arm = parse_intent_arm(config_.intent_backend);
  if (!arm) {
    throw ConfigError("unknown intent backend '" + config_.intent_backend + "'");
  }
  default_arm_ = *arm;
  intent_[default_arm_] =
      make_backend(Stage::kIntent, config_.intent_backend, config_, resources_);
  // The other arm is optional; it exists when its resources were provided.
  for (IntentArm other : {IntentArm::kComposite, IntentArm::kLearned}) {
    if (intent_.contains(other)) continue;
    if (other == IntentArm::kLearned && !resources_.learned) continue;
    intent_[other] = make_backend(Stage::kIntent, to_string(other), config_, resources_);
  }
}

bool Pipeline::has_arm(IntentArm arm) const { return intent_.contains(arm); }

std::map<std::string, std::string> Pipeline::backend_names(IntentArm arm) const {
  std::map<std::string, std::string> names{
      {"vtt", std::string(vtt_->name())},
      {"translation", std::string(translation_->name())},
      {"ner", std::string(ner_->name())},
      {"route", std::string(route_->name())},
  };
  if (const auto it = intent_.find(arm); it != intent_.end()) {
    names["intent"] = std::string(it->second->name());
  }
  return names;
}

RunResult Pipeline::run(const Utterance& utterance,
                        std::optional<IntentArm> arm) const {
  const IntentArm chosen = arm.value_or(default_arm_);
  const auto intent_it = intent_.find(chosen);
  if (intent_it == intent_.end()) {
    throw ConfigError("intent arm '" + std::string(to_string(chosen)) +
                      "' is not configured");
  }

  PipelineTrace trace;
  trace.utterance_id = utterance.id;
  Annotations annotations;
  annotations.language =
      utterance.language.empty() ? config_.default_language : utterance.language;
  annotations.text = utterance.text;

  // Runs one stage and appends its record; false when the stage failed.
  auto execute = [&](const StageBackend& backend) {
    StageRecord record;
    record.stage = backend.stage();
    const auto start = std::chrono::steady_clock::now();
    try {
      StageOutcome outcome = backend.process(utterance, annotations);
      record.status = outcome.status;
      record.input_snapshot = cap_snapshot(std::move(outcome.input_snapshot));
      record.output_snapshot = cap_snapshot(std::move(outcome.output_snapshot));
    } catch (const std::exception& e) {
      record.status = StageStatus::kFailed;
      record.input_snapshot = cap_snapshot(annotations.text);
      record.output_snapshot = cap_snapshot(e.what());
    }
    const std::chrono::duration<double, std::milli> elapsed =
        std::chrono::steady_clock::now() - start;
    record.duration_ms = std::max(0.0, elapsed.count());
    const bool ok = record.status != StageStatus::kFailed;
    trace.records.push_back(std::move(record));
    return ok;
  };

  auto finish = [&](ActionDecision decision) {
    trace.decision = decision;
    return RunResult{std::move(decision), std::move(trace)};
  };

  if (!execute(*vtt_) || blank(annotations.text)) {
    return finish(ActionDecision::unintelligible());
  }

  const std::string before_translation = annotations.text;
  if (!execute(*translation_)) {
    annotations.text = before_translation;
    trace.records.back().status = StageStatus::kDegraded;
    trace.records.back().output_snapshot = cap_snapshot(before_translation);
  }

  if (!execute(*ner_)) {
    annotations.entities.clear();
    annotations.routing.entities.clear();
  }

  if (!execute(*intent_it->second)) {
    annotations.routing.prebook = {};
    annotations.routing.postbook = {};
    annotations.routing.keyword_hit.reset();
  }

  if (!execute(*route_) || !annotations.decision) {
    return finish(ActionDecision::unintelligible());
  }
  return finish(*annotations.decision);
}

}  // namespace concierge::pipeline
