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

// Command-line entry points: interpretation, evaluation reports, simulation,
// experiment analysis, model training and the HTTP service.
//
// Exit codes: 0 success, 1 load or validation error, 2 evaluation
// precondition failure.

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "concierge/corpus_io.hpp"
#include "concierge/eval.hpp"
#include "concierge/intent.hpp"
#include "concierge/json_codec.hpp"
#include "concierge/kernels.hpp"
#include "concierge/pipeline.hpp"
#include "concierge/service.hpp"
#include "concierge/textproc.hpp"
#include "concierge/vtt.hpp"

namespace {

using namespace concierge;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitPrecondition = 2;

// A malformed flag value; reported like a load error.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::vector<std::string> split_list(const std::vector<std::string>& values) {
  std::vector<std::string> out;
  for (const std::string& value : values) {
    std::stringstream in(value);
    std::string item;
    while (std::getline(in, item, ',')) {
      if (!item.empty()) out.push_back(item);
    }
  }
  return out;
}

eval::GroupOutcome parse_group(const std::string& text, const char* flag) {
  const auto comma = text.find(',');
  const auto bad = [&] {
    return UsageError(std::string(flag) + " expects SUCCESSES,TRIALS, got '" + text + "'");
  };
  if (comma == std::string::npos) throw bad();
  const std::string s = text.substr(0, comma);
  const std::string t = text.substr(comma + 1);
  const auto digits = [](const std::string& v) {
    return !v.empty() && v.size() <= 18 &&
           v.find_first_not_of("0123456789") == std::string::npos;
  };
  if (!digits(s) || !digits(t)) throw bad();
  return {std::stoull(s), std::stoull(t)};
}

void print_json(const json& value) { std::cout << value.dump(2) << '\n'; }

std::string describe(const ActionDecision& d) {
  std::string out(to_string(d.kind()));
  if (d.destination()) out += " destination=" + *d.destination();
  if (d.origin()) out += " origin=" + *d.origin();
  if (d.faq_intent()) out += " faq_intent=" + std::string(to_string(*d.faq_intent()));
  if (d.missing_slot()) out += " missing=" + std::string(to_string(*d.missing_slot()));
  return out;
}

void print_trace(const PipelineTrace& trace) {
  std::printf("trace %s\n", trace.utterance_id.c_str());
  for (const StageRecord& r : trace.records) {
    std::printf("  %-11s %-8s %8.3f ms\n", std::string(to_string(r.stage)).c_str(),
                std::string(to_string(r.status)).c_str(), r.duration_ms);
    std::printf("    in:  %s\n    out: %s\n", r.input_snapshot.c_str(),
                r.output_snapshot.c_str());
  }
}

std::optional<pipeline::IntentArm> parse_arm(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto arm = pipeline::parse_intent_arm(text);
  if (!arm) throw UsageError("unknown variant '" + text + "'");
  return arm;
}

struct InterpretArgs {
  std::string config;
  std::optional<std::string> text;
  std::string lang;
  std::string variant;
  std::string replay;
  bool json = false;
};

int run_interpret(const InterpretArgs& args) {
  const PipelineConfig config = io::load_config(args.config);
  const auto arm = parse_arm(args.variant);
  const pipeline::Pipeline pipe = pipeline::Pipeline::from_config(config);

  Utterance utterance;
  utterance.id = "cli";
  if (args.text) {
    utterance.text = *args.text;
  } else {
    utterance.text.assign(std::istreambuf_iterator<char>(std::cin),
                          std::istreambuf_iterator<char>());
    while (!utterance.text.empty() &&
           (utterance.text.back() == '\n' || utterance.text.back() == '\r')) {
      utterance.text.pop_back();
    }
  }
  utterance.language = args.lang.empty() ? config.default_language : args.lang;
  if (!args.replay.empty()) utterance.replay_ref = args.replay;

  const pipeline::RunResult result = pipe.run(utterance, arm);
  if (args.json) {
    print_json(json{{"action", codec::to_json(result.decision)},
                    {"trace", codec::to_json(result.trace)}});
  } else {
    std::printf("action %s\n", describe(result.decision).c_str());
    print_trace(result.trace);
  }
  return kExitOk;
}

struct ServeArgs {
  std::string config;
  int port = -1;
};

int run_serve(const ServeArgs& args) {
  std::string path = args.config;
  if (path.empty()) {
    if (const char* env = std::getenv("CONCIERGE_CONFIG")) path = env;
  }
  if (path.empty()) throw UsageError("serve needs --config or CONCIERGE_CONFIG");
  const PipelineConfig config = io::load_config(path);
  auto pipe = std::make_shared<const pipeline::Pipeline>(
      pipeline::Pipeline::from_config(config));

  std::ofstream log_file;
  service::ServiceOptions options;
  options.salt = config.experiment_salt;
  options.request_log = &std::cout;
  if (config.request_log) {
    log_file.open(*config.request_log, std::ios::app);
    if (!log_file) {
      throw UsageError("cannot open request log " + config.request_log->string());
    }
    options.request_log = &log_file;
  }
  auto svc = std::make_shared<service::Service>(pipe, options);
  service::HttpServer server(svc);

  const int port = args.port >= 0 ? args.port : config.port;
  const int bound = server.bind("0.0.0.0", port);
  if (bound < 0) {
    std::cerr << "cannot bind port " << port << '\n';
    return kExitInvalid;
  }

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });

  std::cerr << "listening on port " << bound << '\n';
  server.serve();
  // serve() returned on its own; release the waiter.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return kExitOk;
}

struct EvalWerArgs {
  std::string pairs;
  std::vector<std::string> words;
  bool json = false;
};

int run_eval_wer(const EvalWerArgs& args) {
  const auto pairs = io::load_transcript_pairs(args.pairs);
  const eval::WerReport wer = eval::wer_corpus(pairs);
  const std::vector<std::string> words = split_list(args.words);
  std::vector<eval::PerWordErrorReport> rows;
  if (!words.empty()) rows = eval::per_word_errors(pairs, words);
  if (args.json) {
    json doc{{"wer", codec::to_json(wer)}};
    if (!words.empty()) {
      json list = json::array();
      for (const auto& row : rows) list.push_back(codec::to_json(row));
      doc["words"] = std::move(list);
    }
    print_json(doc);
  } else {
    std::cout << eval::render_wer(wer, args.pairs);
    if (!rows.empty()) std::cout << '\n' << eval::render_word_errors(rows);
  }
  return kExitOk;
}

struct EvalIntentsArgs {
  std::string gold;
  std::vector<std::string> pred;
  bool json = false;
};

int run_eval_intents(const EvalIntentsArgs& args) {
  const auto gold = io::load_labeled_intents(args.gold);
  std::vector<std::string> gold_labels;
  gold_labels.reserve(gold.size());
  for (const auto& r : gold) gold_labels.push_back(r.intent);

  std::vector<std::pair<std::string, std::vector<eval::ClassMetrics>>> models;
  for (const std::string& file : args.pred) {
    std::map<std::string, std::string> by_id;
    for (auto& r : io::load_labeled_intents(file)) by_id.emplace(r.id, r.intent);
    if (by_id.size() != gold.size()) {
      throw eval::PreconditionError(file + " has " + std::to_string(by_id.size()) +
                                    " records, gold has " +
                                    std::to_string(gold.size()));
    }
    std::vector<std::string> predicted;
    predicted.reserve(gold.size());
    for (const auto& r : gold) {
      const auto it = by_id.find(r.id);
      if (it == by_id.end()) {
        throw eval::PreconditionError(file + " has no prediction for id '" + r.id + "'");
      }
      predicted.push_back(it->second);
    }
    models.emplace_back(std::filesystem::path(file).stem().string(),
                        eval::class_metrics(gold_labels, predicted));
  }

  if (args.json) {
    json doc = json::array();
    for (const auto& [name, rows] : models) {
      json list = json::array();
      for (const auto& row : rows) list.push_back(codec::to_json(row));
      doc.push_back(json{{"model", name}, {"classes", std::move(list)}});
    }
    print_json(doc);
  } else {
    std::cout << eval::render_class_metrics(models);
  }
  return kExitOk;
}

struct DistributionArgs {
  std::string labels;
  std::vector<std::string> exclude;
  bool json = false;
};

int run_distribution(const DistributionArgs& args) {
  const auto records = io::load_labeled_intents(args.labels);
  std::vector<std::string> labels;
  labels.reserve(records.size());
  for (const auto& r : records) labels.push_back(r.intent);
  const auto excluded = split_list(args.exclude);
  const eval::DistributionReport report = eval::intent_distribution(
      labels, std::set<std::string>(excluded.begin(), excluded.end()));
  if (args.json) {
    print_json(codec::to_json(report));
  } else {
    std::cout << eval::render_distribution(report);
  }
  return kExitOk;
}

struct CompareArgs {
  std::string a;
  std::string b;
  bool json = false;
};

int run_compare(const CompareArgs& args) {
  const eval::ExperimentComparison c =
      eval::compare_groups(parse_group(args.a, "--a"), parse_group(args.b, "--b"));
  if (args.json) {
    print_json(codec::to_json(c));
  } else {
    std::cout << eval::render_comparison(c);
  }
  return kExitOk;
}

struct SimulateArgs {
  std::string refs;
  std::string confusion;
  std::string hints;
  std::uint64_t seed = 0;
  std::string out;
};

int run_simulate(const SimulateArgs& args) {
  const vtt::ReplayCorpus corpus = io::load_replay(args.refs);
  const vtt::ConfusionModel model = io::load_confusion(args.confusion);
  std::set<std::string> hinted;
  if (!args.hints.empty()) hinted = vtt::hint_words(io::load_hints(args.hints));

  std::vector<textproc::TokenSequence> references;
  std::vector<eval::TranscriptPair> pairs;
  references.reserve(corpus.entries.size());
  for (const auto& [id, entry] : corpus.entries) {
    references.push_back(textproc::tokenize(entry.reference));
    pairs.push_back({id, entry.reference, {}});
  }
  const auto hypotheses = kernels::simulate_batch(references, model, hinted, args.seed);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    pairs[i].hypothesis = textproc::join(hypotheses[i]);
  }
  const std::string text = io::serialize_transcript_pairs(pairs);
  if (args.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(args.out, std::ios::binary);
    out << text;
    if (!out) throw UsageError("cannot write " + args.out);
  }
  return kExitOk;
}

struct TrainArgs {
  std::string corpus;
  double alpha = 1.0;
  std::string out;
};

int run_train(const TrainArgs& args) {
  std::vector<intent::LabeledText> corpus;
  for (auto& r : io::load_labeled_intents(args.corpus)) {
    corpus.push_back({std::move(r.text), std::move(r.intent)});
  }
  if (corpus.empty()) throw eval::PreconditionError("training corpus is empty");
  const intent::LearnedModel model = intent::train_learned(corpus, args.alpha);
  const std::string text = io::serialize_learned_model(model);
  if (args.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(args.out, std::ios::binary);
    out << text;
    if (!out) throw UsageError("cannot write " + args.out);
  }
  return kExitOk;
}

struct ClassifyArgs {
  std::string config;
  std::string corpus;
  std::string variant;
  std::string out;
};

// Runs every record of a labeled corpus through the pipeline and writes the
// predicted labels in the same format, for scoring with `eval intents`.
int run_classify(const ClassifyArgs& args) {
  const PipelineConfig config = io::load_config(args.config);
  const auto arm = parse_arm(args.variant);
  const pipeline::Pipeline pipe = pipeline::Pipeline::from_config(config);
  auto records = io::load_labeled_intents(args.corpus);
  for (auto& r : records) {
    Utterance u;
    u.id = r.id;
    u.text = r.text;
    u.language = config.default_language;
    r.intent = eval::taxonomy_label(pipe.run(u, arm).decision);
  }
  const std::string text = io::serialize_labeled_intents(records);
  if (args.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(args.out, std::ios::binary);
    out << text;
    if (!out) throw UsageError("cannot write " + args.out);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"concierge: travel utterance interpretation and evaluation"};
  app.require_subcommand(1);
  std::function<int()> action;

  InterpretArgs interpret;
  auto* cmd = app.add_subcommand("interpret", "Interpret one utterance");
  cmd->add_option("--config", interpret.config, "Pipeline config file")->required();
  cmd->add_option("--text", interpret.text, "Utterance text (stdin when omitted)");
  cmd->add_option("--lang", interpret.lang, "Language tag");
  cmd->add_option("--variant", interpret.variant, "composite or learned");
  cmd->add_option("--replay", interpret.replay, "Replay corpus id");
  cmd->add_flag("--json", interpret.json, "Emit JSON");
  cmd->callback([&] { action = [&] { return run_interpret(interpret); }; });

  ServeArgs serve;
  cmd = app.add_subcommand("serve", "Run the HTTP service");
  cmd->add_option("--config", serve.config, "Pipeline config (default $CONCIERGE_CONFIG)");
  cmd->add_option("--port", serve.port, "Listen port")->check(CLI::Range(0, 65535));
  cmd->callback([&] { action = [&] { return run_serve(serve); }; });

  auto* eval_cmd = app.add_subcommand("eval", "Evaluation reports");
  eval_cmd->require_subcommand(1);
  EvalWerArgs wer;
  cmd = eval_cmd->add_subcommand("wer", "Corpus WER and per-word errors");
  cmd->add_option("--pairs", wer.pairs, "Transcript pair corpus")->required();
  cmd->add_option("--words", wer.words, "Comma-separated target words");
  cmd->add_flag("--json", wer.json, "Emit JSON");
  cmd->callback([&] { action = [&] { return run_eval_wer(wer); }; });

  EvalIntentsArgs intents;
  cmd = eval_cmd->add_subcommand("intents", "Per-class precision and recall");
  cmd->add_option("--gold", intents.gold, "Gold labeled-intent corpus")->required();
  cmd->add_option("--pred", intents.pred, "Predicted labels (repeatable, one per model)")
      ->required();
  cmd->add_flag("--json", intents.json, "Emit JSON");
  cmd->callback([&] { action = [&] { return run_eval_intents(intents); }; });

  auto* report_cmd = app.add_subcommand("report", "Corpus reports");
  report_cmd->require_subcommand(1);
  DistributionArgs dist;
  cmd = report_cmd->add_subcommand("distribution", "Intent distribution");
  cmd->add_option("--labels", dist.labels, "Labeled-intent corpus")->required();
  cmd->add_option("--exclude", dist.exclude, "Labels to exclude (comma-separated)");
  cmd->add_flag("--json", dist.json, "Emit JSON");
  cmd->callback([&] { action = [&] { return run_distribution(dist); }; });

  auto* compare_cmd = app.add_subcommand("compare", "Experiment analysis");
  compare_cmd->require_subcommand(1);
  CompareArgs compare;
  cmd = compare_cmd->add_subcommand("experiment", "Two-proportion z-test");
  cmd->add_option("--a", compare.a, "Group a as SUCCESSES,TRIALS")->required();
  cmd->add_option("--b", compare.b, "Group b as SUCCESSES,TRIALS")->required();
  cmd->add_flag("--json", compare.json, "Emit JSON");
  cmd->callback([&] { action = [&] { return run_compare(compare); }; });

  auto* simulate_cmd = app.add_subcommand("simulate", "Hypothesis simulation");
  simulate_cmd->require_subcommand(1);
  SimulateArgs simulate;
  bool simulate_json = false;
  cmd = simulate_cmd->add_subcommand("vtt", "Simulate transcripts from references");
  cmd->add_option("--refs", simulate.refs, "Replay corpus of references")->required();
  cmd->add_option("--confusion", simulate.confusion, "Confusion model")->required();
  cmd->add_option("--hints", simulate.hints, "Hint phrases");
  cmd->add_option("--seed", simulate.seed, "Base seed")->required();
  cmd->add_option("--out", simulate.out, "Output file (stdout when omitted)");
  cmd->add_flag("--json", simulate_json, "Accepted for symmetry; output is always JSON lines");
  cmd->callback([&] { action = [&] { return run_simulate(simulate); }; });

  TrainArgs train;
  cmd = app.add_subcommand("train", "Train the learned intent model");
  cmd->add_option("--corpus", train.corpus, "Labeled-intent corpus")->required();
  cmd->add_option("--alpha", train.alpha, "Additive smoothing")->check(CLI::PositiveNumber);
  cmd->add_option("--out", train.out, "Output file (stdout when omitted)");
  cmd->callback([&] { action = [&] { return run_train(train); }; });

  ClassifyArgs classify;
  cmd = app.add_subcommand("classify", "Label a corpus with pipeline predictions");
  cmd->add_option("--config", classify.config, "Pipeline config file")->required();
  cmd->add_option("--corpus", classify.corpus, "Labeled-intent corpus")->required();
  cmd->add_option("--variant", classify.variant, "composite or learned");
  cmd->add_option("--out", classify.out, "Output file (stdout when omitted)");
  cmd->callback([&] { action = [&] { return run_classify(classify); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    return action();
  } catch (const io::LoadError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const eval::PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}
