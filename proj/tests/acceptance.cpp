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

// Release acceptance checks. Prints one PASS or FAIL line per criterion and
// exits non-zero if any check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "concierge/corpus_io.hpp"
#include "concierge/eval.hpp"
#include "concierge/intent.hpp"
#include "concierge/json_codec.hpp"
#include "concierge/ner.hpp"
#include "concierge/pipeline.hpp"
#include "concierge/router.hpp"
#include "concierge/service.hpp"
#include "oracles.hpp"

namespace {

using namespace concierge;
using nlohmann::json;

// Failure with a reason; thrown by expect() and caught per criterion.
struct Failed {
  std::string why;
};

void expect(bool ok, const std::string& why) {
  if (!ok) throw Failed{why};
}

std::string data(const char* name) { return std::string(CONCIERGE_DATA_DIR) + "/" + name; }

std::shared_ptr<const pipeline::Pipeline> shipped_pipeline() {
  static const auto p = std::make_shared<const pipeline::Pipeline>(
      pipeline::Pipeline::from_config(io::load_config(data("config.json"))));
  return p;
}

std::pair<int, std::string> cli(const std::string& args) {
  const std::string cmd = std::string(CONCIERGE_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) throw Failed{"cannot start the CLI"};
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class LiveServer {
 public:
  LiveServer()
      : server_(std::make_shared<service::Service>(shipped_pipeline(), service::ServiceOptions{})) {
    port_ = server_.bind("127.0.0.1", 0);
    if (port_ < 0) throw Failed{"cannot bind a port"};
    thread_ = std::thread([this] { server_.serve(); });
    server_.wait_until_ready();
  }
  ~LiveServer() {
    server_.stop();
    thread_.join();
  }

  std::pair<int, json> interpret(const json& body) {
    httplib::Client client("127.0.0.1", port_);
    auto res = client.Post("/v1/interpret", body.dump(), "application/json");
    if (!res) throw Failed{"no HTTP response"};
    return {res->status, json::parse(res->body)};
  }

 private:
  service::HttpServer server_;
  int port_ = -1;
  std::thread thread_;
};

void wer_oracle() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2021);
  std::vector<eval::TranscriptPair> corpus;
  std::size_t edits = 0, words = 0;
  for (int i = 0; i < 500; ++i) {
    const auto ref = oracle::random_tokens(rng, 8);
    const auto hyp = oracle::random_tokens(rng, 8);
    const std::size_t d = oracle::edit_distance(ref, hyp);
    edits += d;
    words += ref.size();
    corpus.push_back({std::to_string(i), oracle::join(ref), oracle::join(hyp)});
    if (ref.empty()) continue;
    const std::vector<eval::TranscriptPair> one{corpus.back()};
    const double got = eval::wer_corpus(one).wer;
    const double want = static_cast<double>(d) / static_cast<double>(ref.size());
    expect(got == want, "pair " + std::to_string(i) + ": " + std::to_string(got) +
                            " != " + std::to_string(want));
  }
  expect(eval::wer_corpus(corpus).wer ==
             static_cast<double>(edits) / static_cast<double>(words),
         "corpus WER differs from oracle");
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  expect(secs < 5.0, "took " + std::to_string(secs) + " s");
}

void table1() {
  const auto pairs = io::load_transcript_pairs(data("table1_pairs.jsonl"));
  const std::vector<std::string> words{"booking", "cancellation"};
  const auto rows = eval::per_word_errors(pairs, words);
  expect(rows[0].formatted == "31/415 (7.5%)", "booking: " + rows[0].formatted);
  expect(rows[1].formatted == "23/108 (21.3%)", "cancellation: " + rows[1].formatted);
}

void table2() {
  const auto pairs = io::load_transcript_pairs(data("table2_pairs.jsonl"));
  const double wer = eval::wer_corpus(pairs).wer;
  expect(wer == 0.2, "WER " + std::to_string(wer));
}

void table3() {
  std::vector<std::string> labels;
  for (const auto& r : io::load_labeled_intents(data("table3_labels.jsonl"))) {
    labels.push_back(r.intent);
  }
  const auto report = eval::intent_distribution(labels, {"unintelligible"});
  const std::vector<std::pair<std::string, double>> published{
      {"pre_book", 66.9}, {"request_human_agent", 8.7}, {"check_booking_status", 7.1},
      {"payments", 3.0},  {"change_booking", 1.9},      {"other_post_book", 10.0},
      {"greeting", 2.4}};
  expect(report.rows.size() == published.size(), "row count");
  for (std::size_t i = 0; i < published.size(); ++i) {
    expect(report.rows[i].label == published[i].first && report.rows[i].percent == published[i].second,
           report.rows[i].label + " " + std::to_string(report.rows[i].percent));
  }
  expect(report.excluded_count == 667, "excluded count");
}

void router_sweep() {
  using intent::PreBookLabel;
  auto place = [](const char* id, ner::Role role) {
    ner::ResolvedEntity e;
    e.mention = {0, 1, id};
    e.entry_id = id;
    e.score = 1.0;
    e.role = role;
    return e;
  };
  const std::vector<std::vector<ner::ResolvedEntity>> entity_sets{
      {},
      {place("paris-fr", ner::Role::kDestination)},
      {place("london-gb", ner::Role::kOrigin)},
      {place("london-gb", ner::Role::kOrigin), place("paris-fr", ner::Role::kDestination)}};
  const std::optional<intent::KeywordTarget> keywords[] = {
      std::nullopt, intent::KeywordTarget{PostBookLabel::kPayments},
      intent::KeywordTarget{intent::SpecialAction::kCovidInfo}};
  int total = 0, failures = 0;
  for (PreBookLabel pre : {PreBookLabel::kFlight, PreBookLabel::kHotel, PreBookLabel::kNone}) {
    for (PostBookLabel post : kAllPostBookLabels) {
      for (const auto& kw : keywords) {
        for (const auto& entities : entity_sets) {
          ++total;
          router::RoutingInput in{{pre, 0.5}, {post, 0.5}, kw, entities};
          try {
            if (!router::route(in).valid()) ++failures;
          } catch (...) {
            ++failures;
          }
        }
      }
    }
  }
  expect(total == 288, std::to_string(total) + " combinations");
  expect(failures == 0, std::to_string(failures) + " failures");
}

void end_to_end() {
  struct Case {
    const char* text;
    ActionDecision expected;
  };
  const std::vector<Case> cases{
      {"I need to book a hotel in Paris", ActionDecision::search_hotels("paris-fr")},
      {"flight from london to paris", ActionDecision::search_flights("paris-fr", "london-gb")},
      {"credit", ActionDecision::open_faq(PostBookLabel::kPayments)},
      {"coronavirus", ActionDecision::covid_info()},
  };
  const auto* paris = shipped_pipeline()->resources().gazetteer->find("paris-fr");
  expect(paris && paris->country_code == "FR", "paris-fr is not the French entry");
  LiveServer server;
  for (const Case& c : cases) {
    const auto [code, out] =
        cli("interpret --json --config " + data("config.json") + " --text '" + c.text + "'");
    expect(code == 0, std::string("CLI exit ") + std::to_string(code) + " for " + c.text);
    expect(codec::decision_from_json(json::parse(out)["action"]) == c.expected,
           std::string("CLI: ") + c.text);
    const auto [status, body] = server.interpret({{"text", c.text}, {"lang", "en"}});
    expect(status == 200, std::string("HTTP status for ") + c.text);
    expect(codec::decision_from_json(body["action"]) == c.expected,
           std::string("HTTP: ") + c.text);
  }
}

void amsterdam() {
  const auto& shipped = *shipped_pipeline()->resources().gazetteer;
  const auto* nl = shipped.find("amsterdam-nl");
  const auto* us = shipped.find("amsterdam-us-ny");
  expect(nl && us && nl->prior > us->prior, "fixture priors");
  Utterance u;
  u.id = "ams";
  u.text = "hotel in amsterdam";
  expect(shipped_pipeline()->run(u).decision == ActionDecision::search_hotels("amsterdam-nl"),
         "pipeline decision");
  std::vector<ner::GazetteerEntry> scaled = shipped.entries();
  for (auto& e : scaled) e.prior *= 10;
  const ner::Gazetteer g(scaled);
  const auto tokens = textproc::tokenize(u.text);
  const auto mentions = ner::recognize(tokens, g);
  expect(mentions.size() == 1, "mention count");
  const auto r = ner::resolve(mentions[0], g);
  expect(r && r->entry_id == "amsterdam-nl", "scaled priors changed the choice");
}

void learned_arm() {
  const std::vector<std::string> labels{"cancel_booking", "payments", "greeting"};
  const std::vector<std::vector<std::string>> vocab{
      {"cancel", "void", "terminate", "drop"},
      {"pay", "invoice", "charge", "bill"},
      {"hello", "hi", "hey", "morning"}};
  std::mt19937_64 rng(60);
  std::vector<intent::LabeledText> corpus;
  for (std::size_t c = 0; c < 3; ++c) {
    for (int d = 0; d < 20; ++d) {
      std::string text;
      for (int k = 0; k < 2 + static_cast<int>(rng() % 4); ++k) text += vocab[c][rng() % 4] + " ";
      corpus.push_back({text, labels[c]});
    }
  }
  expect(corpus.size() == 60, "corpus size");
  const auto model = intent::train_learned(corpus, 1.0);
  std::vector<std::string> gold, predicted;
  for (const auto& doc : corpus) {
    gold.push_back(doc.label);
    predicted.push_back(intent::classify_learned(model, textproc::tokenize(doc.text)).label);
  }
  std::size_t correct = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) correct += gold[i] == predicted[i];
  expect(correct == gold.size(), std::to_string(correct) + "/60 correct");
  const std::vector<std::pair<std::string, std::vector<eval::ClassMetrics>>> models{
      {"learned", eval::class_metrics(gold, predicted)}};
  const std::string table = eval::render_class_metrics(models);
  std::istringstream lines(table);
  std::string header, columns, rule, row;
  std::getline(lines, header);
  std::getline(lines, columns);
  std::getline(lines, rule);
  expect(header.rfind("Intent", 0) == 0 && header.find("learned") != std::string::npos,
         "header: " + header);
  expect(columns.find(" p ") != std::string::npos && columns.back() == 'r', "columns: " + columns);
  int rows = 0;
  while (std::getline(lines, row)) {
    expect(row.find("100%  100%") != std::string::npos, "row: " + row);
    ++rows;
  }
  expect(rows == 3, std::to_string(rows) + " rows");
}

void experiment() {
  const auto c = eval::compare_groups({60, 500}, {90, 500});
  expect(c.significant_at_5pct, "not significant");
  expect(std::abs(c.z_statistic) >= 2.5 && std::abs(c.z_statistic) <= 2.8,
         "z " + std::to_string(c.z_statistic));
  std::mt19937_64 rng(1);
  std::binomial_distribution<int> draw(500, 0.15);
  double sum = 0, sum_sq = 0;
  for (int i = 0; i < 1'000'000; ++i) {
    const double d = (draw(rng) - draw(rng)) / 500.0;
    sum += d;
    sum_sq += d * d;
  }
  const double mean = sum / 1e6;
  const double z_sim = (0.12 - 0.18) / std::sqrt(sum_sq / 1e6 - mean * mean);
  expect(std::abs(c.z_statistic - z_sim) < 0.01 * std::abs(z_sim),
         "simulated z " + std::to_string(z_sim) + " vs " + std::to_string(c.z_statistic));
  const auto same = eval::compare_groups({50, 1000}, {50, 1000});
  expect(same.z_statistic == 0.0 && !same.significant_at_5pct, "equal proportions");
}

void bucketing() {
  int learned = 0;
  for (int i = 0; i < 10000; ++i) {
    const std::string id = "user-" + std::to_string(i);
    const auto v = service::assign_variant(id, "intent-arm-v1").variant;
    expect(v == service::assign_variant(id, "intent-arm-v1").variant, "not deterministic");
    learned += v == pipeline::IntentArm::kLearned;
  }
  expect(learned >= 4800 && learned <= 5200, std::to_string(learned) + " learned of 10000");
}

void degradation() {
  PipelineConfig c = io::load_config(data("config.json"));
  c.lexicons.clear();
  const auto p = pipeline::Pipeline::from_config(c);
  Utterance u;
  u.id = "nl";
  u.text = "ik wil een hotel in Parijs";
  u.language = "nl";
  const auto r = p.run(u);
  expect(r.trace.records.size() == 5, "translation degradation aborted the run");
  expect(r.trace.records[1].status == StageStatus::kDegraded, "translation not degraded");
  expect(r.decision.valid(), "no decision");

  LiveServer server;
  const auto [status, body] = server.interpret({{"text", "x"}, {"replay_ref", "missing"}});
  expect(status == 200, "HTTP status " + std::to_string(status));
  expect(body["action"]["kind"] == "Unintelligible", "action " + body["action"].dump());
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void()>>> criteria{
      {"WER oracle equivalence", wer_oracle},
      {"Table 1 row format reproduction", table1},
      {"Table 2 pair", table2},
      {"Table 3 reproduction", table3},
      {"Router totality sweep", router_sweep},
      {"End-to-end (CLI and HTTP)", end_to_end},
      {"Amsterdam disambiguation", amsterdam},
      {"Learned-arm sanity", learned_arm},
      {"Experiment comparison", experiment},
      {"Variant bucketing", bucketing},
      {"Degradation paths", degradation},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    std::string why;
    try {
      check();
    } catch (const Failed& f) {
      why = f.why;
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    if (why.empty()) {
      std::printf("PASS  %s\n", name);
    } else {
      std::printf("FAIL  %s: %s\n", name, why.c_str());
      ++failed;
    }
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
