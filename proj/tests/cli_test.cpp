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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <doctest.h>
#include <json.hpp>

#include "concierge/json_codec.hpp"

using nlohmann::json;
using namespace concierge;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(CONCIERGE_CLI_PATH) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const char* name) { return std::string(CONCIERGE_DATA_DIR) + "/" + name; }

std::string config() { return "--config " + data("config.json"); }

std::string tmp(const std::string& name) {
  return (std::filesystem::temp_directory_path() /
          ("concierge-cli-" + std::to_string(::getpid()) + "-" + name))
      .string();
}

}  // namespace

TEST_CASE("interpret") {
  auto r = run("interpret " + config() + " --json --text 'I need to book a hotel in Paris'");
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(codec::decision_from_json(doc["action"]) == ActionDecision::search_hotels("paris-fr"));
  CHECK(codec::trace_from_json(doc["trace"]).records.size() == 5);

  r = run("interpret " + config() + " --text 'flight from london to paris'");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("action SearchFlights destination=paris-fr origin=london-gb\n", 0) == 0);

  r = run("interpret " + config() + " --json --lang nl --text 'ik wil een hotel in Parijs'");
  CHECK(json::parse(r.out)["action"]["destination"] == "paris-fr");

  r = run("interpret " + config() + " --json --replay missing --text x");
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["action"]["kind"] == "Unintelligible");

  r = run("interpret " + config() + " --json --variant learned --text 'cancel my booking'");
  CHECK(json::parse(r.out)["action"]["faq_intent"] == "cancel_booking");
}

TEST_CASE("interpret reads stdin when --text is absent") {
  const std::string cmd = "printf 'coronavirus\\n' | " + std::string(CONCIERGE_CLI_PATH) +
                          " interpret --json " + config();
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  CHECK(::pclose(pipe) == 0);
  CHECK(json::parse(out)["action"]["kind"] == "CovidInfo");
}

TEST_CASE("eval wer") {
  auto r = run("eval wer --pairs " + data("table2_pairs.jsonl"));
  CHECK(r.code == 0);
  CHECK(r.out.find("WER 20.00%") != std::string::npos);

  r = run("eval wer --json --pairs " + data("table1_pairs.jsonl") +
          " --words booking,cancellation --words refund");
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  const auto wer = codec::wer_report_from_json(doc["wer"]);
  CHECK(codec::to_json(wer) == doc["wer"]);
  REQUIRE(doc["words"].size() == 3);
  CHECK(codec::word_errors_from_json(doc["words"][0]).formatted == "31/415 (7.5%)");
  CHECK(codec::word_errors_from_json(doc["words"][1]).formatted == "23/108 (21.3%)");
  CHECK(codec::word_errors_from_json(doc["words"][2]).formatted == "0/0 (\xE2\x80\x93)");
}

TEST_CASE("report distribution") {
  auto r = run("report distribution --labels " + data("table3_labels.jsonl") +
               " --exclude unintelligible");
  CHECK(r.code == 0);
  for (const char* pct : {"66.9%", "8.7%", "7.1%", "3.0%", "1.9%", "10.0%", "2.4%"}) {
    CHECK(r.out.find(pct) != std::string::npos);
  }
  r = run("report distribution --json --labels " + data("table3_labels.jsonl") +
          " --exclude unintelligible");
  const json doc = json::parse(r.out);
  const auto report = codec::distribution_from_json(doc);
  CHECK(report.excluded_count == 667);
  CHECK(codec::to_json(report) == doc);

  r = run("report distribution --labels " + data("table3_labels.jsonl") +
          " --exclude pre_book,request_human_agent,check_booking_status,payments,"
          "change_booking,other_post_book,greeting,unintelligible");
  CHECK(r.code == 2);
}

TEST_CASE("compare experiment") {
  auto r = run("compare experiment --a 50,1000 --b 50,1000");
  CHECK(r.code == 0);
  CHECK(r.out.find("not significant (z=0.00)") != std::string::npos);
  r = run("compare experiment --json --a 60,500 --b 90,500");
  const json doc = json::parse(r.out);
  const auto c = codec::comparison_from_json(doc);
  CHECK(c.significant_at_5pct);
  CHECK(codec::to_json(c) == doc);
  CHECK(run("compare experiment --a 0,0 --b 1,2").code == 2);
  CHECK(run("compare experiment --a 5 --b 1,2").code == 1);
  CHECK(run("compare experiment --a 5,4 --b 1,2").code == 2);
}

TEST_CASE("eval intents") {
  const std::string pred = tmp("composite.jsonl");
  REQUIRE(run("classify " + config() + " --corpus " + data("intents_train.jsonl") + " --out " +
              pred)
              .code == 0);
  auto r = run("eval intents --gold " + data("intents_train.jsonl") + " --pred " + pred);
  CHECK(r.code == 0);
  CHECK(r.out.rfind("Intent", 0) == 0);
  r = run("eval intents --json --gold " + data("intents_train.jsonl") + " --pred " + pred);
  const json doc = json::parse(r.out);
  REQUIRE(doc.size() == 1);
  for (const auto& row : doc[0]["classes"]) {
    CHECK(codec::to_json(codec::class_metrics_from_json(row)) == row);
  }
  // Predictions for a different corpus cannot be joined.
  CHECK(run("eval intents --gold " + data("table3_labels.jsonl") + " --pred " + pred).code == 2);
  std::filesystem::remove(pred);
}

TEST_CASE("simulate vtt") {
  const std::string args = "simulate vtt --refs " + data("replay.jsonl") + " --confusion " +
                           data("confusion.tsv") + " --hints " + data("hints.txt") + " --seed 7";
  const auto a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind(R"({"format":"concierge.transcripts","version":1})", 0) == 0);
  const std::string out = tmp("sim.jsonl");
  REQUIRE(run(args + " --out " + out).code == 0);
  CHECK(run("eval wer --pairs " + out).code == 0);
  std::filesystem::remove(out);
}

TEST_CASE("train writes a loadable model") {
  const std::string out = tmp("model.json");
  REQUIRE(run("train --corpus " + data("intents_train.jsonl") + " --out " + out).code == 0);
  std::ifstream a(out), b(data("learned_model.json"));
  const std::string fresh((std::istreambuf_iterator<char>(a)), {});
  const std::string shipped((std::istreambuf_iterator<char>(b)), {});
  CHECK(fresh == shipped);
  std::filesystem::remove(out);
  CHECK(run("train --corpus " + data("intents_train.jsonl") + " --alpha 0").code == 1);
}

TEST_CASE("corrupt input exits 1 with no output") {
  const std::string bad = tmp("bad.jsonl");
  std::ofstream(bad) << R"({"format":"concierge.intents","version":1})" "\n"
                     << R"({"id":"1","text":"x","intent":"foo"})" "\n";
  const auto r = run("report distribution --labels " + bad);
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  CHECK(run("eval wer --pairs " + bad).code == 1);
  CHECK(run("eval wer --pairs /nonexistent").code == 1);
  CHECK(run("interpret --config /nonexistent --text x").code == 1);
  CHECK(run("interpret " + config() + " --variant nope --text x").code == 1);
  CHECK(run("frobnicate").code == 1);
  CHECK(run("").code == 1);
  std::filesystem::remove(bad);
}

TEST_CASE("eval preconditions exit 2") {
  const std::string empty = tmp("empty.jsonl");
  std::ofstream(empty) << R"({"format":"concierge.transcripts","version":1})" "\n";
  CHECK(run("eval wer --pairs " + empty).code == 2);
  std::filesystem::remove(empty);
}

TEST_CASE("serve requires a config") {
  const std::string cmd = "env -u CONCIERGE_CONFIG " + std::string(CONCIERGE_CLI_PATH) +
                          " serve 2>/dev/null";
  const int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 1);
}
