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

#include "concierge/service.hpp"

#include <fstream>
#include <sstream>
#include <thread>
#include <unistd.h>

#include <doctest.h>
#include <httplib.h>

#include "concierge/corpus_io.hpp"
#include "concierge/json_codec.hpp"

using namespace concierge;
using namespace concierge::service;
using nlohmann::json;

namespace {

std::shared_ptr<const pipeline::Pipeline> shipped_pipeline() {
  static const auto p = std::make_shared<const pipeline::Pipeline>(pipeline::Pipeline::from_config(
      io::load_config(std::string(CONCIERGE_DATA_DIR) + "/config.json")));
  return p;
}

InterpretRequest request(std::string text, std::optional<std::string> user = std::nullopt) {
  InterpretRequest r;
  r.text = std::move(text);
  r.lang = "en";
  r.user_id = std::move(user);
  return r;
}

// Durations are wall-clock; everything else must match between calls.
json without_durations(json response) {
  for (auto& r : response["trace"]["records"]) r.erase("duration_ms");
  return response;
}

struct RunningServer {
  explicit RunningServer(std::shared_ptr<Service> svc) : server(std::move(svc)) {
    port = server.bind("127.0.0.1", 0);
    REQUIRE(port > 0);
    thread = std::thread([this] { server.serve(); });
    server.wait_until_ready();
  }
  ~RunningServer() {
    server.stop();
    thread.join();
  }
  HttpServer server;
  int port = -1;
  std::thread thread;
};

}  // namespace

TEST_CASE("variant assignment is deterministic and balanced") {
  CHECK(assign_variant("user-1", "s").variant == assign_variant("user-1", "s").variant);
  CHECK(assign_variant("user-1", "s").source == VariantSource::kAssigned);
  const auto empty = assign_variant("", "s");
  CHECK(empty.variant == pipeline::IntentArm::kComposite);
  CHECK(empty.source == VariantSource::kDefault);

  int learned = 0;
  int moved = 0;
  for (int i = 0; i < 10000; ++i) {
    const std::string id = "user-" + std::to_string(i);
    const auto v = assign_variant(id, "concierge").variant;
    learned += v == pipeline::IntentArm::kLearned;
    moved += v != assign_variant(id, "other-salt").variant;
  }
  CHECK(learned >= 4800);
  CHECK(learned <= 5200);
  // A new salt reshuffles roughly half the users.
  CHECK(moved > 4000);
  CHECK(moved < 6000);
}

TEST_CASE("bucket hash is FNV-1a then splitmix64") {
  // FNV-1a 64 of "s\0u", computed byte by byte here.
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : std::string("s\0u", 3)) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  CHECK(bucket_hash("u", "s") == vtt::splitmix64(h));
}

TEST_CASE("request parsing is strict") {
  const auto r = parse_interpret_request(
      R"({"text":"hi","lang":"nl","user_id":"u","variant_override":"learned","replay_ref":"u1"})");
  CHECK(r.text == "hi");
  CHECK(*r.lang == "nl");
  CHECK(*r.user_id == "u");
  CHECK(*r.variant_override == pipeline::IntentArm::kLearned);
  CHECK(*r.replay_ref == "u1");
  CHECK_FALSE(parse_interpret_request(R"({"text":""})").lang);
  CHECK_THROWS_AS(parse_interpret_request("not json"), std::invalid_argument);
  CHECK_THROWS_AS(parse_interpret_request("[]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_interpret_request(R"({"lang":"en"})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_interpret_request(R"({"text":5})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_interpret_request(R"({"text":"x","extra":1})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_interpret_request(R"({"text":"x","variant_override":"c"})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_interpret_request(R"({"text":"x","lang":""})"), std::invalid_argument);
}

TEST_CASE("service needs both arms") {
  PipelineConfig c = io::load_config(std::string(CONCIERGE_DATA_DIR) + "/config.json");
  c.learned_model.reset();
  auto p = std::make_shared<const pipeline::Pipeline>(pipeline::Pipeline::from_config(c));
  CHECK_THROWS_AS(Service(p, {}), pipeline::ConfigError);
}

TEST_CASE("interpret picks the variant and logs each call") {
  std::ostringstream log;
  Service svc(shipped_pipeline(), {"salt", &log});

  const auto hotel = svc.interpret(request("I need to book a hotel in Paris"));
  CHECK(hotel.action == ActionDecision::search_hotels("paris-fr"));
  CHECK(hotel.variant.source == VariantSource::kDefault);
  CHECK(hotel.variant.variant == pipeline::IntentArm::kComposite);

  CHECK(svc.interpret(request("")).action == ActionDecision::unintelligible());
  CHECK(svc.interpret(request("credit question")).action ==
        ActionDecision::open_faq(PostBookLabel::kPayments));

  InterpretRequest forced = request("hello", "user-9");
  forced.variant_override = pipeline::IntentArm::kLearned;
  const auto f = svc.interpret(forced);
  CHECK(f.variant.variant == pipeline::IntentArm::kLearned);
  CHECK(f.variant.source == VariantSource::kOverride);
  CHECK(f.trace.records.at(3).output_snapshot.find("\"arm\":\"learned\"") != std::string::npos);

  const auto assigned = svc.interpret(request("hello", "user-9"));
  CHECK(assigned.variant.source == VariantSource::kAssigned);
  CHECK(assigned.variant.variant == assign_variant("user-9", "salt").variant);

  std::istringstream lines(log.str());
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    const json j = json::parse(line);
    CHECK(j.contains("utterance_id"));
    CHECK(j.contains("variant"));
    CHECK(j.contains("action"));
    ++count;
  }
  CHECK(count == 5);
}

TEST_CASE("degraded paths never raise") {
  Service svc(shipped_pipeline(), {});
  InterpretRequest replay = request("anything");
  replay.replay_ref = "missing";
  const auto r = svc.interpret(replay);
  CHECK(r.action == ActionDecision::unintelligible());
  CHECK(r.trace.records.at(0).status == StageStatus::kFailed);
}

TEST_CASE("identical requests give identical responses") {
  Service svc(shipped_pipeline(), {});
  for (const char* text : {"flight from london to paris", "hello", "", "ik wil een hotel"}) {
    InterpretRequest a = request(text, "u-1");
    const json first = without_durations(to_json(svc.interpret(a)));
    const json second = without_durations(to_json(svc.interpret(a)));
    CHECK(first == second);
  }
}

TEST_CASE("metrics add up") {
  Service svc(shipped_pipeline(), {});
  for (int i = 0; i < 50; ++i) svc.interpret(request("hello", "u" + std::to_string(i)));
  svc.interpret(request("credit"));
  const json m = svc.metrics();
  CHECK(m["requests_total"] == 51);
  CHECK(m["requests_by_variant"]["composite"].get<int>() +
            m["requests_by_variant"]["learned"].get<int>() ==
        51);
  int by_action = 0;
  for (const auto& [k, v] : m["requests_by_action"].items()) by_action += v.get<int>();
  CHECK(by_action == 51);
  CHECK(m["requests_by_action"]["OpenFaq"] == 1);
}

TEST_CASE("file digests are SHA-256") {
  const auto path = std::filesystem::temp_directory_path() /
                    ("concierge-digest-" + std::to_string(::getpid()));
  std::ofstream(path, std::ios::binary) << "abc";
  CHECK(file_digest(path) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  std::filesystem::remove(path);
  CHECK(file_digest("/nonexistent") == "");

  Service svc(shipped_pipeline(), {});
  const json c = svc.config();
  CHECK(c["backends"]["vtt"] == "replay");
  CHECK(c["files"]["gazetteer"]["sha256"].get<std::string>().size() == 64);
  CHECK(c["files"].contains("lexicon.nl"));
  CHECK(c["arms"]["learned"]["intent"] == "learned");
}

TEST_CASE("HTTP endpoints") {
  auto svc = std::make_shared<Service>(shipped_pipeline(), ServiceOptions{});
  RunningServer running(svc);
  httplib::Client client("127.0.0.1", running.port);

  auto health = client.Get("/v1/health");
  REQUIRE(health);
  CHECK(health->status == 200);
  CHECK(json::parse(health->body) == json{{"status", "ok"}});

  auto post = [&](const std::string& body) {
    auto res = client.Post("/v1/interpret", body, "application/json");
    REQUIRE(res);
    return std::make_pair(res->status, json::parse(res->body));
  };
  auto [status, body] = post(R"({"text":"I need to book a hotel in Paris","lang":"en"})");
  CHECK(status == 200);
  CHECK(codec::decision_from_json(body["action"]) == ActionDecision::search_hotels("paris-fr"));
  CHECK(body["variant"] == "composite");
  CHECK(body["variant_source"] == "default");
  CHECK(body["trace"]["records"].size() == 5);

  CHECK(post(R"({"text":"","lang":"en"})").second["action"]["kind"] == "Unintelligible");
  CHECK(post(R"({"text":"credit question","lang":"en"})").second["action"] ==
        json{{"kind", "OpenFaq"}, {"faq_intent", "payments"}});
  CHECK(post(R"({"text":"x","replay_ref":"missing"})").first == 200);

  const auto bad = post(R"({"txt":"x"})");
  CHECK(bad.first == 400);
  CHECK(bad.second.contains("error"));
  CHECK(post("{").first == 400);

  auto config = client.Get("/v1/config");
  REQUIRE(config);
  CHECK(json::parse(config->body)["default_arm"] == "composite");

  auto metrics = client.Get("/v1/metrics");
  REQUIRE(metrics);
  CHECK(json::parse(metrics->body)["requests_total"] == 4);
}

TEST_CASE("concurrent HTTP requests are all counted") {
  auto svc = std::make_shared<Service>(shipped_pipeline(), ServiceOptions{});
  RunningServer running(svc);
  std::vector<std::thread> clients;
  std::atomic<int> ok{0};
  for (int w = 0; w < 4; ++w) {
    clients.emplace_back([&, w] {
      httplib::Client client("127.0.0.1", running.port);
      for (int i = 0; i < 25; ++i) {
        const json body{{"text", "flight from london to paris"},
                        {"user_id", "w" + std::to_string(w) + "-" + std::to_string(i)}};
        auto res = client.Post("/v1/interpret", body.dump(), "application/json");
        if (res && res->status == 200 &&
            json::parse(res->body)["action"]["kind"] == "SearchFlights") {
          ++ok;
        }
      }
    });
  }
  for (auto& c : clients) c.join();
  CHECK(ok == 100);
  const json m = svc->metrics();
  CHECK(m["requests_total"] == 100);
  CHECK(m["requests_by_variant"]["composite"].get<int>() +
            m["requests_by_variant"]["learned"].get<int>() ==
        100);
}
