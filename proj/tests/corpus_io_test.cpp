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

#include "concierge/corpus_io.hpp"

#include <fstream>
#include <random>
#include <unistd.h>

#include <doctest.h>

using namespace concierge;
using io::LoadError;
using io::LoadErrorReason;
namespace fs = std::filesystem;

namespace {

fs::path data(const char* name) { return fs::path(CONCIERGE_DATA_DIR) / name; }

class TempFile {
 public:
  explicit TempFile(const std::string& content, const std::string& name = "f.txt") {
    static int counter = 0;
    dir_ = fs::temp_directory_path() /
           ("concierge-io-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::create_directories(dir_);
    path_ = dir_ / name;
    std::ofstream(path_, std::ios::binary) << content;
  }
  ~TempFile() { fs::remove_all(dir_); }
  const fs::path& path() const { return path_; }
  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
  fs::path path_;
};

template <typename F>
LoadError load_error(F&& f) {
  try {
    f();
  } catch (const LoadError& e) {
    return e;
  }
  FAIL("expected a LoadError");
  throw std::logic_error("unreachable");
}

const std::string kIntentsHeader = R"({"format":"concierge.intents","version":1})" "\n";

}  // namespace

TEST_CASE("labeled intents load and validate") {
  const TempFile ok(kIntentsHeader +
                    R"({"id":"1","text":"hello","intent":"greeting"})" "\n"
                    R"({"id":"2","text":"uh","intent":"unintelligible"})" "\n"
                    R"({"id":"3","text":"cancel it","intent":"cancel_booking"})" "\n");
  const auto rows = io::load_labeled_intents(ok.path());
  REQUIRE(rows.size() == 3);
  CHECK(rows[2] == io::LabeledIntent{"3", "cancel it", "cancel_booking"});

  const TempFile unknown(kIntentsHeader + R"({"id":"1","text":"x","intent":"foo"})" "\n");
  const LoadError e = load_error([&] { io::load_labeled_intents(unknown.path()); });
  CHECK(e.reason() == LoadErrorReason::kUnknownLabel);
  CHECK(e.line() == 2);
  CHECK(e.file() == unknown.path());

  std::string dup = kIntentsHeader;
  for (int i = 1; i <= 5; ++i) {
    dup += R"({"id":"r)" + std::to_string(i) + R"(","text":"x","intent":"greeting"})" "\n";
  }
  dup += R"({"id":"r3","text":"y","intent":"greeting"})" "\n";
  const TempFile duplicate(dup);
  const LoadError d = load_error([&] { io::load_labeled_intents(duplicate.path()); });
  CHECK(d.reason() == LoadErrorReason::kDuplicateId);
  CHECK(d.line() == 7);
}

TEST_CASE("strict records") {
  const TempFile extra(kIntentsHeader +
                       R"({"id":"1","text":"x","intent":"greeting","note":"hi"})" "\n");
  CHECK(load_error([&] { io::load_labeled_intents(extra.path()); }).reason() ==
        LoadErrorReason::kMalformedRecord);
  const TempFile missing(kIntentsHeader + R"({"id":"1","intent":"greeting"})" "\n");
  CHECK(load_error([&] { io::load_labeled_intents(missing.path()); }).line() == 2);
  const TempFile wrong_type(kIntentsHeader + R"({"id":1,"text":"x","intent":"greeting"})" "\n");
  CHECK(load_error([&] { io::load_labeled_intents(wrong_type.path()); }).reason() ==
        LoadErrorReason::kMalformedRecord);
  const TempFile garbage(kIntentsHeader + "{not json\n");
  CHECK(load_error([&] { io::load_labeled_intents(garbage.path()); }).line() == 2);
  const TempFile empty_id(kIntentsHeader + R"({"id":"","text":"x","intent":"greeting"})" "\n");
  CHECK(load_error([&] { io::load_labeled_intents(empty_id.path()); }).line() == 2);
}

TEST_CASE("headers are checked") {
  const TempFile none("");
  CHECK(load_error([&] { io::load_labeled_intents(none.path()); }).line() == 1);
  const TempFile wrong(R"({"format":"concierge.transcripts","version":1})" "\n");
  CHECK(load_error([&] { io::load_labeled_intents(wrong.path()); }).line() == 1);
  const TempFile version(R"({"format":"concierge.intents","version":2})" "\n");
  CHECK(load_error([&] { io::load_labeled_intents(version.path()); }).line() == 1);
  const LoadError absent = load_error([] { io::load_labeled_intents("/nonexistent/file.jsonl"); });
  CHECK(absent.line() == 1);
  CHECK(absent.reason() == LoadErrorReason::kMalformedRecord);
}

TEST_CASE("gazetteer invariants") {
  const std::string header = R"({"format":"concierge.gazetteer","version":1})" "\n";
  const TempFile negative(
      header +
      R"({"aliases":["x"],"country":"NL","id":"x","kind":"city","name":"X","prior":-0.5})" "\n");
  CHECK(load_error([&] { io::load_gazetteer(negative.path()); }).reason() ==
        LoadErrorReason::kInvariantViolation);
  const TempFile kind(
      header +
      R"({"aliases":["x"],"country":"NL","id":"x","kind":"moon","name":"X","prior":1})" "\n");
  CHECK(load_error([&] { io::load_gazetteer(kind.path()); }).line() == 2);
  const TempFile parent(
      header +
      R"({"aliases":["x"],"country":"NL","id":"x","kind":"city","name":"X","parent":"nope","prior":1})"
      "\n");
  CHECK(load_error([&] { io::load_gazetteer(parent.path()); }).reason() ==
        LoadErrorReason::kInvariantViolation);
  const TempFile dup(
      header +
      R"({"aliases":["x"],"country":"NL","id":"x","kind":"city","name":"X","prior":1})" "\n"
      R"({"aliases":["y"],"country":"NL","id":"x","kind":"city","name":"Y","prior":1})" "\n");
  const LoadError d = load_error([&] { io::load_gazetteer(dup.path()); });
  CHECK(d.reason() == LoadErrorReason::kDuplicateId);
  CHECK(d.line() == 3);
}

TEST_CASE("confusion invariants") {
  const std::string header =
      R"({"format":"concierge.confusion","hint_damping":0.5,"insertion_rate":0.0,"version":1})" "\n";
  const TempFile over(header + "booking\tbook:0.7,looking:0.5\n");
  const LoadError e = load_error([&] { io::load_confusion(over.path()); });
  CHECK(e.reason() == LoadErrorReason::kInvariantViolation);
  CHECK(e.line() == 2);
  const TempFile malformed(header + "booking\tbook=0.7\n");
  CHECK(load_error([&] { io::load_confusion(malformed.path()); }).reason() ==
        LoadErrorReason::kMalformedRecord);
  const TempFile rate(
      R"({"format":"concierge.confusion","hint_damping":0.5,"insertion_rate":1.0,"version":1})" "\n");
  CHECK(load_error([&] { io::load_confusion(rate.path()); }).line() == 1);
  const TempFile dup(header + "a\tb:0.1\na\tc:0.1\n");
  CHECK(load_error([&] { io::load_confusion(dup.path()); }).reason() ==
        LoadErrorReason::kDuplicateId);
}

TEST_CASE("keyword files") {
  const std::string header = R"({"format":"concierge.keywords","version":1})" "\n";
  const TempFile empty(header);
  CHECK(io::load_keywords(empty.path()).empty());
  const TempFile bad_target(header + "credit\tpay_me\n");
  CHECK(load_error([&] { io::load_keywords(bad_target.path()); }).reason() ==
        LoadErrorReason::kUnknownLabel);
  const TempFile unnormalized(header + "Credit\tpayments\n");
  CHECK(load_error([&] { io::load_keywords(unnormalized.path()); }).reason() ==
        LoadErrorReason::kInvariantViolation);
  const TempFile no_tab(header + "credit payments\n");
  CHECK(load_error([&] { io::load_keywords(no_tab.path()); }).reason() ==
        LoadErrorReason::kMalformedRecord);
}

TEST_CASE("lexicon and replay files") {
  const TempFile empty_value(R"({"format":"concierge.lexicon","language":"nl","version":1})" "\n"
                             R"({"dst":"","src":"ik"})" "\n");
  CHECK(load_error([&] { io::load_lexicon(empty_value.path()); }).reason() ==
        LoadErrorReason::kInvariantViolation);
  const TempFile dup(R"({"format":"concierge.replay","version":1})" "\n"
                     R"({"id":"u1","ref":"a"})" "\n"
                     R"({"id":"u1","ref":"b"})" "\n");
  CHECK(load_error([&] { io::load_replay(dup.path()); }).reason() ==
        LoadErrorReason::kDuplicateId);
  const auto corpus = io::load_replay(data("replay.jsonl"));
  CHECK(corpus.entries.at("u1").hypothesis_by_backend.at("tpv") ==
        "i need to look a hotel in paris");
  CHECK(corpus.entries.at("u2").hypothesis_by_backend.empty());
}

TEST_CASE("canonical fixtures round-trip byte for byte") {
  const auto same = [](const fs::path& p, const std::string& text) {
    INFO(p.string());
    CHECK(text == io::read_file(p));
  };
  same(data("gazetteer.jsonl"), io::serialize_gazetteer(io::load_gazetteer(data("gazetteer.jsonl"))));
  same(data("lexicon_nl.jsonl"), io::serialize_lexicon(io::load_lexicon(data("lexicon_nl.jsonl"))));
  same(data("keywords.tsv"), io::serialize_keywords(io::load_keywords(data("keywords.tsv"))));
  same(data("confusion.tsv"), io::serialize_confusion(io::load_confusion(data("confusion.tsv"))));
  same(data("hints.txt"), io::serialize_hints(io::load_hints(data("hints.txt"))));
  same(data("replay.jsonl"), io::serialize_replay(io::load_replay(data("replay.jsonl"))));
  for (const char* f : {"table1_pairs.jsonl", "table2_pairs.jsonl"}) {
    same(data(f), io::serialize_transcript_pairs(io::load_transcript_pairs(data(f))));
  }
  for (const char* f : {"table3_labels.jsonl", "intents_train.jsonl"}) {
    same(data(f), io::serialize_labeled_intents(io::load_labeled_intents(data(f))));
  }
  same(data("learned_model.json"),
       io::serialize_learned_model(io::load_learned_model(data("learned_model.json"))));
}

TEST_CASE("load inverts serialize on random records") {
  std::mt19937_64 rng(6);
  const auto& tax = intent::taxonomy();
  const std::string alphabet[] = {"a", "B", " ", "\xC3\xA9", "\"", "\\", "\t", "z"};
  auto text = [&] {
    std::string s;
    for (int k = 0; k < 1 + static_cast<int>(rng() % 12); ++k) s += alphabet[rng() % 8];
    return s;
  };
  for (int n = 0; n < 20; ++n) {
    std::vector<io::LabeledIntent> rows;
    std::vector<eval::TranscriptPair> pairs;
    for (int i = 0; i < 30; ++i) {
      rows.push_back({"id" + std::to_string(i), text(), tax[rng() % tax.size()]});
      pairs.push_back({"p" + std::to_string(i), text(), text()});
    }
    const TempFile a(io::serialize_labeled_intents(rows));
    CHECK(io::load_labeled_intents(a.path()) == rows);
    const TempFile b(io::serialize_transcript_pairs(pairs));
    const auto back = io::load_transcript_pairs(b.path());
    REQUIRE(back.size() == pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      CHECK(back[i].id == pairs[i].id);
      CHECK(back[i].reference == pairs[i].reference);
      CHECK(back[i].hypothesis == pairs[i].hypothesis);
    }
  }
}

TEST_CASE("confusion probabilities round-trip exactly") {
  vtt::ConfusionModel m;
  m.insertion_rate = 0.1 + 0.2;
  m.hint_damping = 1.0 / 3.0;
  m.entries["booking"] = {{"book", 0.1 + 0.7}, {"<del>", 1e-17}};
  const TempFile f(io::serialize_confusion(m));
  const auto back = io::load_confusion(f.path());
  CHECK(back.entries == m.entries);
  CHECK(back.insertion_rate == m.insertion_rate);
  CHECK(back.hint_damping == m.hint_damping);
}

TEST_CASE("learned model reload scores identically") {
  const auto model = io::load_learned_model(data("learned_model.json"));
  const TempFile f(io::serialize_learned_model(model), "model.json");
  const auto back = io::load_learned_model(f.path());
  CHECK(back.classes() == model.classes());
  CHECK(back.vocabulary() == model.vocabulary());
  for (const auto& doc : io::load_labeled_intents(data("intents_train.jsonl"))) {
    const auto tokens = textproc::tokenize(doc.text);
    CHECK(intent::classify_learned(back, tokens).scores ==
          intent::classify_learned(model, tokens).scores);
  }
}

TEST_CASE("config resolves paths against its directory") {
  const TempFile cfg(R"({"format":"concierge.config","version":1})" "\n"
                     R"({"backends":{"vtt":"simulated","translation":"identity","ner":"none","intent":"learned"},)"
                     R"("files":{"gazetteer":"g.jsonl","lexicons":{"nl":"sub/nl.jsonl"},"confusion":"/abs/c.tsv"},)"
                     R"("seed":99,"thresholds":{"prebook":0.25},"port":9000})" "\n",
                     "config.json");
  const PipelineConfig c = io::load_config(cfg.path());
  CHECK(c.vtt_backend == "simulated");
  CHECK(c.translation_backend == "identity");
  CHECK(c.ner_backend == "none");
  CHECK(c.intent_backend == "learned");
  CHECK(*c.gazetteer == cfg.dir() / "g.jsonl");
  CHECK(c.lexicons.at("nl") == cfg.dir() / "sub/nl.jsonl");
  CHECK(*c.confusion == fs::path("/abs/c.tsv"));
  CHECK(c.seed == 99);
  CHECK(c.prebook_threshold == 0.25);
  CHECK(c.port == 9000);
  CHECK(c.default_language == "en");

  const TempFile unknown(R"({"format":"concierge.config","version":1})" "\n"
                         R"({"colour":"blue"})" "\n");
  CHECK(load_error([&] { io::load_config(unknown.path()); }).reason() ==
        LoadErrorReason::kMalformedRecord);
}
