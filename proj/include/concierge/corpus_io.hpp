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

#ifndef CONCIERGE_CORPUS_IO_HPP_
#define CONCIERGE_CORPUS_IO_HPP_

// Loaders and canonical writers for every on-disk format. Each file starts
// with a one-line JSON header {"format": ..., "version": 1}. Loading is
// all-or-nothing: the first violation throws LoadError and nothing is
// returned.

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "concierge/config.hpp"
#include "concierge/eval.hpp"
#include "concierge/intent.hpp"
#include "concierge/ner.hpp"
#include "concierge/translation.hpp"
#include "concierge/vtt.hpp"

namespace concierge::io {

inline constexpr int kFormatVersion = 1;

namespace format {
inline constexpr std::string_view kReplay = "concierge.replay";
inline constexpr std::string_view kTranscripts = "concierge.transcripts";
inline constexpr std::string_view kIntents = "concierge.intents";
inline constexpr std::string_view kGazetteer = "concierge.gazetteer";
inline constexpr std::string_view kLexicon = "concierge.lexicon";
inline constexpr std::string_view kKeywords = "concierge.keywords";
inline constexpr std::string_view kConfusion = "concierge.confusion";
inline constexpr std::string_view kHints = "concierge.hints";
inline constexpr std::string_view kConfig = "concierge.config";
inline constexpr std::string_view kLearnedModel = "concierge.learned_model";
}  // namespace format

enum class LoadErrorReason {
  kMalformedRecord,
  kDuplicateId,
  kUnknownLabel,
  kInvariantViolation,
};

std::string_view to_string(LoadErrorReason reason);

class LoadError : public std::runtime_error {
 public:
  LoadError(std::filesystem::path file, std::size_t line,
            LoadErrorReason reason, std::string detail);

  const std::filesystem::path& file() const { return file_; }
  std::size_t line() const { return line_; }
  LoadErrorReason reason() const { return reason_; }
  const std::string& detail() const { return detail_; }

 private:
  std::filesystem::path file_;
  std::size_t line_;
  LoadErrorReason reason_;
  std::string detail_;
};

struct LabeledIntent {
  std::string id;
  std::string text;
  std::string intent;

  friend bool operator==(const LabeledIntent&, const LabeledIntent&) = default;
};

std::vector<LabeledIntent> load_labeled_intents(const std::filesystem::path& path);
std::vector<eval::TranscriptPair> load_transcript_pairs(
    const std::filesystem::path& path);
ner::Gazetteer load_gazetteer(const std::filesystem::path& path);
translation::Lexicon load_lexicon(const std::filesystem::path& path);
std::vector<intent::KeywordRule> load_keywords(const std::filesystem::path& path);
vtt::ConfusionModel load_confusion(const std::filesystem::path& path);
vtt::ReplayCorpus load_replay(const std::filesystem::path& path);
std::vector<std::string> load_hints(const std::filesystem::path& path);
intent::LearnedModel load_learned_model(const std::filesystem::path& path);
PipelineConfig load_config(const std::filesystem::path& path);

// Canonical serializations; load(serialize(x)) == x and, for files already
// in canonical form, serialize(load(f)) reproduces f byte for byte.
std::string serialize_labeled_intents(const std::vector<LabeledIntent>& records);
std::string serialize_transcript_pairs(
    const std::vector<eval::TranscriptPair>& pairs);
std::string serialize_gazetteer(const ner::Gazetteer& gazetteer);
std::string serialize_lexicon(const translation::Lexicon& lexicon);
std::string serialize_keywords(const std::vector<intent::KeywordRule>& rules);
std::string serialize_confusion(const vtt::ConfusionModel& model);
std::string serialize_replay(const vtt::ReplayCorpus& corpus);
std::string serialize_hints(const std::vector<std::string>& hints);
std::string serialize_learned_model(const intent::LearnedModel& model);

// Reads a whole file; throws LoadError when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

}  // namespace concierge::io

#endif  // CONCIERGE_CORPUS_IO_HPP_
