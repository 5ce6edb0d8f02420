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

#ifndef CONCIERGE_CONFIG_HPP_
#define CONCIERGE_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace concierge {

// Backend names and resource paths for one pipeline. Paths are resolved
// against the directory of the config file at load time.
struct PipelineConfig {
  std::string vtt_backend = "passthrough";         // passthrough|replay|simulated
  std::string translation_backend = "lexicon";     // lexicon|identity
  std::string ner_backend = "gazetteer";           // gazetteer|none
  std::string intent_backend = "composite";        // composite|learned

  std::optional<std::filesystem::path> gazetteer;
  std::map<std::string, std::filesystem::path> lexicons;  // by language
  std::optional<std::filesystem::path> keywords;
  std::optional<std::filesystem::path> confusion;
  std::optional<std::filesystem::path> hints;
  std::optional<std::filesystem::path> replay;
  std::optional<std::filesystem::path> learned_model;
  std::optional<std::filesystem::path> request_log;

  std::string default_language = "en";
  std::uint64_t seed = 0;
  std::string replay_backend_name = "tpv";
  std::string experiment_salt = "concierge";
  double prebook_threshold = 0.0;
  double postbook_threshold = 0.0;
  int port = 8080;
};

}  // namespace concierge

#endif  // CONCIERGE_CONFIG_HPP_
