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

#include "concierge/vtt.hpp"

#include <cmath>

namespace concierge::vtt {

std::string ConfusionModel::check() const {
  if (!(insertion_rate >= 0.0 && insertion_rate < 1.0)) {
    return "insertion_rate must lie in [0, 1)";
  }
  if (!(hint_damping >= 0.0 && hint_damping <= 1.0)) {
    return "hint_damping must lie in [0, 1]";
  }
  for (const auto& [word, row] : entries) {
    if (word.empty()) return "empty confusion word";
    double total = 0.0;
    for (const Confusion& c : row) {
      if (c.alternative.empty()) return "empty alternative for '" + word + "'";
      if (!(c.probability >= 0.0 && c.probability <= 1.0)) {
        return "probability outside [0, 1] for '" + word + "'";
      }
      total += c.probability;
    }
    // Rows are written with a handful of decimals; allow rounding slack.
    if (total > 1.0 + 1e-9) {
      return "probabilities for '" + word + "' sum to more than 1";
    }
  }
  return {};
}

std::vector<std::string> ConfusionModel::insertion_vocabulary() const {
  std::set<std::string> words;
  for (const auto& [word, row] : entries) {
    words.insert(word);
    for (const Confusion& c : row) {
      if (!c.is_deletion()) words.insert(c.alternative);
    }
  }
  return {words.begin(), words.end()};
}

std::string transcribe_replay(const std::string& replay_ref,
                              const ReplayCorpus& corpus,
                              const std::string& backend_name) {
  const auto it = corpus.entries.find(replay_ref);
  if (it == corpus.entries.end()) throw UnknownReplayId(replay_ref);
  const auto hyp = it->second.hypothesis_by_backend.find(backend_name);
  if (hyp != it->second.hypothesis_by_backend.end()) return hyp->second;
  return it->second.reference;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

SimulationRng::SimulationRng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

std::uint64_t SimulationRng::next() { return engine_(); }

double SimulationRng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::set<std::string> hint_words(const std::vector<std::string>& hints) {
  std::set<std::string> words;
  for (const std::string& phrase : hints) {
    for (std::string& token : textproc::tokenize(phrase)) {
      words.insert(std::move(token));
    }
  }
  return words;
}

textproc::TokenSequence simulate(const textproc::TokenSequence& reference,
                                 const ConfusionModel& model,
                                 const std::set<std::string>& hinted_words,
                                 std::uint64_t seed) {
  SimulationRng rng(seed);
  const std::vector<std::string> vocabulary =
      model.insertion_rate > 0.0 ? model.insertion_vocabulary()
                                 : std::vector<std::string>{};
  textproc::TokenSequence out;
  out.reserve(reference.size());
  for (const std::string& token : reference) {
    const double draw = rng.uniform();
    const Confusion* chosen = nullptr;
    if (const auto row = model.entries.find(token); row != model.entries.end()) {
      const double scale =
          hinted_words.contains(token) ? model.hint_damping : 1.0;
      double cumulative = 0.0;
      for (const Confusion& c : row->second) {
        cumulative += c.probability * scale;
        if (draw < cumulative) {
          chosen = &c;
          break;
        }
      }
    }
    if (chosen == nullptr) {
      out.push_back(token);
    } else if (!chosen->is_deletion()) {
      out.push_back(chosen->alternative);
    }

    if (rng.uniform() < model.insertion_rate) {
      if (vocabulary.empty()) {
        out.emplace_back(kFallbackInsertion);
      } else {
        out.push_back(vocabulary[rng.next() % vocabulary.size()]);
      }
    }
  }
  return out;
}

textproc::TokenSequence simulate(const textproc::TokenSequence& reference,
                                 const ConfusionModel& model,
                                 const std::vector<std::string>& hints,
                                 std::uint64_t seed) {
  return simulate(reference, model, hint_words(hints), seed);
}

}  // namespace concierge::vtt
