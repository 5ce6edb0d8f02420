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

#ifndef CONCIERGE_VTT_HPP_
#define CONCIERGE_VTT_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "concierge/textproc.hpp"

namespace concierge::vtt {

// Alternative word that stands for "the reference token is dropped".
inline constexpr std::string_view kDeletionMarker = "<del>";

struct Confusion {
  std::string alternative;  // kDeletionMarker for deletions
  double probability = 0.0;

  bool is_deletion() const { return alternative == kDeletionMarker; }
  friend bool operator==(const Confusion&, const Confusion&) = default;
};

// Per-word confusion rows. Residual row mass emits the word unchanged.
struct ConfusionModel {
  std::map<std::string, std::vector<Confusion>> entries;
  double insertion_rate = 0.0;
  double hint_damping = 1.0;

  // Empty string when the invariants hold, otherwise the first violation.
  std::string check() const;
  // Sorted words used as the spurious-insertion vocabulary.
  std::vector<std::string> insertion_vocabulary() const;
};

// Filler emitted for insertions when the model carries no vocabulary.
inline constexpr std::string_view kFallbackInsertion = "uh";

struct ReplayEntry {
  std::string reference;
  std::map<std::string, std::string> hypothesis_by_backend;
};

struct ReplayCorpus {
  std::map<std::string, ReplayEntry> entries;
};

class UnknownReplayId : public std::runtime_error {
 public:
  explicit UnknownReplayId(const std::string& id)
      : std::runtime_error("unknown replay id: " + id) {}
};

// Stored hypothesis for `backend_name` if present, else the reference text.
std::string transcribe_replay(const std::string& replay_ref,
                              const ReplayCorpus& corpus,
                              const std::string& backend_name);

// Deterministic generator used by the simulator. The seed-to-stream mapping
// is part of the release contract: splitmix64 seeding of a 64-bit Mersenne
// twister, uniform doubles from the top 53 bits of each draw.
class SimulationRng {
 public:
  explicit SimulationRng(std::uint64_t seed);
  double uniform();  // [0, 1)
  std::uint64_t next();

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

// Seed for the i-th record of a batch run.
inline std::uint64_t record_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(base ^ splitmix64(index + 0x51ED270B7A4C3E9Dull));
}

// Words appearing in any hint phrase (normalized).
std::set<std::string> hint_words(const std::vector<std::string>& hints);

// Per-token independent confusion. For every reference token one uniform
// draw picks an alternative by cumulative (possibly damped) probability,
// then one draw decides whether a spurious token follows it.
textproc::TokenSequence simulate(const textproc::TokenSequence& reference,
                                 const ConfusionModel& model,
                                 const std::set<std::string>& hinted_words,
                                 std::uint64_t seed);

textproc::TokenSequence simulate(const textproc::TokenSequence& reference,
                                 const ConfusionModel& model,
                                 const std::vector<std::string>& hints,
                                 std::uint64_t seed);

}  // namespace concierge::vtt

#endif  // CONCIERGE_VTT_HPP_
