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

#ifndef CONCIERGE_KERNELS_HPP_
#define CONCIERGE_KERNELS_HPP_

// Batch kernels behind the evaluation harness. Each kernel has an OpenMP
// version (the default entry points) and a serial reference in
// kernels::serial; both must produce identical results for any input.
// All reductions are integer sums, so results never depend on thread count
// or scheduling.

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "concierge/textproc.hpp"
#include "concierge/vtt.hpp"

namespace concierge::kernels {

struct TranscriptPair {
  std::string id;
  std::string reference;
  std::string hypothesis;
};

struct EditTotals {
  std::uint64_t pairs = 0;
  std::uint64_t reference_words = 0;
  std::uint64_t correct = 0;
  std::uint64_t substitutions = 0;
  std::uint64_t deletions = 0;
  std::uint64_t insertions = 0;

  EditTotals& operator+=(const EditTotals& other);
  friend bool operator==(const EditTotals&, const EditTotals&) = default;
};

struct WordTally {
  std::uint64_t errors = 0;
  std::uint64_t occurrences = 0;
  friend bool operator==(const WordTally&, const WordTally&) = default;
};

EditTotals edit_totals(std::span<const TranscriptPair> pairs);

// For each target word: reference occurrences, and how many of them align
// to a Substitute or Delete.
std::vector<WordTally> word_tallies(std::span<const TranscriptPair> pairs,
                                    std::span<const std::string> targets);

// Record i is simulated with vtt::record_seed(base_seed, i).
std::vector<textproc::TokenSequence> simulate_batch(
    std::span<const textproc::TokenSequence> references,
    const vtt::ConfusionModel& model, const std::set<std::string>& hinted,
    std::uint64_t base_seed);

namespace serial {

EditTotals edit_totals(std::span<const TranscriptPair> pairs);
std::vector<WordTally> word_tallies(std::span<const TranscriptPair> pairs,
                                    std::span<const std::string> targets);
std::vector<textproc::TokenSequence> simulate_batch(
    std::span<const textproc::TokenSequence> references,
    const vtt::ConfusionModel& model, const std::set<std::string>& hinted,
    std::uint64_t base_seed);

}  // namespace serial

// Threads OpenMP would use for the parallel kernels (1 without OpenMP).
int max_threads();

}  // namespace concierge::kernels

#endif  // CONCIERGE_KERNELS_HPP_
