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

#include "concierge/kernels.hpp"

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace concierge::kernels {
namespace {

EditTotals pair_totals(const TranscriptPair& pair) {
  const textproc::TokenSequence ref = textproc::tokenize(pair.reference);
  const textproc::TokenSequence hyp = textproc::tokenize(pair.hypothesis);
  const textproc::Alignment a = textproc::align(ref, hyp);
  EditTotals t;
  t.pairs = 1;
  t.reference_words = ref.size();
  t.correct = a.correct;
  t.substitutions = a.substitutions;
  t.deletions = a.deletions;
  t.insertions = a.insertions;
  return t;
}

void tally_pair(const TranscriptPair& pair,
                std::span<const std::string> targets,
                std::vector<WordTally>& tallies) {
  const textproc::TokenSequence ref = textproc::tokenize(pair.reference);
  bool any = false;
  for (const std::string& token : ref) {
    for (std::size_t t = 0; t < targets.size(); ++t) {
      if (token == targets[t]) {
        ++tallies[t].occurrences;
        any = true;
      }
    }
  }
  if (!any) return;
  const textproc::Alignment a =
      textproc::align(ref, textproc::tokenize(pair.hypothesis));
  for (const textproc::AlignedPair& op : a.ops) {
    if (op.op != textproc::EditOp::kSubstitute &&
        op.op != textproc::EditOp::kDelete) {
      continue;
    }
    for (std::size_t t = 0; t < targets.size(); ++t) {
      if (ref[op.ref] == targets[t]) ++tallies[t].errors;
    }
  }
}

}  // namespace

EditTotals& EditTotals::operator+=(const EditTotals& other) {
  pairs += other.pairs;
  reference_words += other.reference_words;
  correct += other.correct;
  substitutions += other.substitutions;
  deletions += other.deletions;
  insertions += other.insertions;
  return *this;
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

EditTotals edit_totals(std::span<const TranscriptPair> pairs) {
  const auto n = static_cast<std::ptrdiff_t>(pairs.size());
  std::uint64_t count = 0, ref_words = 0, correct = 0, subs = 0, dels = 0,
                ins = 0;
#pragma omp parallel for schedule(dynamic, 64) \
    reduction(+ : count, ref_words, correct, subs, dels, ins)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const EditTotals t = pair_totals(pairs[static_cast<std::size_t>(i)]);
    count += t.pairs;
    ref_words += t.reference_words;
    correct += t.correct;
    subs += t.substitutions;
    dels += t.deletions;
    ins += t.insertions;
  }
  return {count, ref_words, correct, subs, dels, ins};
}

std::vector<WordTally> word_tallies(std::span<const TranscriptPair> pairs,
                                    std::span<const std::string> targets) {
  std::vector<WordTally> totals(targets.size());
  const auto n = static_cast<std::ptrdiff_t>(pairs.size());
#pragma omp parallel
  {
    std::vector<WordTally> local(targets.size());
#pragma omp for schedule(dynamic, 64) nowait
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      tally_pair(pairs[static_cast<std::size_t>(i)], targets, local);
    }
#pragma omp critical(concierge_word_tallies)
    for (std::size_t t = 0; t < targets.size(); ++t) {
      totals[t].errors += local[t].errors;
      totals[t].occurrences += local[t].occurrences;
    }
  }
  return totals;
}

std::vector<textproc::TokenSequence> simulate_batch(
    std::span<const textproc::TokenSequence> references,
    const vtt::ConfusionModel& model, const std::set<std::string>& hinted,
    std::uint64_t base_seed) {
  std::vector<textproc::TokenSequence> out(references.size());
  const auto n = static_cast<std::ptrdiff_t>(references.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = vtt::simulate(references[k], model, hinted,
                           vtt::record_seed(base_seed, k));
  }
  return out;
}

namespace serial {

EditTotals edit_totals(std::span<const TranscriptPair> pairs) {
  EditTotals totals;
  for (const TranscriptPair& pair : pairs) totals += pair_totals(pair);
  return totals;
}

std::vector<WordTally> word_tallies(std::span<const TranscriptPair> pairs,
                                    std::span<const std::string> targets) {
  std::vector<WordTally> totals(targets.size());
  for (const TranscriptPair& pair : pairs) tally_pair(pair, targets, totals);
  return totals;
}

std::vector<textproc::TokenSequence> simulate_batch(
    std::span<const textproc::TokenSequence> references,
    const vtt::ConfusionModel& model, const std::set<std::string>& hinted,
    std::uint64_t base_seed) {
  std::vector<textproc::TokenSequence> out;
  out.reserve(references.size());
  for (std::size_t i = 0; i < references.size(); ++i) {
    out.push_back(vtt::simulate(references[i], model, hinted,
                                vtt::record_seed(base_seed, i)));
  }
  return out;
}

}  // namespace serial
}  // namespace concierge::kernels
