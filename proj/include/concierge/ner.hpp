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

#ifndef CONCIERGE_NER_HPP_
#define CONCIERGE_NER_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "concierge/textproc.hpp"

namespace concierge::ner {

enum class PlaceKind { kCountry, kCity, kRegion, kHotel };

std::string_view to_string(PlaceKind kind);
std::optional<PlaceKind> parse_place_kind(std::string_view text);

struct GazetteerEntry {
  std::string id;
  std::string canonical_name;
  PlaceKind kind = PlaceKind::kCity;
  std::vector<std::string> aliases;  // normalized
  std::string country_code;          // ISO-3166 alpha-2
  double prior = 0.0;
  std::optional<std::string> parent_id;
};

// Closed destination set plus its alias index. Immutable once built.
class Gazetteer {
 public:
  Gazetteer() = default;
  // Throws std::invalid_argument on duplicate ids, negative priors or
  // unnormalized aliases.
  explicit Gazetteer(std::vector<GazetteerEntry> entries);

  const std::vector<GazetteerEntry>& entries() const { return entries_; }
  const GazetteerEntry* find(std::string_view id) const;

  // Entries carrying `alias`, in file order.
  std::vector<const GazetteerEntry*> candidates(std::string_view alias) const;

  std::size_t longest_alias_tokens() const { return longest_alias_tokens_; }

 private:
  std::vector<GazetteerEntry> entries_;
  std::map<std::string, std::size_t, std::less<>> by_id_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> alias_index_;
  std::size_t longest_alias_tokens_ = 0;
};

struct Mention {
  std::size_t start = 0;  // token index
  std::size_t end = 0;    // exclusive
  std::string surface;    // matched tokens joined by single spaces

  friend bool operator==(const Mention&, const Mention&) = default;
};

enum class Role { kNone, kOrigin, kDestination };

std::string_view to_string(Role role);

struct ResolvedEntity {
  Mention mention;
  std::string entry_id;
  double score = 0.0;
  Role role = Role::kNone;

  friend bool operator==(const ResolvedEntity&, const ResolvedEntity&) = default;
};

// Left-to-right longest match over the alias index; spans never overlap.
std::vector<Mention> recognize(const textproc::TokenSequence& tokens,
                               const Gazetteer& gazetteer);

// Argmax prior among entries sharing the surface alias, ties to the smallest
// id. Entries with zero prior never win; nullopt when no candidate remains.
std::optional<ResolvedEntity> resolve(const Mention& mention,
                                      const Gazetteer& gazetteer);

// Origin after "from", destination after "to"/"in"/"at", looking back at
// most two tokens and never across another mention. A lone unmarked mention
// becomes the destination when none is marked. The first mention per role
// keeps it; later ones drop to kNone.
std::vector<ResolvedEntity> assign_roles(std::vector<ResolvedEntity> entities,
                                         const textproc::TokenSequence& tokens);

}  // namespace concierge::ner

#endif  // CONCIERGE_NER_HPP_
