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

#include "concierge/ner.hpp"

#include <array>
#include <stdexcept>
#include <utility>

namespace concierge::ner {
namespace {

constexpr std::array<std::pair<PlaceKind, std::string_view>, 4> kKindNames = {{
    {PlaceKind::kCountry, "country"},
    {PlaceKind::kCity, "city"},
    {PlaceKind::kRegion, "region"},
    {PlaceKind::kHotel, "hotel"},
}};

constexpr std::size_t kRoleWindow = 2;

Role marker_role(std::string_view token) {
  if (token == "from") return Role::kOrigin;
  if (token == "to" || token == "in" || token == "at") return Role::kDestination;
  return Role::kNone;
}

}  // namespace

std::string_view to_string(PlaceKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<PlaceKind> parse_place_kind(std::string_view text) {
  for (const auto& [k, name] : kKindNames) {
    if (name == text) return k;
  }
  return std::nullopt;
}

std::string_view to_string(Role role) {
  switch (role) {
    case Role::kOrigin: return "origin";
    case Role::kDestination: return "destination";
    case Role::kNone: return "none";
  }
  return "?";
}

Gazetteer::Gazetteer(std::vector<GazetteerEntry> entries)
    : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const GazetteerEntry& e = entries_[i];
    if (e.id.empty()) throw std::invalid_argument("empty gazetteer id");
    if (!by_id_.emplace(e.id, i).second) {
      throw std::invalid_argument("duplicate gazetteer id '" + e.id + "'");
    }
    if (!(e.prior >= 0.0)) {
      throw std::invalid_argument("negative prior for '" + e.id + "'");
    }
    for (const std::string& alias : e.aliases) {
      const textproc::TokenSequence tokens = textproc::tokenize(alias);
      if (tokens.empty() || textproc::join(tokens) != alias) {
        throw std::invalid_argument("alias '" + alias + "' of '" + e.id +
                                    "' is not normalized");
      }
      auto& slot = alias_index_[alias];
      // An entry listing the same alias twice is indexed once.
      if (slot.empty() || slot.back() != i) slot.push_back(i);
      longest_alias_tokens_ = std::max(longest_alias_tokens_, tokens.size());
    }
  }
}

const GazetteerEntry* Gazetteer::find(std::string_view id) const {
  const auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &entries_[it->second];
}

std::vector<const GazetteerEntry*> Gazetteer::candidates(
    std::string_view alias) const {
  std::vector<const GazetteerEntry*> out;
  if (const auto it = alias_index_.find(alias); it != alias_index_.end()) {
    for (std::size_t i : it->second) out.push_back(&entries_[i]);
  }
  return out;
}

std::vector<Mention> recognize(const textproc::TokenSequence& tokens,
                               const Gazetteer& gazetteer) {
  std::vector<Mention> mentions;
  std::size_t i = 0;
  while (i < tokens.size()) {
    const std::size_t longest =
        std::min(gazetteer.longest_alias_tokens(), tokens.size() - i);
    bool matched = false;
    for (std::size_t len = longest; len >= 1; --len) {
      std::string surface = tokens[i];
      for (std::size_t k = 1; k < len; ++k) {
        surface.push_back(' ');
        surface.append(tokens[i + k]);
      }
      if (!gazetteer.candidates(surface).empty()) {
        mentions.push_back({i, i + len, std::move(surface)});
        i += len;
        matched = true;
        break;
      }
    }
    if (!matched) ++i;
  }
  return mentions;
}

std::optional<ResolvedEntity> resolve(const Mention& mention,
                                      const Gazetteer& gazetteer) {
  const GazetteerEntry* best = nullptr;
  for (const GazetteerEntry* e : gazetteer.candidates(mention.surface)) {
    if (e->prior <= 0.0) continue;
    if (best == nullptr || e->prior > best->prior ||
        (e->prior == best->prior && e->id < best->id)) {
      best = e;
    }
  }
  if (best == nullptr) return std::nullopt;
  return ResolvedEntity{mention, best->id, best->prior, Role::kNone};
}

std::vector<ResolvedEntity> assign_roles(std::vector<ResolvedEntity> entities,
                                         const textproc::TokenSequence& tokens) {
  std::vector<bool> marked(entities.size(), false);
  for (std::size_t m = 0; m < entities.size(); ++m) {
    ResolvedEntity& entity = entities[m];
    entity.role = Role::kNone;
    const std::size_t floor = m > 0 ? entities[m - 1].mention.end : 0;
    std::size_t pos = entity.mention.start;
    for (std::size_t step = 0; step < kRoleWindow && pos > floor; ++step) {
      --pos;
      if (pos >= tokens.size()) break;
      const Role role = marker_role(tokens[pos]);
      if (role != Role::kNone) {
        entity.role = role;
        marked[m] = true;
        break;
      }
    }
  }

  bool has_destination = false;
  std::size_t unmarked = 0;
  std::size_t last_unmarked = 0;
  for (std::size_t m = 0; m < entities.size(); ++m) {
    if (entities[m].role == Role::kDestination) has_destination = true;
    if (!marked[m]) {
      ++unmarked;
      last_unmarked = m;
    }
  }
  if (!has_destination && unmarked == 1) {
    entities[last_unmarked].role = Role::kDestination;
  }

  bool seen_origin = false;
  bool seen_destination = false;
  for (ResolvedEntity& entity : entities) {
    bool& seen = entity.role == Role::kOrigin ? seen_origin : seen_destination;
    if (entity.role == Role::kNone) continue;
    if (seen) {
      entity.role = Role::kNone;
    } else {
      seen = true;
    }
  }
  return entities;
}

}  // namespace concierge::ner
