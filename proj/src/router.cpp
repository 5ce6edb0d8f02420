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

#include "concierge/router.hpp"

#include <stdexcept>

namespace concierge::router {

ActionDecision route(const RoutingInput& input, const Thresholds& thresholds) {
  const ner::ResolvedEntity* origin = nullptr;
  const ner::ResolvedEntity* destination = nullptr;
  for (const ner::ResolvedEntity& e : input.entities) {
    if (e.role == ner::Role::kOrigin) {
      if (origin) throw std::invalid_argument("more than one origin entity");
      origin = &e;
    } else if (e.role == ner::Role::kDestination) {
      if (destination) {
        throw std::invalid_argument("more than one destination entity");
      }
      destination = &e;
    }
  }

  intent::PreBookLabel prebook = input.prebook.value;
  if (input.prebook.confidence < thresholds.prebook) {
    prebook = intent::PreBookLabel::kNone;
  }
  PostBookLabel postbook = input.postbook.value;
  if (input.postbook.confidence < thresholds.postbook) {
    postbook = PostBookLabel::kUnknown;
  }

  if (prebook != intent::PreBookLabel::kNone) {
    if (destination == nullptr) return ActionDecision::clarify(Slot::kDestination);
    if (prebook == intent::PreBookLabel::kHotel) {
      return ActionDecision::search_hotels(destination->entry_id);
    }
    std::optional<std::string> origin_id;
    if (origin) origin_id = origin->entry_id;
    return ActionDecision::search_flights(destination->entry_id,
                                          std::move(origin_id));
  }

  if (input.keyword_hit) {
    if (std::holds_alternative<intent::SpecialAction>(*input.keyword_hit)) {
      return ActionDecision::covid_info();
    }
    return ActionDecision::open_faq(std::get<PostBookLabel>(*input.keyword_hit));
  }

  switch (postbook) {
    case PostBookLabel::kRequestHumanAgent:
      return ActionDecision::human_agent();
    case PostBookLabel::kGreeting:
      return ActionDecision::greeting();
    case PostBookLabel::kUnknown:
      return ActionDecision::unintelligible();
    default:
      return ActionDecision::open_faq(postbook);
  }
}

}  // namespace concierge::router
