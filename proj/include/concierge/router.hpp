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

#ifndef CONCIERGE_ROUTER_HPP_
#define CONCIERGE_ROUTER_HPP_

#include <optional>
#include <vector>

#include "concierge/intent.hpp"
#include "concierge/ner.hpp"
#include "concierge/types.hpp"

namespace concierge::router {

struct RoutingInput {
  intent::PreBookIntent prebook;
  intent::PostBookIntent postbook;
  std::optional<intent::KeywordTarget> keyword_hit;
  std::vector<ner::ResolvedEntity> entities;  // roles already assigned
};

// Minimum classifier confidence honoured by the router. Both default to 0,
// which disables thresholding.
struct Thresholds {
  double prebook = 0.0;
  double postbook = 0.0;
};

// Business rules, evaluated top-down:
//   1. hotel  + destination        -> SearchHotels
//   2. flight + destination        -> SearchFlights (origin optional)
//   3. hotel/flight, no destination -> Clarify(destination)
//   4. none + covid keyword        -> CovidInfo
//   5. none + intent keyword       -> OpenFaq(keyword intent)
//   6. none + request_human_agent  -> HumanAgent
//   7. none + greeting             -> Greeting
//   8. none + other known intent   -> OpenFaq(post-book intent)
//   9. otherwise                   -> Unintelligible
// Throws std::invalid_argument if the entities carry two origins or two
// destinations.
ActionDecision route(const RoutingInput& input, const Thresholds& thresholds = {});

}  // namespace concierge::router

#endif  // CONCIERGE_ROUTER_HPP_
