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

#include "concierge/types.hpp"

#include <array>
#include <utility>

namespace concierge {
namespace {

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(
    const std::array<std::pair<Enum, std::string_view>, N>& table,
    std::string_view text) {
  for (const auto& [value, name] : table) {
    if (name == text) return value;
  }
  return std::nullopt;
}

template <typename Enum, std::size_t N>
std::string_view name_of(
    const std::array<std::pair<Enum, std::string_view>, N>& table,
    Enum value) {
  for (const auto& [v, name] : table) {
    if (v == value) return name;
  }
  return "?";
}

constexpr std::array<std::pair<PostBookLabel, std::string_view>, 8>
    kPostBookNames = {{
        {PostBookLabel::kCancelBooking, "cancel_booking"},
        {PostBookLabel::kChangeBooking, "change_booking"},
        {PostBookLabel::kPayments, "payments"},
        {PostBookLabel::kCheckBookingStatus, "check_booking_status"},
        {PostBookLabel::kRequestHumanAgent, "request_human_agent"},
        {PostBookLabel::kOtherPostBook, "other_post_book"},
        {PostBookLabel::kGreeting, "greeting"},
        {PostBookLabel::kUnknown, "unknown"},
    }};

constexpr std::array<std::pair<ActionKind, std::string_view>, 8>
    kActionNames = {{
        {ActionKind::kSearchHotels, "SearchHotels"},
        {ActionKind::kSearchFlights, "SearchFlights"},
        {ActionKind::kOpenFaq, "OpenFaq"},
        {ActionKind::kHumanAgent, "HumanAgent"},
        {ActionKind::kCovidInfo, "CovidInfo"},
        {ActionKind::kClarify, "Clarify"},
        {ActionKind::kGreeting, "Greeting"},
        {ActionKind::kUnintelligible, "Unintelligible"},
    }};

constexpr std::array<std::pair<Slot, std::string_view>, 2> kSlotNames = {{
    {Slot::kDestination, "destination"},
    {Slot::kOrigin, "origin"},
}};

constexpr std::array<std::pair<Stage, std::string_view>, 5> kStageNames = {{
    {Stage::kVtt, "vtt"},
    {Stage::kTranslation, "translation"},
    {Stage::kNer, "ner"},
    {Stage::kIntent, "intent"},
    {Stage::kRoute, "route"},
}};

constexpr std::array<std::pair<StageStatus, std::string_view>, 3>
    kStatusNames = {{
        {StageStatus::kOk, "ok"},
        {StageStatus::kDegraded, "degraded"},
        {StageStatus::kFailed, "failed"},
    }};

}  // namespace

std::string_view to_string(PostBookLabel label) {
  return name_of(kPostBookNames, label);
}
std::optional<PostBookLabel> parse_postbook_label(std::string_view text) {
  return lookup(kPostBookNames, text);
}
std::string_view to_string(ActionKind kind) {
  return name_of(kActionNames, kind);
}
std::optional<ActionKind> parse_action_kind(std::string_view text) {
  return lookup(kActionNames, text);
}
std::string_view to_string(Slot slot) { return name_of(kSlotNames, slot); }
std::optional<Slot> parse_slot(std::string_view text) {
  return lookup(kSlotNames, text);
}
std::string_view to_string(Stage stage) { return name_of(kStageNames, stage); }
std::optional<Stage> parse_stage(std::string_view text) {
  return lookup(kStageNames, text);
}
std::string_view to_string(StageStatus status) {
  return name_of(kStatusNames, status);
}
std::optional<StageStatus> parse_stage_status(std::string_view text) {
  return lookup(kStatusNames, text);
}

ActionDecision ActionDecision::search_hotels(std::string destination) {
  if (destination.empty()) {
    throw InvalidDecision("SearchHotels requires a destination");
  }
  ActionDecision d;
  d.kind_ = ActionKind::kSearchHotels;
  d.destination_ = std::move(destination);
  return d;
}

ActionDecision ActionDecision::search_flights(
    std::string destination, std::optional<std::string> origin) {
  if (destination.empty()) {
    throw InvalidDecision("SearchFlights requires a destination");
  }
  if (origin && origin->empty()) origin.reset();
  ActionDecision d;
  d.kind_ = ActionKind::kSearchFlights;
  d.destination_ = std::move(destination);
  d.origin_ = std::move(origin);
  return d;
}

ActionDecision ActionDecision::open_faq(PostBookLabel intent) {
  ActionDecision d;
  d.kind_ = ActionKind::kOpenFaq;
  d.faq_intent_ = intent;
  return d;
}

ActionDecision ActionDecision::clarify(Slot missing) {
  ActionDecision d;
  d.kind_ = ActionKind::kClarify;
  d.missing_slot_ = missing;
  return d;
}

ActionDecision ActionDecision::human_agent() {
  ActionDecision d;
  d.kind_ = ActionKind::kHumanAgent;
  return d;
}

ActionDecision ActionDecision::covid_info() {
  ActionDecision d;
  d.kind_ = ActionKind::kCovidInfo;
  return d;
}

ActionDecision ActionDecision::greeting() {
  ActionDecision d;
  d.kind_ = ActionKind::kGreeting;
  return d;
}

ActionDecision ActionDecision::unintelligible() { return ActionDecision(); }

bool ActionDecision::valid() const {
  const bool dest = destination_.has_value() && !destination_->empty();
  switch (kind_) {
    case ActionKind::kSearchHotels:
      return dest && !origin_ && !faq_intent_ && !missing_slot_;
    case ActionKind::kSearchFlights:
      return dest && !faq_intent_ && !missing_slot_;
    case ActionKind::kOpenFaq:
      return faq_intent_ && !destination_ && !origin_ && !missing_slot_;
    case ActionKind::kClarify:
      return missing_slot_ && !destination_ && !origin_ && !faq_intent_;
    default:
      return !destination_ && !origin_ && !faq_intent_ && !missing_slot_;
  }
}

std::string cap_snapshot(std::string text) {
  if (text.size() <= kSnapshotCapBytes) return text;
  std::size_t cut = kSnapshotCapBytes;
  // Back off over continuation bytes so the cut lands on a code point start.
  while (cut > 0 &&
         (static_cast<unsigned char>(text[cut]) & 0xC0) == 0x80) {
    --cut;
  }
  text.resize(cut);
  return text;
}

}  // namespace concierge
