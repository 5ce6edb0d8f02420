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

#ifndef CONCIERGE_TYPES_HPP_
#define CONCIERGE_TYPES_HPP_

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace concierge {

// Post-book intent taxonomy. The order of the enumerators is the display
// order used by the distribution and per-class reports.
enum class PostBookLabel {
  kCancelBooking,
  kChangeBooking,
  kPayments,
  kCheckBookingStatus,
  kRequestHumanAgent,
  kOtherPostBook,
  kGreeting,
  kUnknown,
};

inline constexpr PostBookLabel kAllPostBookLabels[] = {
    PostBookLabel::kCancelBooking,      PostBookLabel::kChangeBooking,
    PostBookLabel::kPayments,           PostBookLabel::kCheckBookingStatus,
    PostBookLabel::kRequestHumanAgent,  PostBookLabel::kOtherPostBook,
    PostBookLabel::kGreeting,           PostBookLabel::kUnknown,
};

std::string_view to_string(PostBookLabel label);
std::optional<PostBookLabel> parse_postbook_label(std::string_view text);

enum class ActionKind {
  kSearchHotels,
  kSearchFlights,
  kOpenFaq,
  kHumanAgent,
  kCovidInfo,
  kClarify,
  kGreeting,
  kUnintelligible,
};

std::string_view to_string(ActionKind kind);
std::optional<ActionKind> parse_action_kind(std::string_view text);

enum class Slot { kDestination, kOrigin };

std::string_view to_string(Slot slot);
std::optional<Slot> parse_slot(std::string_view text);

// Thrown when an ActionDecision would violate its slot discipline.
class InvalidDecision : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The routed action for one utterance. Instances can only be built through
// the named factories, each of which enforces the slot rules of its kind.
class ActionDecision {
 public:
  static ActionDecision search_hotels(std::string destination);
  static ActionDecision search_flights(std::string destination,
                                       std::optional<std::string> origin);
  static ActionDecision open_faq(PostBookLabel intent);
  static ActionDecision clarify(Slot missing);
  static ActionDecision human_agent();
  static ActionDecision covid_info();
  static ActionDecision greeting();
  static ActionDecision unintelligible();

  ActionKind kind() const { return kind_; }
  const std::optional<std::string>& destination() const { return destination_; }
  const std::optional<std::string>& origin() const { return origin_; }
  const std::optional<PostBookLabel>& faq_intent() const { return faq_intent_; }
  const std::optional<Slot>& missing_slot() const { return missing_slot_; }

  // Checks the slot rules; used after deserialization.
  bool valid() const;

  friend bool operator==(const ActionDecision&, const ActionDecision&) = default;

 private:
  ActionDecision() = default;

  ActionKind kind_ = ActionKind::kUnintelligible;
  std::optional<std::string> destination_;
  std::optional<std::string> origin_;
  std::optional<PostBookLabel> faq_intent_;
  std::optional<Slot> missing_slot_;
};

struct Utterance {
  std::string id;
  std::string text;
  std::string language = "en";
  std::optional<std::string> replay_ref;
  std::chrono::system_clock::time_point received_at =
      std::chrono::system_clock::now();
};

enum class Stage { kVtt, kTranslation, kNer, kIntent, kRoute };
enum class StageStatus { kOk, kDegraded, kFailed };

std::string_view to_string(Stage stage);
std::string_view to_string(StageStatus status);
std::optional<Stage> parse_stage(std::string_view text);
std::optional<StageStatus> parse_stage_status(std::string_view text);

inline constexpr std::size_t kSnapshotCapBytes = 4096;

struct StageRecord {
  Stage stage = Stage::kVtt;
  std::string input_snapshot;
  std::string output_snapshot;
  StageStatus status = StageStatus::kOk;
  double duration_ms = 0.0;

  friend bool operator==(const StageRecord&, const StageRecord&) = default;
};

struct PipelineTrace {
  std::string utterance_id;
  std::vector<StageRecord> records;
  ActionDecision decision = ActionDecision::unintelligible();
};

// Truncates to at most kSnapshotCapBytes without splitting a UTF-8 sequence.
std::string cap_snapshot(std::string text);

}  // namespace concierge

#endif  // CONCIERGE_TYPES_HPP_
