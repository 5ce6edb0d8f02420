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

#ifndef CONCIERGE_SERVICE_HPP_
#define CONCIERGE_SERVICE_HPP_

#include <array>
#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "concierge/pipeline.hpp"

namespace concierge::service {

using Variant = pipeline::IntentArm;

enum class VariantSource { kOverride, kAssigned, kDefault };

std::string_view to_string(VariantSource source);

struct VariantAssignment {
  Variant variant = Variant::kComposite;
  VariantSource source = VariantSource::kDefault;
};

// 64-bit FNV-1a over salt, a NUL separator and the user id, finished with the
// splitmix64 mixer; the low bit picks the arm (0 composite, 1 learned).
std::uint64_t bucket_hash(std::string_view user_id, std::string_view salt);

// Empty user ids fall back to the composite arm with source kDefault.
VariantAssignment assign_variant(std::string_view user_id, std::string_view salt);

struct InterpretRequest {
  std::string text;
  std::optional<std::string> lang;
  std::optional<std::string> user_id;
  std::optional<Variant> variant_override;
  std::optional<std::string> replay_ref;
};

// Throws std::invalid_argument describing the first problem.
InterpretRequest parse_interpret_request(std::string_view body);

struct InterpretResponse {
  ActionDecision action;
  VariantAssignment variant;
  PipelineTrace trace;
};

nlohmann::json to_json(const InterpretResponse& response);

struct ServiceOptions {
  std::string salt = "concierge";
  // One JSON line per interpret call; nullptr disables request logging.
  std::ostream* request_log = nullptr;
};

// Request handling without the transport. Shared state is the immutable
// pipeline plus monotonically increasing counters.
class Service {
 public:
  // Throws pipeline::ConfigError unless both classifier arms are available.
  Service(std::shared_ptr<const pipeline::Pipeline> pipeline, ServiceOptions options);

  InterpretResponse interpret(const InterpretRequest& request);

  nlohmann::json health() const;
  nlohmann::json config() const;
  nlohmann::json metrics() const;

  const pipeline::Pipeline& pipeline() const { return *pipeline_; }

 private:
  std::shared_ptr<const pipeline::Pipeline> pipeline_;
  ServiceOptions options_;
  nlohmann::json config_document_;
  std::atomic<std::uint64_t> total_{0};
  std::array<std::atomic<std::uint64_t>, 2> by_variant_{};
  std::array<std::atomic<std::uint64_t>, 8> by_action_{};
  std::mutex log_mutex_;
};

// HTTP transport for Service:
//   POST /v1/interpret, GET /v1/health, GET /v1/config, GET /v1/metrics.
class HttpServer {
 public:
  explicit HttpServer(std::shared_ptr<Service> service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds and returns the port; port 0 picks a free one. -1 on failure.
  int bind(const std::string& host, int port);
  // Serves until stop(); blocks.
  bool serve();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Hex SHA-256 of a file's bytes; empty when it cannot be read.
std::string file_digest(const std::filesystem::path& path);

}  // namespace concierge::service

#endif  // CONCIERGE_SERVICE_HPP_
