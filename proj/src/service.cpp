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

#include "concierge/service.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <set>
#include <stdexcept>

#include <httplib.h>
#include <openssl/evp.h>

#include "concierge/json_codec.hpp"
#include "concierge/vtt.hpp"

namespace concierge::service {
namespace {

using nlohmann::json;

constexpr std::uint64_t kFnvOffset = 0xCBF29CE484222325ull;
constexpr std::uint64_t kFnvPrime = 0x100000001B3ull;

std::uint64_t fnv1a(std::uint64_t h, std::string_view bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string utterance_id(const InterpretRequest& r) {
  std::uint64_t h = fnv1a(kFnvOffset, r.text);
  h = fnv1a(h, std::string_view("\0", 1));
  h = fnv1a(h, r.lang.value_or(""));
  h = fnv1a(h, std::string_view("\0", 1));
  h = fnv1a(h, r.user_id.value_or(""));
  h = fnv1a(h, std::string_view("\0", 1));
  h = fnv1a(h, r.replay_ref.value_or(""));
  return "req-" + hex64(h);
}

std::size_t variant_index(Variant v) { return v == Variant::kLearned ? 1 : 0; }

json error_body(const std::string& reason) { return json{{"error", reason}}; }

}  // namespace

std::string_view to_string(VariantSource source) {
  switch (source) {
    case VariantSource::kOverride: return "override";
    case VariantSource::kAssigned: return "assigned";
    case VariantSource::kDefault: return "default";
  }
  return "?";
}

std::uint64_t bucket_hash(std::string_view user_id, std::string_view salt) {
  std::uint64_t h = fnv1a(kFnvOffset, salt);
  h = fnv1a(h, std::string_view("\0", 1));
  h = fnv1a(h, user_id);
  return vtt::splitmix64(h);
}

VariantAssignment assign_variant(std::string_view user_id, std::string_view salt) {
  if (user_id.empty()) return {Variant::kComposite, VariantSource::kDefault};
  const bool learned = (bucket_hash(user_id, salt) & 1u) != 0;
  return {learned ? Variant::kLearned : Variant::kComposite,
          VariantSource::kAssigned};
}

InterpretRequest parse_interpret_request(std::string_view body) {
  json value;
  try {
    value = json::parse(body);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("body is not valid JSON: ") + e.what());
  }
  if (!value.is_object()) throw std::invalid_argument("body must be a JSON object");
  static const std::set<std::string> kAllowed = {"text", "lang", "user_id",
                                                 "variant_override", "replay_ref"};
  for (const auto& [key, v] : value.items()) {
    if (!kAllowed.contains(key)) {
      throw std::invalid_argument("unknown field '" + key + "'");
    }
  }
  auto optional_string = [&](const char* key) -> std::optional<std::string> {
    const auto it = value.find(key);
    if (it == value.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) {
      throw std::invalid_argument(std::string("field '") + key + "' must be a string");
    }
    return it->get<std::string>();
  };

  InterpretRequest request;
  const auto text = optional_string("text");
  if (!text) throw std::invalid_argument("missing field 'text'");
  request.text = *text;
  request.lang = optional_string("lang");
  if (request.lang && request.lang->empty()) {
    throw std::invalid_argument("field 'lang' must not be empty");
  }
  request.user_id = optional_string("user_id");
  request.replay_ref = optional_string("replay_ref");
  if (const auto v = optional_string("variant_override")) {
    const auto parsed = pipeline::parse_intent_arm(*v);
    if (!parsed) throw std::invalid_argument("unknown variant '" + *v + "'");
    request.variant_override = *parsed;
  }
  return request;
}

json to_json(const InterpretResponse& response) {
  return json{{"action", codec::to_json(response.action)},
              {"variant", pipeline::to_string(response.variant.variant)},
              {"variant_source", to_string(response.variant.source)},
              {"trace", codec::to_json(response.trace)}};
}

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  const std::string bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(),
                 nullptr) != 1) {
    return {};
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

Service::Service(std::shared_ptr<const pipeline::Pipeline> pipeline,
                 ServiceOptions options)
    : pipeline_(std::move(pipeline)), options_(std::move(options)) {
  for (Variant v : {Variant::kComposite, Variant::kLearned}) {
    if (!pipeline_->has_arm(v)) {
      throw pipeline::ConfigError("service needs the " +
                                  std::string(pipeline::to_string(v)) +
                                  " intent arm");
    }
  }
  const PipelineConfig& c = pipeline_->config();
  json files = json::object();
  auto add = [&](const std::string& key, const std::optional<std::filesystem::path>& p) {
    if (p) files[key] = json{{"path", p->string()}, {"sha256", file_digest(*p)}};
  };
  add("gazetteer", c.gazetteer);
  add("keywords", c.keywords);
  add("confusion", c.confusion);
  add("hints", c.hints);
  add("replay", c.replay);
  add("learned_model", c.learned_model);
  for (const auto& [language, path] : c.lexicons) {
    add("lexicon." + language, path);
  }
  json arms = json::object();
  for (Variant v : {Variant::kComposite, Variant::kLearned}) {
    arms[std::string(pipeline::to_string(v))] = pipeline_->backend_names(v);
  }
  config_document_ = json{{"backends", pipeline_->backend_names(pipeline_->default_arm())},
                          {"arms", arms},
                          {"default_arm", pipeline::to_string(pipeline_->default_arm())},
                          {"default_language", c.default_language},
                          {"files", files}};
}

InterpretResponse Service::interpret(const InterpretRequest& request) {
  VariantAssignment assignment;
  if (request.variant_override) {
    assignment = {*request.variant_override, VariantSource::kOverride};
  } else {
    assignment = assign_variant(request.user_id.value_or(""), options_.salt);
  }

  Utterance utterance;
  utterance.id = utterance_id(request);
  utterance.text = request.text;
  utterance.language = request.lang.value_or(pipeline_->config().default_language);
  utterance.replay_ref = request.replay_ref;

  pipeline::RunResult result = pipeline_->run(utterance, assignment.variant);
  InterpretResponse response{result.decision, assignment, std::move(result.trace)};

  total_.fetch_add(1, std::memory_order_relaxed);
  by_variant_[variant_index(assignment.variant)].fetch_add(1, std::memory_order_relaxed);
  by_action_[static_cast<std::size_t>(response.action.kind())].fetch_add(
      1, std::memory_order_relaxed);

  if (options_.request_log != nullptr) {
    const auto now = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::system_clock::now().time_since_epoch());
    json line{{"ts_ms", now.count()},
              {"utterance_id", utterance.id},
              {"lang", utterance.language},
              {"variant", pipeline::to_string(assignment.variant)},
              {"variant_source", to_string(assignment.source)},
              {"action", codec::to_json(response.action)},
              {"trace", codec::to_json(response.trace)}};
    const std::string text = line.dump(-1, ' ', false, json::error_handler_t::replace);
    std::lock_guard<std::mutex> lock(log_mutex_);
    *options_.request_log << text << '\n';
    options_.request_log->flush();
  }
  return response;
}

json Service::health() const { return json{{"status", "ok"}}; }

json Service::config() const { return config_document_; }

json Service::metrics() const {
  json variants = json::object();
  for (Variant v : {Variant::kComposite, Variant::kLearned}) {
    variants[std::string(pipeline::to_string(v))] =
        by_variant_[variant_index(v)].load(std::memory_order_relaxed);
  }
  json actions = json::object();
  for (std::size_t k = 0; k < by_action_.size(); ++k) {
    actions[std::string(to_string(static_cast<ActionKind>(k)))] =
        by_action_[k].load(std::memory_order_relaxed);
  }
  return json{{"requests_total", total_.load(std::memory_order_relaxed)},
              {"requests_by_variant", variants},
              {"requests_by_action", actions}};
}

struct HttpServer::Impl {
  std::shared_ptr<Service> service;
  httplib::Server server;
};

HttpServer::HttpServer(std::shared_ptr<Service> service)
    : impl_(std::make_unique<Impl>()) {
  impl_->service = std::move(service);
  Service* svc = impl_->service.get();
  auto send = [](httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(-1, ' ', false, json::error_handler_t::replace),
                    "application/json");
  };

  impl_->server.Post("/v1/interpret", [svc, send](const httplib::Request& req,
                                                  httplib::Response& res) {
    InterpretRequest request;
    try {
      request = parse_interpret_request(req.body);
    } catch (const std::invalid_argument& e) {
      send(res, 400, error_body(e.what()));
      return;
    }
    send(res, 200, to_json(svc->interpret(request)));
  });
  impl_->server.Get("/v1/health", [svc, send](const httplib::Request&,
                                              httplib::Response& res) {
    send(res, 200, svc->health());
  });
  impl_->server.Get("/v1/config", [svc, send](const httplib::Request&,
                                              httplib::Response& res) {
    send(res, 200, svc->config());
  });
  impl_->server.Get("/v1/metrics", [svc, send](const httplib::Request&,
                                               httplib::Response& res) {
    send(res, 200, svc->metrics());
  });
  impl_->server.set_exception_handler(
      [send](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string reason = "internal error";
        try {
          std::rethrow_exception(ep);
        } catch (const std::exception& e) {
          reason = e.what();
        } catch (...) {
        }
        send(res, 500, error_body(reason));
      });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::serve() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace concierge::service
