#pragma once

#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "rx2dpl/convert/converter.hpp"
#include "rx2dpl/optimize/heuristic.hpp"
#include "rx2dpl/optimize/llm_client.hpp"
#include "rx2dpl/service/session.hpp"
#include "rx2dpl/validate/validator.hpp"

namespace rx2dpl::service {

struct ServiceConfig {
  /// Session files go here; empty keeps sessions in memory only.
  std::string data_dir;
  /// Value of Access-Control-Allow-Origin; empty disables CORS headers.
  std::string cors_origin = "*";
  convert::ConvertOptions convert;
  validate::SuiteOptions suite;
  validate::DiffOptions diff;
  optimize::LlmConfig llm;
  /// Upper bound on n_pos and n_neg per validation request.
  std::size_t max_samples = 10'000;
};

struct Response {
  int status = 200;
  nlohmann::json body;
};

/// Request handling without a socket. Error bodies are {error, ...}:
///   400 malformed body or regex syntax error (with `position`),
///   404 unknown session or route, 409 unknown or already applied suggestion,
///   422 impossible conversion (with `reason`) or empty language.
class Service {
 public:
  explicit Service(ServiceConfig cfg);

  Response handle(const std::string& method, const std::string& path, const std::string& body);

  Response convert(const nlohmann::json& req);
  Response validate(const nlohmann::json& req);
  Response optimize(const nlohmann::json& req);
  Response apply(const nlohmann::json& req);
  Response session(const std::string& id);
  Response health() const;

  const ServiceConfig& config() const { return cfg_; }
  SessionStore& store() { return store_; }

 private:
  ServiceConfig cfg_;
  SessionStore store_;
  optimize::KeywordTable keywords_;
};

/// HTTP front end of a Service.
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();

  /// Blocks until stop(); false when the address cannot be bound.
  bool listen(const std::string& host, int port);
  /// Binds an ephemeral port and returns it, or -1; then call serve().
  int bind_any(const std::string& host);
  /// Blocks serving on the socket from bind_any().
  bool serve();
  void stop();
  bool running() const;
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace rx2dpl::service
