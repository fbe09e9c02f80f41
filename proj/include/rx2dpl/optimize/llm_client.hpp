#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rx2dpl/dpl/pattern.hpp"
#include "rx2dpl/error.hpp"
#include "rx2dpl/optimize/fragments.hpp"
#include "rx2dpl/optimize/heuristic.hpp"

namespace rx2dpl::optimize {

/// Sent as the system message of every request.
inline constexpr const char* kSystemMessage =
    "You act as a backend suggesting optimizations for the DPL (Dynatrace Pattern Language) responding in plain JSON.";

class TransportError : public Error {
 public:
  using Error::Error;
};

class Timeout : public Error {
 public:
  using Error::Error;
};

/// The reply did not follow the JSON contract; the raw reply is kept.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& message, std::string raw) : Error(message), raw_(std::move(raw)) {}
  const std::string& raw() const noexcept { return raw_; }

 private:
  std::string raw_;
};

struct LlmConfig {
  /// Chat-completions URL, e.g. http://localhost:8000/v1/chat/completions.
  std::string endpoint;
  std::string api_key;
  std::string model = "gpt-4";
  long timeout_ms = 30'000;

  bool enabled() const { return !endpoint.empty(); }
  /// LLM_ENDPOINT, LLM_API_KEY, LLM_MODEL, LLM_TIMEOUT_MS.
  static LlmConfig from_env();
};

/// User prompt: the pattern and its numbered fragments, the task with the
/// five matchers, then the answer criteria and JSON shape.
std::string build_prompt(const dpl::DplPattern& p);

/// Chat-completions request body.
nlohmann::json build_request(const LlmConfig& cfg, const dpl::DplPattern& p);

struct ParsedReply {
  std::vector<Suggestion> suggestions;
  std::vector<std::string> diagnostics;
};

/// Accepts a JSON array of {fragment, matcher, rationale}, optionally inside
/// a Markdown code fence or under a "suggestions" key. Entries naming other
/// matchers or missing fragments are dropped with a diagnostic. Throws
/// SchemaError when the text is not such a document.
ParsedReply parse_reply(const std::string& content, std::size_t fragment_count);

/// Extracts the assistant text from a chat-completions response body; a body
/// that is itself the suggestion document is passed through.
std::string reply_content(const std::string& body);

struct LlmExchange {
  nlohmann::json request;
  std::string response;
  long status = 0;
  long elapsed_ms = 0;
};

class LlmClient {
 public:
  explicit LlmClient(LlmConfig cfg) : cfg_(std::move(cfg)) {}

  /// Throws TransportError, Timeout or SchemaError.
  ParsedReply suggest(const dpl::DplPattern& p);

  /// Last request and response; the API key never appears in it.
  nlohmann::json last_exchange_log() const;

 private:
  LlmConfig cfg_;
  LlmExchange last_;
};

struct OptimizeOutcome {
  std::vector<Suggestion> suggestions;
  SuggestionSource source = SuggestionSource::heuristic;
  std::vector<std::string> diagnostics;
  nlohmann::json exchange;
};

/// Uses the LLM when configured; otherwise, or when the call fails, the
/// heuristic suggester, with the reason recorded in the diagnostics.
OptimizeOutcome suggest(const dpl::DplPattern& p, const LlmConfig& cfg, const KeywordTable& table = default_keywords());

}  // namespace rx2dpl::optimize
