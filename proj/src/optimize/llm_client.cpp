#include "rx2dpl/optimize/llm_client.hpp"

#include <chrono>
#include <cstdlib>
#include <sstream>

#include <httplib.h>

namespace rx2dpl::optimize {

using nlohmann::json;

namespace {

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v && *v ? std::string(v) : fallback;
}

struct Url {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Url split_url(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw TransportError("endpoint must start with http:// or https://: " + url);
  auto path_begin = url.find('/', scheme_end + 3);
  if (path_begin == std::string::npos) return {url, "/"};
  return {url.substr(0, path_begin), url.substr(path_begin)};
}

std::string strip_fence(const std::string& s) {
  auto first = s.find("```");
  if (first == std::string::npos) return s;
  auto line_end = s.find('\n', first);
  auto last = s.rfind("```");
  if (line_end == std::string::npos || last <= line_end) return s;
  return s.substr(line_end + 1, last - line_end - 1);
}

}  // namespace

LlmConfig LlmConfig::from_env() {
  LlmConfig c;
  c.endpoint = env_or("LLM_ENDPOINT", "");
  c.api_key = env_or("LLM_API_KEY", "");
  c.model = env_or("LLM_MODEL", c.model);
  std::string t = env_or("LLM_TIMEOUT_MS", "");
  if (!t.empty()) {
    char* end = nullptr;
    long v = std::strtol(t.c_str(), &end, 10);
    if (end && *end == '\0' && v > 0) c.timeout_ms = v;
  }
  return c;
}

std::string build_prompt(const dpl::DplPattern& p) {
  std::ostringstream os;
  os << "## Pattern\n" << dpl::serialize(p) << "\n\n";
  os << "Its fragments (top-level matchers, groups and alternatives), by index:\n";
  for (const auto& v : fragments_of(p)) os << v.index << ": " << v.text << "\n";
  os << "\n## Task\n"
        "For each fragment, decide whether one of the following high-level DPL matchers describes the text the "
        "fragment is meant to extract better than the fragment itself:\n"
        "- IPADDR: an IPv4 or IPv6 address\n"
        "- INT: a 32-bit signed integer\n"
        "- LONG: a 64-bit signed integer\n"
        "- DOUBLE: a floating point number\n"
        "- TIMESTAMP: a date and time, default format yyyy-MM-dd HH:mm:ss\n"
        "Only these five matchers may be proposed.\n";
  os << "\n## Answer\n"
        "Base the decision on the export name of a fragment and on the characters the fragment accepts. Skip "
        "fragments where no matcher fits. Reply with a JSON array and nothing else. Each element has the form "
        "{\"fragment\": <index>, \"matcher\": \"<IPADDR|INT|LONG|DOUBLE|TIMESTAMP>\", \"rationale\": \"<one "
        "sentence>\"}. Reply [] when no fragment qualifies.\n";
  return os.str();
}

json build_request(const LlmConfig& cfg, const dpl::DplPattern& p) {
  return json{{"model", cfg.model},
              {"temperature", 0},
              {"messages",
               json::array({json{{"role", "system"}, {"content", kSystemMessage}},
                            json{{"role", "user"}, {"content", build_prompt(p)}}})}};
}

std::string reply_content(const std::string& body) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::exception&) {
    throw SchemaError("response body is not JSON", body);
  }
  if (j.is_array() || (j.is_object() && j.contains("suggestions"))) return body;
  try {
    return j.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception&) {
    throw SchemaError("response has no choices[0].message.content", body);
  }
}

ParsedReply parse_reply(const std::string& content, std::size_t fragment_count) {
  json j;
  try {
    j = json::parse(strip_fence(content));
  } catch (const json::exception&) {
    throw SchemaError("reply is not JSON", content);
  }
  if (j.is_object() && j.contains("suggestions")) j = j["suggestions"];
  if (!j.is_array()) throw SchemaError("reply is not a JSON array", content);
  ParsedReply out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& e = j[i];
    try {
      Suggestion s = suggestion_from_json(e);
      if (s.fragment_index >= fragment_count) {
        out.diagnostics.push_back("entry " + std::to_string(i) + ": fragment " + std::to_string(s.fragment_index) +
                                  " does not exist");
        continue;
      }
      s.source = SuggestionSource::llm;
      out.suggestions.push_back(std::move(s));
    } catch (const Error& err) {
      out.diagnostics.push_back("entry " + std::to_string(i) + " dropped: " + err.what());
    }
  }
  return out;
}

ParsedReply LlmClient::suggest(const dpl::DplPattern& p) {
  Url url = split_url(cfg_.endpoint);
  last_ = {};
  last_.request = build_request(cfg_, p);
  httplib::Client cli(url.origin);
  auto secs = cfg_.timeout_ms / 1000;
  auto usecs = (cfg_.timeout_ms % 1000) * 1000;
  cli.set_connection_timeout(secs, usecs);
  cli.set_read_timeout(secs, usecs);
  cli.set_write_timeout(secs, usecs);
  httplib::Headers headers;
  if (!cfg_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + cfg_.api_key);
    headers.emplace("api-key", cfg_.api_key);
  }
  auto t0 = std::chrono::steady_clock::now();
  auto res = cli.Post(url.path, headers, last_.request.dump(), "application/json");
  last_.elapsed_ms = static_cast<long>(
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count());
  if (!res) {
    auto err = res.error();
    if (err == httplib::Error::ConnectionTimeout || (err == httplib::Error::Read && last_.elapsed_ms >= cfg_.timeout_ms))
      throw Timeout("LLM request timed out after " + std::to_string(last_.elapsed_ms) + " ms");
    throw TransportError("LLM request failed: " + httplib::to_string(err));
  }
  last_.status = res->status;
  last_.response = res->body;
  if (res->status < 200 || res->status >= 300)
    throw TransportError("LLM endpoint answered HTTP " + std::to_string(res->status));
  return parse_reply(reply_content(res->body), p.fragments.size());
}

json LlmClient::last_exchange_log() const {
  std::string response = last_.response;
  if (!cfg_.api_key.empty()) {
    for (auto pos = response.find(cfg_.api_key); pos != std::string::npos; pos = response.find(cfg_.api_key, pos))
      response.replace(pos, cfg_.api_key.size(), "[redacted]");
  }
  return json{{"endpoint", cfg_.endpoint},
              {"authorization", cfg_.api_key.empty() ? "none" : "[redacted]"},
              {"request", last_.request},
              {"status", last_.status},
              {"elapsed_ms", last_.elapsed_ms},
              {"response", response}};
}

OptimizeOutcome suggest(const dpl::DplPattern& p, const LlmConfig& cfg, const KeywordTable& table) {
  OptimizeOutcome out;
  if (cfg.enabled()) {
    LlmClient client(cfg);
    try {
      auto reply = client.suggest(p);
      out.suggestions = std::move(reply.suggestions);
      out.diagnostics = std::move(reply.diagnostics);
      out.source = SuggestionSource::llm;
      out.exchange = client.last_exchange_log();
      return out;
    } catch (const Error& e) {
      out.diagnostics.push_back(std::string("LLM unavailable, heuristic used: ") + e.what());
      out.exchange = client.last_exchange_log();
    }
  } else {
    out.diagnostics.emplace_back("no LLM endpoint configured, heuristic used");
  }
  out.suggestions = suggest_heuristic(p, table);
  out.source = SuggestionSource::heuristic;
  return out;
}

}  // namespace rx2dpl::optimize
