#include "rx2dpl/service/server.hpp"

#include <algorithm>

#include <httplib.h>

#include "rx2dpl/dpl/json.hpp"
#include "rx2dpl/dpl/syntax.hpp"
#include "rx2dpl/error.hpp"
#include "rx2dpl/regex/normalize.hpp"
#include "rx2dpl/regex/parser.hpp"

namespace rx2dpl::service {

using nlohmann::json;

namespace {

constexpr const char* kSessionPrefix = "/api/session/";

Response error(int status, const std::string& message, json extra = json::object()) {
  extra["error"] = message;
  return {status, std::move(extra)};
}

/// Thrown inside handlers for request-shape problems.
struct BadRequest {
  std::string message;
};

std::size_t count_field(const json& req, const char* key, std::size_t fallback) {
  if (!req.contains(key)) return fallback;
  const auto& v = req[key];
  if (!v.is_number_unsigned()) throw BadRequest{std::string("'") + key + "' must be a non-negative integer"};
  return v.get<std::size_t>();
}

std::string string_field(const json& req, const char* key) {
  if (!req.contains(key) || !req[key].is_string()) throw BadRequest{std::string("'") + key + "' must be a string"};
  return req[key].get<std::string>();
}

json syntax_json(const dpl::DplPattern& p) {
  json diags = json::array();
  for (const auto& d : dpl::validate_syntax(p)) diags.push_back(dpl::to_json(d));
  return {{"valid", diags.empty()}, {"diagnostics", diags}};
}

}  // namespace

Service::Service(ServiceConfig cfg)
    : cfg_(std::move(cfg)), store_(cfg_.data_dir), keywords_(optimize::default_keywords()) {}

Response Service::handle(const std::string& method, const std::string& path, const std::string& body) {
  try {
    if (method == "GET") {
      if (path == "/api/health") return health();
      if (path.rfind(kSessionPrefix, 0) == 0) return session(path.substr(std::char_traits<char>::length(kSessionPrefix)));
    } else if (method == "POST") {
      Response (Service::*op)(const json&) = nullptr;
      if (path == "/api/convert") op = &Service::convert;
      else if (path == "/api/validate") op = &Service::validate;
      else if (path == "/api/optimize") op = &Service::optimize;
      else if (path == "/api/apply") op = &Service::apply;
      if (op) {
        json req;
        try {
          req = json::parse(body);
        } catch (const json::exception& e) {
          return error(400, std::string("malformed JSON: ") + e.what());
        }
        if (!req.is_object()) return error(400, "request body must be a JSON object");
        return (this->*op)(req);
      }
    }
    return error(404, "no route for " + method + " " + path);
  } catch (const BadRequest& b) {
    return error(400, b.message);
  } catch (const std::exception& e) {
    return error(500, e.what());
  }
}

Response Service::health() const { return {200, {{"status", "ok"}}}; }

Response Service::convert(const json& req) {
  std::string source = string_field(req, "regex");
  if (source.empty()) throw BadRequest{"'regex' must not be empty"};
  convert::ConvertOptions co = cfg_.convert;
  if (req.contains("unanchored_wrapper")) {
    if (!req["unanchored_wrapper"].is_boolean()) throw BadRequest{"'unanchored_wrapper' must be a boolean"};
    co.unanchored_wrapper = req["unanchored_wrapper"].get<bool>();
  }
  convert::ConversionResult result;
  try {
    result = convert::convert_regex(source, co);
  } catch (const UnsupportedFeature& e) {
    return error(422, e.what(), {{"reason", "unsupported: " + e.feature()}, {"position", e.position()}});
  } catch (const SyntaxError& e) {
    return error(400, e.what(), {{"position", e.position()}, {"detail", e.detail()}});
  }
  if (!result.pattern) {
    std::string reason = result.impossible_reason.value_or("impossible");
    return error(422, "conversion impossible: " + reason, {{"reason", reason}, {"result", convert::to_json(result)}});
  }
  SessionState st;
  st.source = source;
  st.unanchored_wrapper = co.unanchored_wrapper;
  st.pattern = *result.pattern;
  st.conversion = std::move(result);
  auto session = store_.create(std::move(st));
  std::lock_guard lock(session->mu);
  json out = convert::to_json(session->state.conversion);
  out["session"] = session->state.id;
  out["revision"] = session->state.revision;
  return {200, out};
}

Response Service::validate(const json& req) {
  std::string id = string_field(req, "session");
  std::size_t n_pos = count_field(req, "n_pos", 200);
  std::size_t n_neg = count_field(req, "n_neg", 200);
  std::uint64_t seed = count_field(req, "seed", 1);
  if (n_pos == 0) throw BadRequest{"'n_pos' must be at least 1"};
  if (n_pos > cfg_.max_samples || n_neg > cfg_.max_samples)
    throw BadRequest{"at most " + std::to_string(cfg_.max_samples) + " samples per kind"};
  auto session = store_.find(id);
  if (!session) return error(404, "unknown session " + id);
  std::lock_guard lock(session->mu);
  auto& st = session->state;
  regex::RegexAst ast = regex::normalize(regex::parse_regex(st.source));
  validate::TestSuite suite;
  try {
    suite = validate::generate_suite(ast, n_pos, n_neg, seed, cfg_.suite);
  } catch (const EmptyLanguage& e) {
    return error(422, e.what(), {{"reason", "empty language"}});
  }
  convert::ConversionResult current = st.conversion;
  current.pattern = st.pattern;
  auto report = validate::run_differential(ast, current, suite, cfg_.diff);
  json rj = validate::to_json(report);
  rj["seed"] = seed;
  rj["suite_diagnostics"] = suite.diagnostics;
  st.report = rj;
  ++st.revision;
  store_.persist(st);
  rj["session"] = st.id;
  rj["revision"] = st.revision;
  return {200, rj};
}

Response Service::optimize(const json& req) {
  std::string id = string_field(req, "session");
  auto session = store_.find(id);
  if (!session) return error(404, "unknown session " + id);
  // Holding the session lock keeps one optimization in flight per session.
  std::lock_guard lock(session->mu);
  auto& st = session->state;
  auto outcome = optimize::suggest(st.pattern, cfg_.llm, keywords_);
  st.suggestions = std::move(outcome.suggestions);
  st.applied.clear();
  st.suggestion_source = outcome.source;
  st.optimize_diagnostics = std::move(outcome.diagnostics);
  st.llm_exchange = std::move(outcome.exchange);
  ++st.revision;
  store_.persist(st);
  return {200,
          {{"session", st.id},
           {"revision", st.revision},
           {"source", optimize::source_name(outcome.source)},
           {"suggestions", optimize::to_json(st.suggestions)},
           {"diagnostics", st.optimize_diagnostics}}};
}

Response Service::apply(const json& req) {
  std::string id = string_field(req, "session");
  if (!req.contains("suggestion")) throw BadRequest{"'suggestion' is required"};
  const auto& sel = req["suggestion"];
  auto session = store_.find(id);
  if (!session) return error(404, "unknown session " + id);
  std::lock_guard lock(session->mu);
  auto& st = session->state;

  optimize::Suggestion s;
  std::optional<std::size_t> index;
  if (sel.is_number_unsigned()) {
    index = sel.get<std::size_t>();
    if (*index >= st.suggestions.size())
      return error(409, "unknown suggestion " + std::to_string(*index), {{"pending", st.suggestions.size()}});
    if (std::find(st.applied.begin(), st.applied.end(), *index) != st.applied.end())
      return error(409, "suggestion " + std::to_string(*index) + " is already applied");
    s = st.suggestions[*index];
  } else if (sel.is_object()) {
    try {
      s = optimize::suggestion_from_json(sel);
    } catch (const Error& e) {
      throw BadRequest{e.what()};
    }
  } else {
    throw BadRequest{"'suggestion' must be an index or a suggestion object"};
  }

  dpl::DplPattern next;
  try {
    next = optimize::apply_suggestion(st.pattern, s);
  } catch (const IndexError& e) {
    return error(409, e.what());
  } catch (const Error& e) {
    return error(422, e.what());
  }
  json syntax = syntax_json(next);
  st.pattern = std::move(next);
  if (index) st.applied.push_back(*index);
  st.report.reset();
  ++st.revision;
  store_.persist(st);
  return {200,
          {{"session", st.id},
           {"revision", st.revision},
           {"dpl", dpl::serialize(st.pattern)},
           {"pattern", dpl::to_json(st.pattern)},
           {"syntax", syntax},
           {"applied", st.applied}}};
}

Response Service::session(const std::string& id) {
  auto session = store_.find(id);
  if (!session) return error(404, "unknown session " + id);
  std::lock_guard lock(session->mu);
  return {200, to_json(session->state)};
}

struct HttpServer::Impl {
  Service& service;
  httplib::Server svr;
  explicit Impl(Service& s) : service(s) {}
};

HttpServer::HttpServer(Service& service) : impl_(std::make_unique<Impl>(service)) {
  auto& svr = impl_->svr;
  const std::string origin = service.config().cors_origin;
  if (!origin.empty()) {
    svr.set_default_headers({{"Access-Control-Allow-Origin", origin},
                             {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                             {"Access-Control-Allow-Headers", "Content-Type"}});
  }
  auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    Response r = impl_->service.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  svr.Get(".*", forward);
  svr.Post(".*", forward);
  svr.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
}

HttpServer::~HttpServer() { stop(); }

bool HttpServer::listen(const std::string& host, int port) { return impl_->svr.listen(host, port); }
int HttpServer::bind_any(const std::string& host) { return impl_->svr.bind_to_any_port(host); }
bool HttpServer::serve() { return impl_->svr.listen_after_bind(); }
void HttpServer::stop() {
  if (impl_->svr.is_running()) impl_->svr.stop();
}
bool HttpServer::running() const { return impl_->svr.is_running(); }
void HttpServer::wait_until_ready() const { impl_->svr.wait_until_ready(); }

}  // namespace rx2dpl::service
