#include "rx2dpl/service/session.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <random>

#include "rx2dpl/dpl/json.hpp"
#include "rx2dpl/dpl/syntax.hpp"
#include "rx2dpl/error.hpp"

namespace rx2dpl::service {

using nlohmann::json;

namespace {

bool valid_id(const std::string& id) {
  if (id.empty() || id.size() > 64) return false;
  for (char c : id)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-') return false;
  return true;
}

}  // namespace

json to_json(const SessionState& s) {
  json syntax = json::array();
  for (const auto& d : dpl::validate_syntax(s.pattern)) syntax.push_back(dpl::to_json(d));
  json out{{"id", s.id},
           {"revision", s.revision},
           {"source", s.source},
           {"unanchored_wrapper", s.unanchored_wrapper},
           {"conversion", convert::to_json(s.conversion)},
           {"dpl", dpl::serialize(s.pattern)},
           {"pattern", dpl::to_json(s.pattern)},
           {"syntax", {{"valid", syntax.empty()}, {"diagnostics", syntax}}},
           {"suggestions", optimize::to_json(s.suggestions)},
           {"suggestion_source", s.suggestion_source ? json(optimize::source_name(*s.suggestion_source)) : json()},
           {"applied", s.applied},
           {"optimize_diagnostics", s.optimize_diagnostics},
           {"llm_exchange", s.llm_exchange},
           {"report", s.report ? *s.report : json()}};
  return out;
}

SessionState session_from_json(const json& j) {
  try {
    SessionState s;
    s.id = j.at("id").get<std::string>();
    s.revision = j.at("revision").get<std::uint64_t>();
    s.source = j.at("source").get<std::string>();
    s.unanchored_wrapper = j.at("unanchored_wrapper").get<bool>();
    convert::ConvertOptions co;
    co.unanchored_wrapper = s.unanchored_wrapper;
    s.conversion = convert::convert_regex(s.source, co);
    s.pattern = dpl::pattern_from_json(j.at("pattern"));
    for (const auto& e : j.at("suggestions")) s.suggestions.push_back(optimize::suggestion_from_json(e));
    s.applied = j.at("applied").get<std::vector<std::size_t>>();
    const auto& src = j.at("suggestion_source");
    if (!src.is_null()) {
      auto name = src.get<std::string>();
      if (name == "llm") s.suggestion_source = optimize::SuggestionSource::llm;
      else if (name == "heuristic") s.suggestion_source = optimize::SuggestionSource::heuristic;
      else throw Error("unknown suggestion source " + name);
    }
    s.optimize_diagnostics = j.at("optimize_diagnostics").get<std::vector<std::string>>();
    s.llm_exchange = j.at("llm_exchange");
    if (!j.at("report").is_null()) s.report = j.at("report");
    return s;
  } catch (const json::exception& e) {
    throw Error(std::string("bad session document: ") + e.what());
  }
}

SessionStore::SessionStore(std::string data_dir) : dir_(std::move(data_dir)) {
  if (!dir_.empty()) std::filesystem::create_directories(dir_);
}

std::string SessionStore::new_id() {
  static thread_local std::mt19937_64 gen{std::random_device{}()};
  static const char* hex = "0123456789abcdef";
  for (;;) {
    std::string id;
    auto v = gen() ^ ++counter_;
    for (int i = 0; i < 16; ++i, v >>= 4) id.push_back(hex[v & 15]);
    if (!sessions_.count(id) && (dir_.empty() || !std::filesystem::exists(dir_ + "/" + id + ".jsonl"))) return id;
  }
}

std::shared_ptr<Session> SessionStore::create(SessionState initial) {
  auto session = std::make_shared<Session>();
  {
    std::lock_guard lock(mu_);
    initial.id = new_id();
    initial.revision = 1;
    session->state = std::move(initial);
    sessions_[session->state.id] = session;
  }
  std::lock_guard lock(session->mu);
  persist(session->state);
  return session;
}

std::shared_ptr<Session> SessionStore::find(const std::string& id) {
  std::lock_guard lock(mu_);
  if (auto it = sessions_.find(id); it != sessions_.end()) return it->second;
  if (dir_.empty() || !valid_id(id)) return nullptr;
  std::ifstream in(dir_ + "/" + id + ".jsonl");
  if (!in) return nullptr;
  std::string line, last;
  while (std::getline(in, line))
    if (!line.empty()) last = line;
  if (last.empty()) return nullptr;
  auto session = std::make_shared<Session>();
  session->state = session_from_json(json::parse(last));
  sessions_[id] = session;
  return session;
}

void SessionStore::persist(const SessionState& s) {
  if (dir_.empty()) return;
  std::ofstream out(dir_ + "/" + s.id + ".jsonl", std::ios::app);
  if (!out) throw Error("cannot write session file for " + s.id);
  out << to_json(s).dump() << '\n';
}

}  // namespace rx2dpl::service
