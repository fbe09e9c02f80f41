#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rx2dpl/convert/converter.hpp"
#include "rx2dpl/dpl/pattern.hpp"
#include "rx2dpl/optimize/fragments.hpp"

namespace rx2dpl::service {

struct SessionState {
  std::string id;
  std::string source;
  bool unanchored_wrapper = false;
  /// Result of the original conversion; `pattern` holds the current text.
  convert::ConversionResult conversion;
  dpl::DplPattern pattern;
  std::vector<optimize::Suggestion> suggestions;
  /// Indices into `suggestions` already applied.
  std::vector<std::size_t> applied;
  std::optional<optimize::SuggestionSource> suggestion_source;
  std::vector<std::string> optimize_diagnostics;
  nlohmann::json llm_exchange;
  std::optional<nlohmann::json> report;
  std::uint64_t revision = 0;
};

/// {id, revision, source, unanchored_wrapper, conversion, dpl, pattern,
///  syntax, suggestions, suggestion_source, applied, optimize_diagnostics,
///  llm_exchange, report}
nlohmann::json to_json(const SessionState& s);
/// Rebuilds a state written by to_json. The conversion is recomputed from
/// the source, which is deterministic. Throws Error.
SessionState session_from_json(const nlohmann::json& j);

/// A session and the lock that serializes every operation on it.
struct Session {
  std::mutex mu;
  SessionState state;
};

/// Sessions by id. With a data directory, every committed state is appended
/// as one JSON line to `<dir>/<id>.jsonl` and sessions are restored from the
/// last line of those files on first access.
class SessionStore {
 public:
  explicit SessionStore(std::string data_dir = {});

  /// Registers a new session with a fresh id and revision 1.
  std::shared_ptr<Session> create(SessionState initial);
  /// nullptr when unknown.
  std::shared_ptr<Session> find(const std::string& id);
  /// Appends the state to the session's file. Call with the session locked.
  void persist(const SessionState& s);

  const std::string& data_dir() const { return dir_; }

 private:
  std::string new_id();

  std::string dir_;
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t counter_ = 0;
};

}  // namespace rx2dpl::service
