#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "rx2dpl/dpl/pattern.hpp"

namespace rx2dpl::dpl {

enum class MatchMode : std::uint8_t {
  /// Success once the last fragment matched; `end` tells how far.
  prefix,
  /// The last fragment must end at the end of the input.
  full,
};

struct EngineOptions {
  MatchMode mode = MatchMode::prefix;
  /// Fragment evaluations allowed per match; 0 means unlimited.
  std::size_t step_budget = 0;
};

struct ExportValue {
  std::string text;
  /// Builtin name for typed matchers (INT, IPADDR, ...), otherwise "string".
  std::string type = "string";
  nlohmann::json value;
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct DplMatchResult {
  bool matched = false;
  std::size_t end = 0;
  std::map<std::string, ExportValue> exports;
  /// Characters given back when an alternative (or an optional fragment)
  /// failed and the next one was tried from the same offset.
  std::size_t released_chars = 0;
  std::size_t choice_restores = 0;
  std::size_t steps = 0;
};

/// Executes a pattern once, from offset 0. Repetition is possessive, LD and
/// DATA stop at the first offset where the next fragment matches and never
/// grow afterwards, and only alternatives and optional fragments are retried.
class DplEngine {
 public:
  explicit DplEngine(DplPattern pattern);
  ~DplEngine();
  DplEngine(DplEngine&&) noexcept;
  DplEngine& operator=(DplEngine&&) noexcept;

  DplMatchResult match(std::string_view input, const EngineOptions& opts = {}) const;
  const DplPattern& pattern() const;

  struct Compiled;

 private:
  std::unique_ptr<Compiled> c_;
};

DplMatchResult dpl_match(const DplPattern& p, std::string_view input, const EngineOptions& opts = {});

/// {matched, end, exports:{name:{text, type, value}}}
nlohmann::json to_json(const DplMatchResult& r);

}  // namespace rx2dpl::dpl
