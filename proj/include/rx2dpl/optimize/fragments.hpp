#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rx2dpl/dpl/pattern.hpp"

namespace rx2dpl::optimize {

/// A top-level fragment together with its canonical text.
struct FragmentView {
  std::size_t index = 0;
  dpl::Fragment fragment;
  std::string text;
};

std::vector<FragmentView> fragments_of(const dpl::DplPattern& p);

/// The five matchers suggestions may propose.
const std::vector<dpl::BuiltinKind>& suggestible_matchers();
bool is_suggestible(dpl::BuiltinKind k);

enum class SuggestionSource : std::uint8_t { heuristic, llm };
const char* source_name(SuggestionSource s);

struct Suggestion {
  std::size_t fragment_index = 0;
  dpl::BuiltinKind proposed = dpl::BuiltinKind::INT;
  std::string rationale;
  SuggestionSource source = SuggestionSource::heuristic;
  bool operator==(const Suggestion&) const = default;
};

/// Replaces the fragment with the proposed matcher, keeping its export name
/// and origin span. Throws IndexError for a bad index and Error when the
/// fragment holds nested exports that the replacement would drop.
dpl::DplPattern apply_suggestion(const dpl::DplPattern& p, const Suggestion& s);

/// Copy without any export names, for testing a fragment's language alone.
dpl::Fragment without_exports(dpl::Fragment f);

nlohmann::json to_json(const Suggestion& s);
nlohmann::json to_json(const std::vector<Suggestion>& s);
/// Accepts {fragment, matcher, rationale?, source?}; throws Error.
Suggestion suggestion_from_json(const nlohmann::json& j);

}  // namespace rx2dpl::optimize
