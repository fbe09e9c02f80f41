#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rx2dpl/dpl/pattern.hpp"
#include "rx2dpl/optimize/fragments.hpp"

namespace rx2dpl::optimize {

/// Export-name keywords per matcher, in table order.
struct KeywordTable {
  std::vector<std::pair<dpl::BuiltinKind, std::vector<std::string>>> entries;
};

/// Reads {"matchers":[{"matcher":"INT","keywords":[...]}, ...]}. Throws Error.
KeywordTable load_keywords(const std::string& path);
KeywordTable parse_keywords(const std::string& json_text);
/// Path from RX2DPL_KEYWORDS, else the bundled data/keywords.json.
std::string default_keywords_path();
const KeywordTable& default_keywords();

/// Sample texts of each suggestible matcher's language.
const std::vector<std::string>& witnesses(dpl::BuiltinKind k);

/// A witness that the fragment, exports removed, accepts in full; empty if none.
std::string language_witness(const dpl::Fragment& f, dpl::BuiltinKind k);

/// At most one suggestion per fragment: keyword hits on the export name
/// (longest keyword first, then table order), kept only when the fragment
/// accepts some text of the proposed matcher.
std::vector<Suggestion> suggest_heuristic(const dpl::DplPattern& p, const KeywordTable& table = default_keywords());

}  // namespace rx2dpl::optimize
