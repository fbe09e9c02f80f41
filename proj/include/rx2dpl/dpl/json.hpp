#pragma once

#include <nlohmann/json.hpp>

#include "rx2dpl/dpl/pattern.hpp"
#include "rx2dpl/dpl/syntax.hpp"

namespace rx2dpl::dpl {

/// {fragments:[{matcher, quantifier, export, unsafe_reason, origin_span, text}], text}
nlohmann::json to_json(const DplPattern& p);
nlohmann::json to_json(const Fragment& f);
nlohmann::json to_json(const DplQuantifier& q);
nlohmann::json to_json(const Diagnostic& d);

/// Inverse of to_json; derived `text` fields are ignored. Throws Error on
/// a malformed document.
DplPattern pattern_from_json(const nlohmann::json& j);
Fragment fragment_from_json(const nlohmann::json& j);

}  // namespace rx2dpl::dpl
