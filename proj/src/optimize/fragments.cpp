#include "rx2dpl/optimize/fragments.hpp"

#include "rx2dpl/error.hpp"

namespace rx2dpl::optimize {

using dpl::BuiltinKind;
using nlohmann::json;

std::vector<FragmentView> fragments_of(const dpl::DplPattern& p) {
  std::vector<FragmentView> out;
  for (std::size_t i = 0; i < p.fragments.size(); ++i) out.push_back({i, p.fragments[i], dpl::serialize(p.fragments[i])});
  return out;
}

const std::vector<BuiltinKind>& suggestible_matchers() {
  static const std::vector<BuiltinKind> kinds{BuiltinKind::IPADDR, BuiltinKind::INT, BuiltinKind::LONG,
                                              BuiltinKind::DOUBLE, BuiltinKind::TIMESTAMP};
  return kinds;
}

bool is_suggestible(BuiltinKind k) {
  for (auto m : suggestible_matchers())
    if (m == k) return true;
  return false;
}

const char* source_name(SuggestionSource s) { return s == SuggestionSource::heuristic ? "heuristic" : "llm"; }

dpl::Fragment without_exports(dpl::Fragment f) {
  f.export_name.reset();
  for (auto& b : f.matcher.body) b = without_exports(std::move(b));
  for (auto& br : f.matcher.branches)
    for (auto& b : br) b = without_exports(std::move(b));
  return f;
}

dpl::DplPattern apply_suggestion(const dpl::DplPattern& p, const Suggestion& s) {
  if (s.fragment_index >= p.fragments.size())
    throw IndexError("fragment index " + std::to_string(s.fragment_index) + " out of range");
  if (!is_suggestible(s.proposed)) throw Error(std::string("matcher not suggestible: ") + dpl::builtin_name(s.proposed));
  const dpl::Fragment& old = p.fragments[s.fragment_index];
  std::vector<std::string> nested;
  dpl::collect_exports(old.matcher.body, nested);
  for (const auto& br : old.matcher.branches) dpl::collect_exports(br, nested);
  if (!nested.empty()) {
    std::string names;
    for (const auto& n : nested) names += (names.empty() ? "" : ", ") + n;
    throw Error("replacing fragment " + std::to_string(s.fragment_index) + " would drop exports " + names);
  }
  dpl::Fragment repl = s.proposed == BuiltinKind::TIMESTAMP ? dpl::timestamp() : dpl::builtin(s.proposed);
  repl.export_name = old.export_name;
  repl.origin_span = old.origin_span;
  dpl::DplPattern out = p;
  out.fragments[s.fragment_index] = std::move(repl);
  return out;
}

json to_json(const Suggestion& s) {
  return json{{"fragment", s.fragment_index},
              {"matcher", dpl::builtin_name(s.proposed)},
              {"rationale", s.rationale},
              {"source", source_name(s.source)}};
}

json to_json(const std::vector<Suggestion>& s) {
  json a = json::array();
  for (const auto& x : s) a.push_back(to_json(x));
  return a;
}

Suggestion suggestion_from_json(const json& j) {
  if (!j.is_object()) throw Error("suggestion must be an object");
  if (!j.contains("fragment") || !j["fragment"].is_number_integer() || j["fragment"].get<long long>() < 0)
    throw Error("suggestion needs a non-negative integer 'fragment'");
  if (!j.contains("matcher") || !j["matcher"].is_string()) throw Error("suggestion needs a string 'matcher'");
  Suggestion s;
  s.fragment_index = j["fragment"].get<std::size_t>();
  auto k = dpl::builtin_from_name(j["matcher"].get<std::string>());
  if (!k || !is_suggestible(*k)) throw Error("unknown or unsupported matcher '" + j["matcher"].get<std::string>() + "'");
  s.proposed = *k;
  if (j.contains("rationale") && j["rationale"].is_string()) s.rationale = j["rationale"].get<std::string>();
  if (j.contains("source") && j["source"] == "llm") s.source = SuggestionSource::llm;
  return s;
}

}  // namespace rx2dpl::optimize
