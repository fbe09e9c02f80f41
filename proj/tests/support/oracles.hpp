#pragma once

// Independent oracles and generators shared by the unit and acceptance tests.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rx2dpl/automata/sampling.hpp"

namespace rx2dpl::oracle {

/// Every string over `alphabet` of length 0..max_len, shortest first.
inline std::vector<std::string> all_strings(const std::string& alphabet, std::size_t max_len) {
  std::vector<std::string> out{""};
  std::size_t from = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t to = out.size();
    for (std::size_t i = from; i < to; ++i)
      for (char c : alphabet) out.push_back(out[i] + c);
    from = to;
  }
  return out;
}

/// Small expressions over {a,b,c} with exactly one quantified node; the
/// context atoms around it are unquantified.
class SingleQuantifierGen {
 public:
  explicit SingleQuantifierGen(std::uint64_t seed) : rng_(seed) {}

  std::string next() {
    static const std::vector<std::string> quantified{"a",      "b",        "c",        "[ab]",     "[^a]",
                                                     ".",      "(?:ab)",   "(?:a|b)",  "(?:a|bc)", "(?:ab|a)",
                                                     "(a)",    "(?<n>b)",  "(?<m>a|c)", "\\w"};
    static const std::vector<std::string> context{"a", "b", "c", "[ab]", "[bc]", "[^a]", "(?<x>b)", "(?:a|bc)",
                                                  "(?<y>c)", "$", "(?=a)", "(?=b|c)", "ab", "(?:ca)"};
    static const std::vector<std::string> quants{"?", "*", "+", "{2}", "{1,2}", "{0,3}", "{2,}", "{1}", "{0,1}"};
    static const std::vector<std::string> modes{"", "?", "+"};
    std::string re;
    auto before = rng_.below(3), after = rng_.below(3);
    for (std::uint64_t k = 0; k < before; ++k) re += pick(context);
    re += pick(quantified) + pick(quants) + pick(modes);
    for (std::uint64_t k = 0; k < after; ++k) re += pick(context);
    return re;
  }

 private:
  const std::string& pick(const std::vector<std::string>& v) { return v[rng_.below(v.size())]; }
  automata::Rng rng_;
};

/// Like SingleQuantifierGen but the context may hold further quantifiers,
/// nested groups and alternations.
class ContextGen {
 public:
  explicit ContextGen(std::uint64_t seed) : rng_(seed) {}

  std::string next() { return seq(2); }

 private:
  std::string atom(int depth) {
    static const std::vector<std::string> leaves{"a", "b", "c", "[ab]", "[^b]", ".", "\\w", "$", "ab", "(?=a)"};
    auto k = rng_.below(depth > 0 ? 4 : 2);
    if (k == 2) return "(?:" + seq(depth - 1) + "|" + seq(depth - 1) + ")";
    if (k == 3) return "(?:" + seq(depth - 1) + ")";
    return leaves[rng_.below(leaves.size())];
  }
  std::string quant() {
    static const std::vector<std::string> q{"", "", "", "?", "*", "+", "{2}", "{1,2}", "{0,2}", "{2,}"};
    static const std::vector<std::string> m{"", "", "?", "+"};
    auto s = q[rng_.below(q.size())];
    return s.empty() ? s : s + m[rng_.below(m.size())];
  }
  std::string seq(int depth) {
    std::string out;
    auto n = 1 + rng_.below(3);
    for (std::uint64_t i = 0; i < n; ++i) {
      auto a = atom(depth);
      if (a == "$" || a.rfind("(?=", 0) == 0) out += a;
      else if (a.size() > 1 && a[0] != '[' && a[0] != '(' && a[0] != '\\') out += "(?:" + a + ")" + quant();
      else out += a + quant();
    }
    return out;
  }
  automata::Rng rng_;
};

/// Textbook definitions, written independently of the library.
struct MetricsOracle {
  double precision, recall, f1, mcc;
  static MetricsOracle of(double tp, double fp, double fn, double tn) {
    MetricsOracle m{};
    m.precision = tp / (tp + fp);
    m.recall = tp / (tp + fn);
    m.f1 = 2 * tp / (2 * tp + fp + fn);
    m.mcc = (tp * tn - fp * fn) / std::sqrt((tp + fp) * (tp + fn) * (tn + fp) * (tn + fn));
    return m;
  }
};

// ---- JSON schema shapes of the HTTP API -------------------------------------

/// Returns the first violation, or empty.
inline std::string check_fields(const nlohmann::json& j,
                                const std::vector<std::pair<std::string, nlohmann::json::value_t>>& fields,
                                const std::string& where) {
  if (!j.is_object()) return where + ": not an object";
  for (const auto& [k, t] : fields) {
    if (!j.contains(k)) return where + ": missing '" + k + "'";
    auto actual = j[k].type();
    bool ok = actual == t || (t == nlohmann::json::value_t::number_integer && j[k].is_number_integer()) ||
              (t == nlohmann::json::value_t::number_float && j[k].is_number());
    if (!ok) return where + ": '" + k + "' has type " + j[k].type_name();
  }
  return {};
}

inline std::string check_fragment_json(const nlohmann::json& f, const std::string& where) {
  using vt = nlohmann::json::value_t;
  auto e = check_fields(f, {{"matcher", vt::object}}, where);
  if (!e.empty()) return e;
  for (const char* k : {"quantifier", "export", "unsafe_reason", "origin_span"})
    if (!f.contains(k)) return where + ": missing '" + k + "'";
  return {};
}

inline std::string check_pattern_json(const nlohmann::json& p, const std::string& where) {
  using vt = nlohmann::json::value_t;
  auto e = check_fields(p, {{"fragments", vt::array}}, where);
  if (!e.empty()) return e;
  for (std::size_t i = 0; i < p["fragments"].size(); ++i) {
    e = check_fragment_json(p["fragments"][i], where + ".fragments[" + std::to_string(i) + "]");
    if (!e.empty()) return e;
  }
  return {};
}

inline std::string check_conversion_json(const nlohmann::json& c) {
  using vt = nlohmann::json::value_t;
  auto e = check_fields(c, {{"source", vt::string}, {"classification", vt::string}, {"fragments", vt::array},
                            {"quantifiers", vt::array}, {"dpl", vt::string}, {"pattern", vt::object}},
                        "conversion");
  if (!e.empty()) return e;
  if (!c.contains("impossible_reason")) return "conversion: missing 'impossible_reason'";
  for (const auto& f : c["fragments"]) {
    e = check_fields(f, {{"index", vt::number_unsigned}, {"span", vt::object}, {"dpl_span", vt::object},
                         {"strategy", vt::string}},
                     "conversion.fragments[]");
    if (!e.empty()) return e;
    if (!f.contains("unsafe_reason")) return "conversion.fragments[]: missing 'unsafe_reason'";
  }
  return check_pattern_json(c["pattern"], "conversion.pattern");
}

inline std::string check_report_json(const nlohmann::json& r) {
  using vt = nlohmann::json::value_t;
  auto e = check_fields(r, {{"passed", vt::boolean}, {"counts", vt::object}, {"negatives_generated", vt::boolean},
                            {"diagnostics", vt::array}, {"cases", vt::array}},
                        "report");
  if (!e.empty()) return e;
  e = check_fields(r["counts"], {{"positives", vt::number_unsigned}, {"negatives", vt::number_unsigned},
                                 {"positives_failed", vt::number_unsigned}, {"negatives_failed", vt::number_unsigned}},
                   "report.counts");
  if (!e.empty()) return e;
  for (const auto& c : r["cases"]) {
    e = check_fields(c, {{"input", vt::string}, {"kind", vt::string}, {"regex_outcome", vt::object}, {"dpl_outcome", vt::object},
                         {"passed", vt::boolean}},
                     "report.cases[]");
    if (!e.empty()) return e;
  }
  return {};
}

inline std::string check_suggestions_json(const nlohmann::json& s) {
  using vt = nlohmann::json::value_t;
  if (!s.is_array()) return "suggestions: not an array";
  for (const auto& e : s) {
    auto err = check_fields(e, {{"fragment", vt::number_unsigned}, {"matcher", vt::string},
                                {"rationale", vt::string}, {"source", vt::string}},
                            "suggestions[]");
    if (!err.empty()) return err;
  }
  return {};
}

}  // namespace rx2dpl::oracle
