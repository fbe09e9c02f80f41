#include "rx2dpl/optimize/heuristic.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rx2dpl/dpl/engine.hpp"
#include "rx2dpl/error.hpp"

namespace rx2dpl::optimize {

using dpl::BuiltinKind;

KeywordTable parse_keywords(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("keyword table is not valid JSON: ") + e.what());
  }
  if (!j.contains("matchers") || !j["matchers"].is_array()) throw Error("keyword table needs a 'matchers' array");
  KeywordTable t;
  for (const auto& e : j["matchers"]) {
    auto k = dpl::builtin_from_name(e.value("matcher", ""));
    if (!k || !is_suggestible(*k)) throw Error("keyword table names an unsupported matcher");
    std::vector<std::string> words;
    for (const auto& w : e.at("keywords")) {
      std::string s = w.get<std::string>();
      std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
      if (!s.empty()) words.push_back(s);
    }
    t.entries.emplace_back(*k, std::move(words));
  }
  return t;
}

KeywordTable load_keywords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open keyword table: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_keywords(ss.str());
}

std::string default_keywords_path() {
  if (const char* env = std::getenv("RX2DPL_KEYWORDS"); env && *env) return env;
  return std::string(RX2DPL_DATA_DIR) + "/keywords.json";
}

const KeywordTable& default_keywords() {
  static const KeywordTable t = load_keywords(default_keywords_path());
  return t;
}

const std::vector<std::string>& witnesses(BuiltinKind k) {
  // One value per digit count, so fixed-width fragments find a witness.
  static const std::vector<std::string> ints{"0",      "7",       "42",       "200",        "8080",      "65535",
                                             "123456", "1234567", "12345678", "123456789", "1234567890", "-12"};
  static const std::vector<std::string> longs{"0",           "42",           "200",           "8080",
                                              "65535",       "123456",       "1234567",       "12345678",
                                              "123456789",   "9000000000",   "12345678901",   "123456789012",
                                              "1234567890123", "-12"};
  static const std::vector<std::string> doubles{"3.14", "0.5", "-2.75", "0.001", "12", "1e3"};
  static const std::vector<std::string> ips{"192.168.0.1", "10.0.0.255", "8.8.8.8", "::1", "fe80::1", "2001:db8::ff00:42:8329"};
  static const std::vector<std::string> stamps{"2024-01-31 12:34:56", "1999-12-31 23:59:59"};
  static const std::vector<std::string> none;
  switch (k) {
    case BuiltinKind::INT: return ints;
    case BuiltinKind::LONG: return longs;
    case BuiltinKind::DOUBLE: return doubles;
    case BuiltinKind::IPADDR: return ips;
    case BuiltinKind::TIMESTAMP: return stamps;
    default: return none;
  }
}

std::string language_witness(const dpl::Fragment& f, BuiltinKind k) {
  dpl::DplEngine engine(dpl::DplPattern{{without_exports(f)}});
  dpl::EngineOptions opts;
  opts.mode = dpl::MatchMode::full;
  opts.step_budget = 100'000;
  for (const auto& w : witnesses(k)) {
    try {
      if (engine.match(w, opts).matched) return w;
    } catch (const StepLimitExceeded&) {
    }
  }
  return {};
}

std::vector<Suggestion> suggest_heuristic(const dpl::DplPattern& p, const KeywordTable& table) {
  std::vector<Suggestion> out;
  for (std::size_t i = 0; i < p.fragments.size(); ++i) {
    const auto& f = p.fragments[i];
    if (!f.export_name) continue;
    std::vector<std::string> nested;
    dpl::collect_exports(f.matcher.body, nested);
    for (const auto& br : f.matcher.branches) dpl::collect_exports(br, nested);
    if (!nested.empty()) continue;

    std::string name = f.export_name->name;
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
    struct Hit {
      std::size_t length, order;
      BuiltinKind kind;
      std::string keyword;
    };
    std::vector<Hit> hits;
    for (std::size_t e = 0; e < table.entries.size(); ++e)
      for (const auto& kw : table.entries[e].second)
        if (name.find(kw) != std::string::npos) hits.push_back({kw.size(), e, table.entries[e].first, kw});
    std::stable_sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
      return a.length != b.length ? a.length > b.length : a.order < b.order;
    });
    for (const auto& h : hits) {
      if (f.matcher.kind == dpl::Matcher::Kind::builtin && f.matcher.builtin == h.kind && !f.quantifier) break;
      std::string w = language_witness(f, h.kind);
      if (w.empty()) continue;
      Suggestion s;
      s.fragment_index = i;
      s.proposed = h.kind;
      s.source = SuggestionSource::heuristic;
      s.rationale = "export name '" + f.export_name->name + "' contains '" + h.keyword + "' and the fragment accepts '" +
                    w + "'";
      out.push_back(std::move(s));
      break;
    }
  }
  return out;
}

}  // namespace rx2dpl::optimize
