#include "rx2dpl/dpl/json.hpp"

#include "rx2dpl/error.hpp"

namespace rx2dpl::dpl {

using nlohmann::json;

namespace {

const char* kind_name(Matcher::Kind k) {
  switch (k) {
    case Matcher::Kind::literal: return "literal";
    case Matcher::Kind::builtin: return "builtin";
    case Matcher::Kind::char_class: return "class";
    case Matcher::Kind::group: return "group";
    case Matcher::Kind::alternation: return "alternation";
    case Matcher::Kind::lookahead: return "lookahead";
    case Matcher::Kind::array: return "array";
  }
  return "?";
}

const char* form_name(DplQuantifier::Form f) {
  switch (f) {
    case DplQuantifier::Form::optional: return "optional";
    case DplQuantifier::Form::exact: return "exact";
    case DplQuantifier::Form::range: return "range";
    case DplQuantifier::Form::at_least: return "at_least";
    case DplQuantifier::Form::at_most: return "at_most";
    case DplQuantifier::Form::star: return "star";
    case DplQuantifier::Form::plus: return "plus";
  }
  return "?";
}

json list_json(const std::vector<Fragment>& frags) {
  json a = json::array();
  for (const auto& f : frags) a.push_back(to_json(f));
  return a;
}

std::vector<Fragment> list_from(const json& j) {
  if (!j.is_array()) throw Error("expected an array of fragments");
  std::vector<Fragment> out;
  for (const auto& e : j) out.push_back(fragment_from_json(e));
  return out;
}

json matcher_json(const Matcher& m) {
  json j = {{"kind", kind_name(m.kind)}};
  switch (m.kind) {
    case Matcher::Kind::literal: j["text"] = m.text; break;
    case Matcher::Kind::builtin:
      j["name"] = builtin_name(m.builtin);
      if (!m.format.empty()) j["format"] = m.format;
      break;
    case Matcher::Kind::char_class: {
      j["negated"] = m.negated;
      json r = json::array();
      for (auto [lo, hi] : m.ranges) r.push_back({lo, hi});
      j["ranges"] = r;
      break;
    }
    case Matcher::Kind::group:
    case Matcher::Kind::lookahead:
    case Matcher::Kind::array: j["fragments"] = list_json(m.body); break;
    case Matcher::Kind::alternation: {
      json b = json::array();
      for (const auto& br : m.branches) b.push_back(list_json(br));
      j["branches"] = b;
      break;
    }
  }
  return j;
}

Matcher matcher_from(const json& j) {
  Matcher m;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "literal") {
    m.kind = Matcher::Kind::literal;
    m.text = j.at("text").get<std::string>();
  } else if (kind == "builtin") {
    m.kind = Matcher::Kind::builtin;
    auto b = builtin_from_name(j.at("name").get<std::string>());
    if (!b) throw Error("unknown builtin matcher '" + j.at("name").get<std::string>() + "'");
    m.builtin = *b;
    if (j.contains("format")) m.format = j.at("format").get<std::string>();
  } else if (kind == "class") {
    m.kind = Matcher::Kind::char_class;
    m.negated = j.at("negated").get<bool>();
    for (const auto& r : j.at("ranges")) m.ranges.emplace_back(r.at(0).get<unsigned char>(), r.at(1).get<unsigned char>());
  } else if (kind == "group" || kind == "lookahead" || kind == "array") {
    m.kind = kind == "group" ? Matcher::Kind::group : kind == "lookahead" ? Matcher::Kind::lookahead : Matcher::Kind::array;
    m.body = list_from(j.at("fragments"));
  } else if (kind == "alternation") {
    m.kind = Matcher::Kind::alternation;
    for (const auto& b : j.at("branches")) m.branches.push_back(list_from(b));
  } else {
    throw Error("unknown matcher kind '" + kind + "'");
  }
  return m;
}

}  // namespace

json to_json(const DplQuantifier& q) {
  json j = {{"form", form_name(q.form)}, {"text", quantifier_text(q)}};
  if (q.form != DplQuantifier::Form::optional) {
    j["min"] = q.min;
    j["max"] = q.max == kUnbounded ? json(nullptr) : json(q.max);
  }
  return j;
}

json to_json(const Fragment& f) {
  json j;
  j["matcher"] = matcher_json(f.matcher);
  j["quantifier"] = f.quantifier ? to_json(*f.quantifier) : json(nullptr);
  j["export"] = f.export_name ? json{{"name", f.export_name->name}, {"quoted", f.export_name->quoted}} : json(nullptr);
  j["unsafe_reason"] = f.unsafe_reason ? json(*f.unsafe_reason) : json(nullptr);
  j["origin_span"] = f.origin_span ? json{{"begin", f.origin_span->begin}, {"end", f.origin_span->end}} : json(nullptr);
  j["text"] = serialize(f);
  return j;
}

json to_json(const DplPattern& p) {
  json j;
  j["fragments"] = list_json(p.fragments);
  j["text"] = p.fragments.empty() ? json("") : json(serialize(p));
  return j;
}

json to_json(const Diagnostic& d) { return {{"code", d.code}, {"message", d.message}, {"path", d.path}}; }

Fragment fragment_from_json(const json& j) {
  try {
    Fragment f;
    f.matcher = matcher_from(j.at("matcher"));
    if (j.contains("quantifier") && !j["quantifier"].is_null()) {
      const json& q = j["quantifier"];
      std::string form = q.at("form").get<std::string>();
      auto max_of = [&] { return q.at("max").is_null() ? kUnbounded : q.at("max").get<std::size_t>(); };
      if (form == "optional") f.quantifier = DplQuantifier::optional_marker();
      else if (form == "star") f.quantifier = DplQuantifier::star();
      else if (form == "plus") f.quantifier = DplQuantifier::plus();
      else if (form == "exact") f.quantifier = DplQuantifier::exact(q.at("min").get<std::size_t>());
      else if (form == "range") f.quantifier = DplQuantifier::range(q.at("min").get<std::size_t>(), max_of());
      else if (form == "at_least") f.quantifier = DplQuantifier::at_least(q.at("min").get<std::size_t>());
      else if (form == "at_most") f.quantifier = DplQuantifier::at_most(max_of());
      else throw Error("unknown quantifier form '" + form + "'");
    }
    if (j.contains("export") && !j["export"].is_null())
      f.export_name = ExportName{j["export"].at("name").get<std::string>(), j["export"].value("quoted", false)};
    if (j.contains("unsafe_reason") && !j["unsafe_reason"].is_null())
      f.unsafe_reason = j["unsafe_reason"].get<std::string>();
    if (j.contains("origin_span") && !j["origin_span"].is_null())
      f.origin_span = SourceSpan{j["origin_span"].at("begin").get<std::size_t>(), j["origin_span"].at("end").get<std::size_t>()};
    return f;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed fragment JSON: ") + e.what());
  }
}

DplPattern pattern_from_json(const json& j) {
  if (!j.is_object() || !j.contains("fragments")) throw Error("malformed pattern JSON: missing fragments");
  DplPattern p;
  p.fragments = list_from(j.at("fragments"));
  return p;
}

}  // namespace rx2dpl::dpl
