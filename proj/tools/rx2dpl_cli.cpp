#include <csignal>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rx2dpl/charset.hpp"
#include "rx2dpl/convert/converter.hpp"
#include "rx2dpl/dpl/json.hpp"
#include "rx2dpl/dpl/syntax.hpp"
#include "rx2dpl/error.hpp"
#include "rx2dpl/optimize/evaluation.hpp"
#include "rx2dpl/optimize/heuristic.hpp"
#include "rx2dpl/optimize/llm_client.hpp"
#include "rx2dpl/regex/census.hpp"
#include "rx2dpl/regex/normalize.hpp"
#include "rx2dpl/regex/parser.hpp"
#include "rx2dpl/service/server.hpp"
#include "rx2dpl/validate/validator.hpp"

using namespace rx2dpl;
using nlohmann::json;

namespace {

enum Exit : int { kOk = 0, kBestEffort = 1, kFailed = 2, kUsage = 3 };

struct Common {
  bool json_out = false;
  bool unanchored = false;
  std::string alphabet;
  std::size_t step_budget = 10'000'000;

  validate::SuiteOptions suite() const {
    validate::SuiteOptions s;
    if (!alphabet.empty()) s.universe = parse_charset_spec(alphabet);
    return s;
  }
  validate::DiffOptions diff() const {
    validate::DiffOptions d;
    d.regex_step_budget = step_budget;
    d.dpl_step_budget = step_budget;
    return d;
  }
  convert::ConvertOptions conv() const {
    convert::ConvertOptions c;
    c.unanchored_wrapper = unanchored;
    return c;
  }
};

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

int run_convert(const Common& c, const std::string& regex, const std::string& file) {
  std::vector<std::string> sources;
  if (!file.empty()) {
    for (auto& l : regex::read_corpus_file(file))
      if (!l.empty() && l[0] != '#') sources.push_back(l);
  } else {
    sources.push_back(regex);
  }
  int code = kOk;
  json all = json::array();
  for (const auto& src : sources) {
    json j;
    try {
      auto r = convert::convert_regex(src, c.conv());
      j = convert::to_json(r);
      if (r.classification == convert::Classification::impossible) code = kFailed;
      else if (r.classification == convert::Classification::best_effort && code == kOk) code = kBestEffort;
      if (!c.json_out) {
        if (r.pattern) {
          std::cout << dpl::serialize(*r.pattern) << "\n";
          std::cout << "  " << convert::classification_name(r.classification) << "\n";
          for (const auto& q : r.quantifiers)
            if (q.unsafe_reason)
              std::cout << "  unsafe at " << q.span.begin << ".." << q.span.end << ": " << *q.unsafe_reason << "\n";
        } else {
          std::cout << "impossible: " << r.impossible_reason.value_or("") << "\n";
        }
      }
    } catch (const SyntaxError& e) {
      code = kFailed;
      j = {{"source", src}, {"error", e.what()}, {"position", e.position()}};
      if (!c.json_out) std::cout << "error: " << e.what() << "\n";
    }
    all.push_back(j);
  }
  if (c.json_out) print_json(file.empty() ? all[0] : all);
  return code;
}

int run_validate(const Common& c, const std::string& src, std::size_t n_pos, std::size_t n_neg, std::uint64_t seed) {
  regex::RegexAst ast;
  convert::ConversionResult r;
  try {
    ast = regex::normalize(regex::parse_regex(src));
    r = convert::convert(ast, c.conv());
  } catch (const SyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  if (!r.pattern) {
    if (c.json_out) print_json(convert::to_json(r));
    else std::cout << "impossible: " << r.impossible_reason.value_or("") << "\n";
    return kFailed;
  }
  auto suite = validate::generate_suite(ast, n_pos, n_neg, seed, c.suite());
  auto rep = validate::run_differential(ast, r, suite, c.diff());
  if (c.json_out) {
    json j = validate::to_json(rep);
    j["dpl"] = dpl::serialize(*r.pattern);
    j["classification"] = convert::classification_name(r.classification);
    j["suite_diagnostics"] = suite.diagnostics;
    print_json(j);
  } else {
    std::cout << dpl::serialize(*r.pattern) << "\n  " << convert::classification_name(r.classification) << "\n";
    std::printf("  positives %zu (%zu failed), negatives %zu (%zu failed): %s\n", rep.positives, rep.positives_failed,
                rep.negatives, rep.negatives_failed, rep.passed ? "PASSED" : "FAILED");
    for (const auto& d : suite.diagnostics) std::cout << "  note: " << d << "\n";
    std::size_t shown = 0;
    for (const auto& cs : rep.cases) {
      if (cs.passed || ++shown > 10) continue;
      std::cout << "  " << (cs.kind == validate::CaseKind::positive ? "+" : "-") << " " << json(cs.input).dump()
                << " regex=" << (cs.regex_outcome.matched ? std::to_string(cs.regex_outcome.end) : "no")
                << " dpl=" << (cs.dpl_outcome.matched ? std::to_string(cs.dpl_outcome.end) : "no") << "\n";
      for (const auto& d : cs.export_diffs) std::cout << "      " << d << "\n";
    }
  }
  if (!rep.passed) return kFailed;
  return r.classification == convert::Classification::best_effort ? kBestEffort : kOk;
}

int run_census(const Common& c, const std::string& corpus) {
  auto cc = regex::census_corpus(regex::read_corpus_file(corpus));
  if (c.json_out) print_json(regex::census_to_json(cc));
  else std::cout << regex::census_to_table(cc);
  return kOk;
}

int run_evaluate(const Common& c, const std::string& corpus, const std::string& dataset, std::size_t n_pos,
                 std::size_t n_neg, const std::vector<std::uint64_t>& seeds) {
  if (!dataset.empty()) {
    auto data = optimize::load_dataset(dataset);
    auto cfg = optimize::LlmConfig::from_env();
    const auto& table = optimize::default_keywords();
    auto ev = optimize::evaluate_optimizer(data, [&](const dpl::DplPattern& p) {
      return optimize::suggest(p, cfg, table).suggestions;
    });
    if (c.json_out) print_json(optimize::to_json(ev));
    else std::cout << optimize::evaluation_to_table(ev);
    return kOk;
  }
  validate::CorpusOptions o;
  o.n_pos = n_pos;
  o.n_neg = n_neg;
  o.seeds = seeds;
  o.suite = c.suite();
  o.diff = c.diff();
  o.convert = c.conv();
  auto rep = validate::evaluate_corpus(regex::read_corpus_file(corpus), o);
  if (c.json_out) print_json(validate::to_json(rep));
  else std::cout << validate::report_to_table(rep);
  return rep.safe_failures == 0 ? kOk : kFailed;
}

int run_optimize(const Common& c, const std::string& dpl_text, const std::string& regex_src) {
  dpl::DplPattern p;
  if (!dpl_text.empty()) {
    p = dpl::parse_dpl(dpl_text);
  } else {
    auto r = convert::convert_regex(regex_src, c.conv());
    if (!r.pattern) {
      std::cerr << "impossible: " << r.impossible_reason.value_or("") << "\n";
      return kFailed;
    }
    p = *r.pattern;
  }
  auto out = optimize::suggest(p, optimize::LlmConfig::from_env());
  if (c.json_out) {
    print_json({{"dpl", dpl::serialize(p)},
                {"source", optimize::source_name(out.source)},
                {"suggestions", optimize::to_json(out.suggestions)},
                {"diagnostics", out.diagnostics}});
    return kOk;
  }
  std::cout << dpl::serialize(p) << "\n";
  auto views = optimize::fragments_of(p);
  for (const auto& s : out.suggestions) {
    auto applied = optimize::apply_suggestion(p, s);
    std::cout << "  fragment " << s.fragment_index << " " << views[s.fragment_index].text << " -> "
              << dpl::builtin_name(s.proposed) << " (" << optimize::source_name(s.source) << ": " << s.rationale
              << ")\n    " << dpl::serialize(applied) << "\n";
  }
  if (out.suggestions.empty()) std::cout << "  no suggestions\n";
  for (const auto& d : out.diagnostics) std::cout << "  note: " << d << "\n";
  return kOk;
}

service::HttpServer* g_server = nullptr;

int run_serve(const Common& c, const std::string& host, int port, const std::string& data_dir,
              const std::string& cors) {
  service::ServiceConfig cfg;
  cfg.data_dir = data_dir;
  cfg.cors_origin = cors;
  cfg.convert = c.conv();
  cfg.suite = c.suite();
  cfg.diff = c.diff();
  cfg.llm = optimize::LlmConfig::from_env();
  service::Service svc(cfg);
  service::HttpServer server(svc);
  g_server = &server;
  std::signal(SIGINT, [](int) {
    if (g_server) g_server->stop();
  });
  std::signal(SIGTERM, [](int) {
    if (g_server) g_server->stop();
  });
  std::cerr << "listening on " << host << ":" << port << (data_dir.empty() ? "" : ", sessions in " + data_dir)
            << "\n";
  bool ok = server.listen(host, port);
  g_server = nullptr;
  if (!ok && port > 0) {
    std::cerr << "cannot bind " << host << ":" << port << "\n";
    return kFailed;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regex to DPL converter, validator and optimizer"};
  app.require_subcommand(1);
  app.fallthrough();
  Common c;
  app.add_flag("--json", c.json_out, "JSON output");
  app.add_flag("--unanchored", c.unanchored, "Prefix a lazy skip fragment (unanchored search semantics)");
  app.add_option("--alphabet", c.alphabet, "Sampling alphabet as a class body, e.g. '\\t\\n\\r -~'");
  app.add_option("--step-budget", c.step_budget, "Step budget of each regex and DPL match")->check(CLI::PositiveNumber);

  std::string regex, file, corpus, dataset, dpl_text, host = "127.0.0.1", data_dir, cors = "*";
  std::size_t n_pos = 200, n_neg = 200;
  std::uint64_t seed = 1;
  std::vector<std::uint64_t> seeds{1, 2};
  int port = 8080;

  auto* conv = app.add_subcommand("convert", "Convert a regex (or every line of a file) to DPL");
  conv->add_option("regex", regex, "Regular expression");
  auto* conv_file = conv->add_option("--file", file, "File with one regex per line")->check(CLI::ExistingFile);
  conv->callback([&] {
    if (regex.empty() && file.empty()) throw CLI::RequiredError("regex or --file");
  });
  (void)conv_file;

  auto* val = app.add_subcommand("validate", "Differentially test a conversion");
  val->add_option("--regex", regex, "Regular expression")->required();
  val->add_option("--samples", n_pos, "Positive samples")->check(CLI::PositiveNumber);
  val->add_option("--negatives", n_neg, "Negative samples");
  val->add_option("--seed", seed, "Sampling seed");

  auto* cen = app.add_subcommand("census", "Feature census of a regex corpus");
  cen->add_option("--corpus", corpus, "File with one regex per line")->required()->check(CLI::ExistingFile);

  auto* eva = app.add_subcommand("evaluate", "Classify and test a corpus, or score the optimizer on a dataset");
  auto* eva_corpus = eva->add_option("--corpus", corpus, "File with one regex per line")->check(CLI::ExistingFile);
  auto* eva_data = eva->add_option("--dataset", dataset, "Optimizer dataset directory")->check(CLI::ExistingDirectory);
  eva_corpus->excludes(eva_data);
  eva->add_option("--samples", n_pos, "Positive samples per seed")->check(CLI::PositiveNumber);
  eva->add_option("--negatives", n_neg, "Negative samples per seed");
  eva->add_option("--seeds", seeds, "Sampling seeds");
  eva->callback([&] {
    if (corpus.empty() && dataset.empty()) throw CLI::RequiredError("--corpus or --dataset");
  });

  auto* opt = app.add_subcommand("optimize", "Suggest high-level matchers for a pattern");
  auto* opt_dpl = opt->add_option("--dpl", dpl_text, "DPL pattern text");
  auto* opt_regex = opt->add_option("--regex", regex, "Regex to convert first");
  opt_dpl->excludes(opt_regex);
  opt->callback([&] {
    if (dpl_text.empty() && regex.empty()) throw CLI::RequiredError("--dpl or --regex");
  });

  auto* srv = app.add_subcommand("serve", "Run the HTTP API");
  srv->add_option("--port", port, "Port")->check(CLI::Range(0, 65535));
  srv->add_option("--host", host, "Bind address");
  srv->add_option("--data-dir", data_dir, "Directory for session files");
  srv->add_option("--cors-origin", cors, "Access-Control-Allow-Origin value; empty disables CORS");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*conv) return run_convert(c, regex, file);
    if (*val) return run_validate(c, regex, n_pos, n_neg, seed);
    if (*cen) return run_census(c, corpus);
    if (*eva) return run_evaluate(c, corpus, dataset, n_pos, n_neg, seeds);
    if (*opt) return run_optimize(c, dpl_text, regex);
    if (*srv) return run_serve(c, host, port, data_dir, cors);
  } catch (const DplSyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
