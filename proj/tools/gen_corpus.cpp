// Writes a synthetic regex corpus, one expression per line, built from the
// supported feature set in log-parsing shapes. Deterministic for a seed.
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rx2dpl/automata/sampling.hpp"

namespace {

using rx2dpl::automata::Rng;

const std::vector<std::string> kLiterals = {"GET ", "user=", "id:", " ", "ms", "\\[", "\\]", "- ", "port ", ": ",
                                            "status=", "\\.", ",", "host=", "level=", "ERROR", "=", "/"};
const std::vector<std::string> kCaptureBodies = {
    "\\d+",    "\\w+",  "[^ ]+",  "[a-z]+",    "\\S+",    ".*?",     "\\d{1,3}", "[0-9a-f]+", "\\d{4}-\\d{2}-\\d{2}",
    "[A-Z]+", "\\d*", "[^,]+", "(?:GET|POST|PUT)", "\\w+?", "[^\\]]*", "\\d{2,}", "\\S*"};
const std::vector<std::string> kPlain = {
    "\\s+",      "\\s",         "\\d{2}",   "\\d+",      "[A-Z]",      "(?:GET|POST|PUT)", "(a|bc|d)",
    "(?: \\w+)?", "(\\s\\w)*",  ".*",       ".+?",       "(?=\\s)",    "\\n",              "\\t",
    "\\x41",     "\\D",         "\\W",      "\\S+",      "[abc]",      "[^abc]",           "(?:ab)+",
    "(abc)?",    "\\w+",        "[\\d\\w]", "a{2,5}?",   ".",          "x*",               "(?:-|\\+)?",
    "[0-9]{3}",  "\\d+?"};

std::string pick(Rng& r, const std::vector<std::string>& v) { return v[r.below(v.size())]; }

std::string make_regex(Rng& r) {
  std::string out;
  if (r.below(6) == 0) out += "^";
  std::size_t items = 2 + r.below(5);
  int names = 0;
  for (std::size_t i = 0; i < items; ++i) {
    switch (r.below(3)) {
      case 0:
        out += pick(r, kLiterals);
        break;
      case 1:
        out += "(?<f" + std::to_string(++names) + ">" + pick(r, kCaptureBodies) + ")";
        break;
      default:
        out += pick(r, kPlain);
        break;
    }
  }
  if (r.below(6) == 0) out += "$";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic regex corpus generator"};
  std::uint64_t seed = 2024;
  std::size_t count = 300;
  app.add_option("--seed", seed, "Generator seed");
  app.add_option("--count", count, "Number of distinct expressions");
  CLI11_PARSE(app, argc, argv);

  Rng rng(seed);
  std::set<std::string> seen;
  std::cout << "# synthetic corpus, seed " << seed << "\n";
  while (seen.size() < count) {
    auto re = make_regex(rng);
    if (seen.insert(re).second) std::cout << re << "\n";
  }
  return 0;
}
