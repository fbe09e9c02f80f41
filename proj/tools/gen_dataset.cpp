// Writes the log files of the optimizer mini-dataset (<dir>/<tech>.log).
// The regex and label files next to them are maintained by hand.
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rx2dpl/automata/sampling.hpp"

namespace {

using rx2dpl::automata::Rng;

std::string pick(Rng& r, const std::vector<std::string>& v) { return v[r.below(v.size())]; }

std::string num(Rng& r, std::uint64_t lo, std::uint64_t hi) { return std::to_string(r.between(lo, hi)); }

std::string two(Rng& r, std::uint64_t lo, std::uint64_t hi) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%02u", static_cast<unsigned>(r.between(lo, hi)));
  return buf;
}

std::string ipv4(Rng& r) {
  return num(r, 1, 223) + "." + num(r, 0, 255) + "." + num(r, 0, 255) + "." + num(r, 1, 254);
}

std::string hex(Rng& r, std::size_t n) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(digits[r.below(16)]);
  return s;
}

std::string stamp(Rng& r) {
  return "2024-" + two(r, 1, 12) + "-" + two(r, 1, 28) + " " + two(r, 0, 23) + ":" + two(r, 0, 59) + ":" + two(r, 0, 59);
}

std::string access_line(Rng& r) {
  static const std::vector<std::string> methods{"GET", "POST", "PUT", "DELETE"};
  static const std::vector<std::string> paths{"/", "/index.html", "/api/v1/items", "/login", "/static/app.js",
                                              "/img/logo.png"};
  static const std::vector<std::string> codes{"200", "200", "200", "301", "404", "500"};
  return ipv4(r) + " - - [" + stamp(r) + "] \"" + pick(r, methods) + " " + pick(r, paths) + " HTTP/1.1\" " +
         pick(r, codes) + " " + num(r, 0, 250000) + " rt=" + num(r, 0, 9) + "." + num(r, 100, 999);
}

std::string sshd_line(Rng& r) {
  static const std::vector<std::string> months{"Jan", "Feb", "Mar", "Apr", "May", "Jun"};
  static const std::vector<std::string> users{"root", "admin", "deploy", "git", "ubuntu"};
  static const std::vector<std::string> outcome{"Failed", "Accepted"};
  return pick(r, months) + " " + num(r, 1, 28) + " " + two(r, 0, 23) + ":" + two(r, 0, 59) + ":" + two(r, 0, 59) +
         " gw" + num(r, 1, 4) + " sshd[" + num(r, 100, 65000) + "]: " + pick(r, outcome) + " password for " +
         pick(r, users) + " from " + ipv4(r) + " port " + num(r, 1024, 65535) + " ssh2 session_id=" + hex(r, 8);
}

std::string app_line(Rng& r) {
  static const std::vector<std::string> levels{"INFO", "WARN", "ERROR", "DEBUG"};
  std::string peer = r.below(4) == 0 ? "fe80::" + hex(r, 4) : ipv4(r);
  std::string rc = r.below(5) == 0 ? "-" + num(r, 1, 9) : "0";
  return stamp(r) + " level=" + pick(r, levels) + " rc=" + rc + " duration=" + num(r, 0, 30) + "." + num(r, 0, 999) +
         " peer=" + peer + " retries=" + num(r, 0, 5) + " size=" + num(r, 0, 9000000000ULL) + " req=" + hex(r, 6);
}

void write(const std::string& path, std::size_t n, Rng& r, std::string (*line)(Rng&)) {
  std::ofstream out(path);
  for (std::size_t i = 0; i < n; ++i) out << line(r) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimizer mini-dataset log generator"};
  std::string dir = ".";
  std::uint64_t seed = 7;
  std::size_t lines = 60;
  app.add_option("--dir", dir, "Output directory");
  app.add_option("--seed", seed, "Generator seed");
  app.add_option("--lines", lines, "Lines per technology");
  CLI11_PARSE(app, argc, argv);

  Rng rng(seed);
  write(dir + "/apache_access.log", lines, rng, access_line);
  write(dir + "/openssh.log", lines, rng, sshd_line);
  write(dir + "/service_app.log", lines, rng, app_line);
  return 0;
}
