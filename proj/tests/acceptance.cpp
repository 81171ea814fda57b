#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "hogroup/suites.hpp"

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string metric(const hogroup::SuiteResult& r, const std::string& key) {
  for (const auto& [k, v] : r.metrics)
    if (k == key) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%s=%.4g", k.c_str(), v);
      return buf;
    }
  return "";
}

std::string worst_moved(const hogroup::SuiteResult& r) {
  if (r.ratios.empty()) return "";
  double w = 0;
  for (const auto& row : r.ratios) w = std::max(w, row.moved);
  char buf[64];
  std::snprintf(buf, sizeof buf, "worst_moved=%.4g(%zu rows)", w, r.ratios.size());
  return buf;
}

Outcome suites(const std::vector<std::string>& names, const std::vector<std::string>& keys) {
  Outcome o{true, ""};
  for (const auto& n : names) {
    auto r = hogroup::run_suite(n);
    if (!r.pass()) {
      o.pass = false;
      const auto* f = r.first_failure();
      char buf[256];
      std::snprintf(buf, sizeof buf, "%s failed %s/%s value=%.4g limit=%.4g ", n.c_str(),
                    f->module.c_str(), f->invariant.c_str(), f->value, f->limit);
      o.detail += buf;
    } else {
      o.detail += n + " " + std::to_string(r.checks.size()) + " checks ";
    }
    if (auto s = worst_moved(r); !s.empty()) o.detail += s + " ";
    for (const auto& k : keys) {
      auto s = metric(r, k);
      if (!s.empty()) o.detail += s + " ";
    }
  }
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

int sh(const std::string& cmd) {
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / ("hogroup_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string cli = HOGROUP_CLI_PATH;
  auto p = [&](const char* n) { return (dir / n).string(); };
  Outcome o{true, ""};
  if (sh(cli + " function make --group R --half-width 64 --n 4096 --kind family:random_gaussians --output " + p("f.bin") + " > /dev/null") != 0)
    o = {false, "function make failed "};
  if (o.pass && sh(cli + " filters build --input " + p("f.bin") + " --output " + p("filt") + " > /dev/null") != 0)
    o = {false, "filters build failed "};
  const std::vector<std::string> cmds = {
      "norm compute --space tl --sigma 0.5 --p 1 --q 2 --filter " + p("filt") + " --input " + p("f.bin"),
      "verify maximal --seed 7",
      "verify group --seed 11",
  };
  for (std::size_t i = 0; o.pass && i < cmds.size(); ++i) {
    const int a = sh(cli + " " + cmds[i] + " > " + p("a.out") + " 2>/dev/null");
    const int b = sh("HOGROUP_THREADS=1 " + cli + " " + cmds[i] + " > " + p("b.out") + " 2>/dev/null");
    const std::string sa = slurp(p("a.out")), sb = slurp(p("b.out"));
    if (a != 0 || b != 0 || sa.empty() || sa != sb) {
      o.pass = false;
      o.detail += "mismatch on '" + cmds[i].substr(0, cmds[i].find(' ', 8)) + "' ";
    } else {
      o.detail += std::to_string(sa.size()) + "B identical ";
    }
  }
  fs::remove_all(dir);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> list = {
      {1, "group axioms, quasi-norm, polar law", 30, [] { return suites({"group"}, {"H1.gamma", "engel.gamma", "H1.polar_constant"}); }},
      {2, "Taylor polynomials", 60, [] { return suites({"taylor"}, {}); }},
      {3, "Calderon reproducing formulas", 600,
       [] { return suites({"calderon"}, {"R.recon_error.discrete", "R.recon_error.continuous", "H1.recon_error.continuous"}); }},
      {4, "almost-orthogonality decay", 120, [] { return suites({"aoe"}, {"slope_coarse", "slope_fine"}); }},
      {5, "maximal functions", 120, [] { return suites({"maximal"}, {"M_chi_at_2", "majorant_spread"}); }},
      {6, "dyadic ball systems", 120, [] { return suites({"dyadic"}, {"R.m", "H1.m"}); }},
      {7, "norm equivalences", 1200, [] { return suites({"equivalence"}, {"F_pp_vs_B_pp"}); }},
      {8, "wavelet isometry and frame", 600, [] { return suites({"wavelet"}, {"R.isometry_deviation", "R.frame_recon_error", "R.frame_iterations"}); }},
      {9, "classical identifications and Riesz", 900,
       [] { return suites({"identifications", "riesz"}, {}); }},
      {10, "CLI determinism", 300, determinism},
  };
  int failed = 0;
  for (const auto& c : list) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    const bool in_time = secs <= c.limit_s;
    const bool ok = o.pass && in_time;
    if (!ok) ++failed;
    std::printf("%s criterion %d (%s): %s time=%.1fs/%.0fs%s\n", ok ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, c.limit_s, in_time ? "" : " over budget");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
