// Acceptance runner: one PASS/FAIL line per criterion, sub-results indented
// below it. Exits 1 if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "geomax/closest_product.hpp"
#include "geomax/zoo.hpp"
#include "properties.hpp"
#include "repro.hpp"

using namespace geomax;
using geomax::cli::ReproRow;

namespace {

constexpr double kZooTol = 1e-6;
constexpr double kAme54Tol = 1e-4;
constexpr double kGapTol = 1e-5;
constexpr std::uint64_t kSeed = 0;

struct Criterion {
  int number;
  std::string title;
  std::vector<std::string> lines;
  bool passed = true;
  double seconds = 0.0;
};

void add_rows(Criterion& c, const std::vector<ReproRow>& rows) {
  for (const auto& r : rows) {
    c.lines.push_back(cli::format_row(r));
    c.passed = c.passed && r.pass();
  }
}

void report(const Criterion& c) {
  std::printf("criterion %d: %s  %s  (%.1f s)\n", c.number, c.passed ? "PASS" : "FAIL", c.title.c_str(), c.seconds);
  for (const auto& l : c.lines) std::printf("    %s\n", l.c_str());
  std::fflush(stdout);
}

template <class F>
Criterion timed(int number, std::string title, F&& body) {
  Criterion c{number, std::move(title), {}, true, 0.0};
  const auto t0 = std::chrono::steady_clock::now();
  body(c);
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(c);
  return c;
}

double zoo_g(const PureState& s) {
  SeesawConfig cfg = SeesawConfig::defaults_for(s.shape());
  cfg.restarts *= 4;
  cfg.seed = kSeed;
  return geometric_measure(s, cfg);
}

ReproRow zoo_row(const std::string& label, const PureState& s, double target, double tol) {
  const auto t0 = std::chrono::steady_clock::now();
  ReproRow r;
  r.label = label;
  r.value = zoo_g(s);
  r.target = target;
  r.tol = tol;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

int main() {
  cli::ReproOptions opt;
  opt.seed = kSeed;
  std::vector<Criterion> all;

  all.push_back(timed(1, "qubit ascent n = 2..6", [&](Criterion& c) { add_rows(c, cli::repro_table1(opt)); }));

  all.push_back(timed(2, "7 qubits: G >= 0.941 and MMS with k* = 3",
                      [&](Criterion& c) { add_rows(c, {cli::repro_seven_qubits(opt)}); }));

  all.push_back(timed(3, "bipartite d = 2..10 and Bell-state LU match",
                      [&](Criterion& c) { add_rows(c, cli::repro_bipartite(opt)); }));

  all.push_back(timed(4, "closest-product values of the qudit zoo", [&](Criterion& c) {
    add_rows(c, {
                    zoo_row("psi3", antisymmetric(3), 5.0 / 6.0, kZooTol),
                    zoo_row("psi4", antisymmetric(4), 23.0 / 24.0, kZooTol),
                    zoo_row("ame3_3", ame_3d(3), 2.0 / 3.0, kZooTol),
                    zoo_row("phi34", phi_34(), 7.0 / 8.0, kZooTol),
                    zoo_row("ame43", ame_43(), 8.0 / 9.0, kZooTol),
                    zoo_row("ame5_3", ame_5d(3), 0.96122, kAme54Tol),
                    zoo_row("ame5_4", ame_5d(4), 31.0 / 32.0, kZooTol),
                    zoo_row("graph:ame44_pairs", named_graph_state("ame44_pairs"), 15.0 / 16.0, kZooTol),
                    zoo_row("graph:fano", named_graph_state("fano"), 15.0 / 16.0, kZooTol),
                });
  }));

  all.push_back(timed(5, "3 ququads 1-uniform at 7/8, 4 qutrits AME at 8/9", [&](Criterion& c) {
    add_rows(c, {cli::repro_three_ququads(opt), cli::repro_four_qutrits(opt)});
  }));

  all.push_back(timed(6, "maximal subspaces", [&](Criterion& c) { add_rows(c, cli::repro_subspaces(opt)); }));

  all.push_back(timed(7, "property suites", [&](Criterion& c) {
    for (const auto& v : props::full_suite(kSeed)) {
      c.lines.push_back(std::string(v.passed ? "PASS  " : "FAIL  ") + v.name + ": " + v.detail);
      c.passed = c.passed && v.passed;
    }
  }));

  all.push_back(timed(8, "G(ame3_4) and G(phi34) differ by 1/8", [&](Criterion& c) {
    const double a = zoo_g(ame_3d(4));
    const double b = zoo_g(phi_34());
    ReproRow r;
    r.label = "G(phi34) - G(ame3_4)";
    r.value = b - a;
    r.target = 1.0 / 8.0;
    r.tol = kGapTol;
    char note[96];
    std::snprintf(note, sizeof note, "G(ame3_4) = %.10f, G(phi34) = %.10f", a, b);
    r.note = note;
    add_rows(c, {r});
  }));

  int failed = 0;
  for (const auto& c : all) failed += !c.passed;
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
