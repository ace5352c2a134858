#include "repro.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <ostream>

#include "geomax/analysis.hpp"
#include "geomax/canonicalize.hpp"
#include "geomax/subspace.hpp"
#include "geomax/zoo.hpp"

namespace geomax::cli {

namespace {

constexpr double kStepFloor = 1e-7;
constexpr int kSubspaceSeeds = 4;

ReproRow timed(const ReproOptions& opt, const std::function<ReproRow()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  ReproRow row = fn();
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (opt.progress) {
    *opt.progress << format_row(row);
    char buf[32];
    std::snprintf(buf, sizeof buf, " (%.1fs)\n", row.seconds);
    *opt.progress << buf << std::flush;
  }
  return row;
}

AscentTrace ascend(const SystemShape& shape, double theta0, const ReproOptions& opt) {
  return run_ascent(random_pure_state(shape, opt.seed), repro_ascent_config(shape, theta0, opt));
}

ReproRow make_row(std::string label, double value, double target, double tol, std::string mode = "abs") {
  ReproRow r;
  r.label = std::move(label);
  r.value = value;
  r.target = target;
  r.tol = tol;
  r.mode = std::move(mode);
  return r;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1e", v);
  return buf;
}

}  // namespace

bool ReproRow::pass() const {
  if (!extra_ok || !std::isfinite(value)) return false;
  if (mode == "min") return value >= target - tol;
  if (mode == "max") return value <= target + tol;
  return std::abs(value - target) <= tol;
}

AscentConfig repro_ascent_config(const SystemShape& shape, double theta0, const ReproOptions& opt) {
  AscentConfig cfg = AscentConfig::defaults_for(shape);
  cfg.theta0 = theta0;
  cfg.theta_min = kStepFloor;
  cfg.seesaw.seed = opt.seed;
  cfg.seesaw.jobs = opt.jobs;
  return cfg;
}

std::vector<ReproRow> repro_table1(const ReproOptions& opt) {
  struct Case {
    int n;
    double theta;
    double target;
  };
  const Case cases[] = {
      {2, 0.01, 0.5},
      {3, 0.01, 5.0 / 9.0},
      {4, 0.01, 7.0 / 9.0},
      {5, 0.01, (33.0 - std::sqrt(3.0)) / 36.0},
      {6, 0.06, 11.0 / 12.0},
  };
  std::vector<ReproRow> rows;
  for (const auto& c : cases) {
    rows.push_back(timed(opt, [&] {
      const auto tr = ascend(SystemShape::uniform(c.n, 2), c.theta, opt);
      ReproRow r = make_row("qubits n=" + std::to_string(c.n), tr.best_g, c.target, 1e-5);
      r.note = "iters " + std::to_string(tr.records.size() - 1);
      return r;
    }));
  }
  return rows;
}

std::vector<ReproRow> repro_bipartite(const ReproOptions& opt) {
  std::vector<ReproRow> rows;
  for (int d = 2; d <= 10; ++d) {
    rows.push_back(timed(opt, [&] {
      const auto tr = ascend(SystemShape::uniform(2, d), d == 10 ? 0.1 : 0.01, opt);
      const double target = 1.0 - 1.0 / d;
      int first_hit = -1;
      for (const auto& rec : tr.records) {
        if (std::abs(rec.g - target) <= 1e-5) {
          first_hit = rec.iter;
          break;
        }
      }
      SearchBudget budget;
      budget.seed = opt.seed;
      budget.jobs = opt.jobs;
      const auto fid = lu_fidelity(tr.final_state, bell_qudit(d), budget);
      ReproRow r = make_row("bipartite d=" + std::to_string(d), tr.best_g, target, 1e-5);
      r.extra_ok = fid.equal;
      r.note = "bell fidelity 1-" + sci(1.0 - fid.fidelity) + ", within 1e-5 at iter " + std::to_string(first_hit);
      return r;
    }));
  }
  return rows;
}

std::vector<ReproRow> repro_subspaces(const ReproOptions& opt) {
  std::vector<ReproRow> rows;
  // Some random starts settle on a lower plateau, so the larger cases keep
  // the best of kSubspaceSeeds runs.
  auto run = [&](const SystemShape& shape, int seeds) {
    const AscentConfig cfg = repro_ascent_config(shape, 0.01, opt);
    std::optional<SubspaceTrace> best;
    for (int i = 0; i < seeds; ++i) {
      auto tr = run_subspace_ascent(shape, 2, cfg, opt.seed + static_cast<std::uint64_t>(i));
      if (!best || tr.best_measure > best->best_measure) best = std::move(tr);
    }
    return std::move(*best);
  };
  SearchBudget budget;
  budget.seed = opt.seed;
  budget.jobs = opt.jobs;
  rows.push_back(timed(opt, [&] {
    const auto tr = run(SystemShape::uniform(2, 2), 1);
    return make_row("subspace 2 qubits k=2", tr.best_measure, 0.0, 1e-8, "abs");
  }));
  rows.push_back(timed(opt, [&] {
    const auto shape = SystemShape::uniform(3, 2);
    const auto tr = run(shape, kSubspaceSeeds);
    // V is fixed only up to the choice of primitive cube root. The two choices
    // give complex-conjugate spans that no local unitary relates.
    const auto v = v_state();
    CVector vbar(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) vbar[i] = std::conj(v[i]);
    const auto match = subspace_lu_match(SubspaceProjector::from_spanning(shape, {w_state(3), v}), tr.best, budget);
    const auto conj_match = subspace_lu_match(
        SubspaceProjector::from_spanning(shape, {w_state(3), PureState(shape, std::move(vbar))}), tr.best, budget);
    const auto& m = conj_match.fidelity > match.fidelity ? conj_match : match;
    ReproRow r = make_row("subspace 3 qubits k=2", tr.best_measure, 5.0 / 9.0, 1e-5, "min");
    r.extra_ok = m.equal;
    r.note = std::string(&m == &conj_match ? "span{W,conj V}" : "span{W,V}") + " match " + yes_no(m.equal) +
             " (1-" + sci(1.0 - m.fidelity) + ")";
    return r;
  }));
  rows.push_back(timed(opt, [&] {
    const auto shape = SystemShape::uniform(2, 3);
    const auto tr = run(shape, kSubspaceSeeds);
    const auto target = SubspaceProjector::from_spanning(shape, {chi_1(), chi_2()});
    const auto match = subspace_lu_match(target, tr.best, budget);
    ReproRow r = make_row("subspace 2 qutrits k=2", tr.best_measure, 0.5, 1e-5, "min");
    r.note = "span{chi1,chi2} match " + yes_no(match.equal) + " (1-" + sci(1.0 - match.fidelity) + ")";
    return r;
  }));
  return rows;
}

ReproRow repro_seven_qubits(const ReproOptions& opt) {
  return timed(opt, [&] {
    const auto tr = ascend(SystemShape::uniform(7, 2), 0.06, opt);
    const auto mms = mms_report(tr.final_state);
    ReproRow r = make_row("qubits n=7", tr.best_g, 0.941, 0.0, "min");
    r.extra_ok = mms.is_mms && mms.k_star == 3;
    r.note = "mms " + yes_no(mms.is_mms) + " k*=" + std::to_string(mms.k_star) + ", 1-body flatness " +
             sci(max_flatness_deviation(tr.final_state, 1));
    return r;
  });
}

ReproRow repro_three_ququads(const ReproOptions& opt) {
  return timed(opt, [&] {
    const auto tr = ascend(SystemShape::uniform(3, 4), 0.01, opt);
    const bool uniform = is_k_uniform(tr.final_state, 1);
    ReproRow r = make_row("ququads n=3", tr.best_g, 7.0 / 8.0, 1e-5, "min");
    r.extra_ok = uniform;
    r.note = "1-uniform " + yes_no(uniform) + " (flatness " + sci(max_flatness_deviation(tr.final_state, 1)) + ")";
    return r;
  });
}

ReproRow repro_four_qutrits(const ReproOptions& opt) {
  return timed(opt, [&] {
    const auto tr = ascend(SystemShape::uniform(4, 3), 0.01, opt);
    const bool ame = is_ame(tr.final_state);
    ReproRow r = make_row("qutrits n=4", tr.best_g, 8.0 / 9.0, 1e-5, "min");
    r.extra_ok = ame;
    r.note = "ame " + yes_no(ame) + " (2-body flatness " + sci(max_flatness_deviation(tr.final_state, 2)) + ")";
    return r;
  });
}

ReproRow repro_five_ququads(const ReproOptions& opt) {
  return timed(opt, [&] {
    const auto tr = ascend(SystemShape::uniform(5, 4), 0.01, opt);
    ReproRow r = make_row("ququads n=5", tr.best_g, 0.975, 0.0, "min");
    r.extra_ok = tr.best_g > 0.975;
    return r;
  });
}

std::vector<ReproRow> repro_extended(const ReproOptions& opt) {
  return {repro_seven_qubits(opt), repro_three_ququads(opt), repro_four_qutrits(opt), repro_five_ququads(opt)};
}

std::string format_row(const ReproRow& row) {
  const char* rel = row.mode == "min" ? ">=" : row.mode == "max" ? "<=" : "~=";
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-24s %.10f %s %.10f (tol %.0e)  %s", row.label.c_str(), row.value, rel, row.target,
                row.tol, row.pass() ? "PASS" : "FAIL");
  std::string s = buf;
  if (!row.note.empty()) s += "  [" + row.note + "]";
  return s;
}

void print_rows(const std::vector<ReproRow>& rows, std::ostream& os) {
  for (const auto& r : rows) os << format_row(r) << '\n';
}

}  // namespace geomax::cli
