#pragma once

// Reproduction harness: each suite runs the searches behind one group of
// reference results and compares them with the expected values.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "geomax/ascent.hpp"

namespace geomax::cli {

struct ReproRow {
  std::string label;
  double value = 0.0;
  double target = 0.0;
  double tol = 0.0;
  /// "abs": |value - target| <= tol; "min": value >= target - tol;
  /// "max": value <= target + tol.
  std::string mode = "abs";
  bool extra_ok = true;
  /// Secondary checks (LU match, uniformity, ...), shown after the numbers.
  std::string note;
  double seconds = 0.0;

  bool pass() const;
};

struct ReproOptions {
  std::uint64_t seed = 0;
  int jobs = 1;
  /// Appended per row while a suite runs; may be null.
  std::ostream* progress = nullptr;
};

/// Ascent config used by the harness: defaults_for(shape) with the given
/// initial step and a floor of 1e-7 on the step size.
AscentConfig repro_ascent_config(const SystemShape& shape, double theta0, const ReproOptions& opt);

/// Qubit rows n = 2..6.
std::vector<ReproRow> repro_table1(const ReproOptions& opt);
/// Bipartite d = 2..10: G = 1 - 1/d and LU fidelity with the qudit Bell state.
std::vector<ReproRow> repro_bipartite(const ReproOptions& opt);
/// Rank-2 subspaces of 2 qubits, 3 qubits and 2 qutrits.
std::vector<ReproRow> repro_subspaces(const ReproOptions& opt);

/// 7 qubits: G >= 0.941 and MMS with k* = 3.
ReproRow repro_seven_qubits(const ReproOptions& opt);
/// 3 ququads: G >= 7/8 - 1e-5 and 1-uniform.
ReproRow repro_three_ququads(const ReproOptions& opt);
/// 4 qutrits: G >= 8/9 - 1e-5 and AME.
ReproRow repro_four_qutrits(const ReproOptions& opt);
/// 5 ququads: G > 0.975.
ReproRow repro_five_ququads(const ReproOptions& opt);
std::vector<ReproRow> repro_extended(const ReproOptions& opt);

/// Fixed-width table, one line per row, ending in PASS or FAIL.
void print_rows(const std::vector<ReproRow>& rows, std::ostream& os);
std::string format_row(const ReproRow& row);

}  // namespace geomax::cli
