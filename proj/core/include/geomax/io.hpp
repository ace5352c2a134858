#pragma once

// JSON persistence. A state is {"dims": [d1, ..., dn], "re": [...],
// "im": [...]} with amplitudes in row-major order, party 0 most significant.
// A projector is {"dims": [...], "basis": [state, ...]}. Output is
// byte-stable: fixed layout and shortest round-trip-safe number formatting.

#include <iosfwd>
#include <string>
#include <string_view>

#include "geomax/state.hpp"
#include "geomax/subspace.hpp"

namespace geomax {

/// Maximum |norm - 1| accepted without renormalisation.
inline constexpr double kNormTolerance = 1e-10;

/// Throws ParseError naming the line (syntax) or the field (schema), and for
/// a norm off by more than kNormTolerance unless `renormalize` is set.
PureState parse_state_json(std::string_view text, bool renormalize = false);
SubspaceProjector parse_projector_json(std::string_view text, bool renormalize = false);

std::string state_to_json(const PureState& state);
std::string projector_to_json(const SubspaceProjector& projector);

/// d x d matrix as {"re": [[...], ...], "im": [[...], ...]}, rows first.
std::string matrix_to_json(const CMatrix& m);

/// Reads all of `in` (or the named file; "-" is stdin).
std::string read_all(std::istream& in);
std::string read_file(const std::string& path);

/// Shortest "%.17g"-class formatting that parses back to the same double.
std::string format_double(double v);

}  // namespace geomax
