#pragma once

// Pure multi-qudit states, product states and the tensor primitives the rest
// of the library is built on.
//
// Index convention: amplitudes are stored row-major with party 0 as the most
// significant digit, i.e. for dims (d0, d1, ..., d_{n-1}) the basis vector
// |i0 i1 ... i_{n-1}> lives at ((i0 * d1 + i1) * d2 + i2) ... . Parties are
// numbered from 0 throughout the C++ API.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace geomax {

using complex = std::complex<double>;
using CVector = std::vector<complex>;
using CMatrix = Eigen::MatrixXcd;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid or mismatched system shape, party index or subset.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A see-saw contraction vanished; the caller restarts from a fresh product.
class DegenerateIterate : public Error {
 public:
  using Error::Error;
};

/// The state is a product state, so there is no ascent direction.
class ProductStateError : public Error {
 public:
  using Error::Error;
};

/// Eigenvalues k and k+1 of the subspace update operator coincide.
class DegenerateCut : public Error {
 public:
  using Error::Error;
};

/// Malformed input file.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Local dimensions of an n-party system.
class SystemShape {
 public:
  /// Throws ShapeError if dims is empty, any d_i < 2, or the total dimension
  /// overflows std::size_t.
  explicit SystemShape(std::vector<int> dims);

  static SystemShape uniform(int parties, int local_dim);

  int parties() const { return static_cast<int>(dims_.size()); }
  int dim(int party) const { return dims_.at(static_cast<std::size_t>(party)); }
  const std::vector<int>& dims() const { return dims_; }
  std::size_t total_dim() const { return total_; }

  /// Distance in the amplitude array between consecutive values of `party`.
  std::size_t stride(int party) const { return strides_.at(static_cast<std::size_t>(party)); }

  std::vector<int> unravel(std::size_t index) const;
  std::size_t ravel(std::span<const int> digits) const;

  /// Product of the local dimensions of the given parties.
  std::size_t subsystem_dim(std::span<const int> parties) const;

  std::string to_string() const;

  bool operator==(const SystemShape& other) const { return dims_ == other.dims_; }

 private:
  std::vector<int> dims_;
  std::vector<std::size_t> strides_;
  std::size_t total_ = 1;
};

/// A vector in the joint Hilbert space. Construction does not normalise; all
/// library constructors and updates hand out unit vectors.
class PureState {
 public:
  PureState(SystemShape shape, CVector amplitudes);

  /// The computational basis vector |digits>.
  static PureState basis(SystemShape shape, std::span<const int> digits);

  const SystemShape& shape() const { return shape_; }
  std::span<const complex> amplitudes() const { return amps_; }
  std::size_t size() const { return amps_.size(); }
  complex operator[](std::size_t index) const { return amps_[index]; }
  complex amplitude(std::span<const int> digits) const { return amps_[shape_.ravel(digits)]; }

  double norm() const;
  bool is_normalized(double tol = 1e-12) const;

  /// Throws Error if the norm is zero.
  PureState normalized() const;

 private:
  SystemShape shape_;
  CVector amps_;
};

/// One unit vector per party. The constructor normalises each local vector.
class ProductState {
 public:
  ProductState(SystemShape shape, std::vector<CVector> locals);

  const SystemShape& shape() const { return shape_; }
  const std::vector<CVector>& locals() const { return locals_; }
  const CVector& local(int party) const { return locals_.at(static_cast<std::size_t>(party)); }

  /// Copy with the local vector of `party` replaced (and normalised).
  ProductState with_local(int party, CVector v) const;

 private:
  SystemShape shape_;
  std::vector<CVector> locals_;
};

/// Hermitian, unit-trace matrix on a subsystem.
struct DensityMatrix {
  CMatrix entries;

  int dim() const { return static_cast<int>(entries.rows()); }
  /// Eigenvalues sorted in descending order.
  std::vector<double> eigenvalues() const;
};

PureState random_pure_state(const SystemShape& shape, std::uint64_t seed);
ProductState random_product_state(const SystemShape& shape, std::uint64_t seed);

/// <a|b>, conjugate-linear in a. Throws ShapeError on mismatched shapes.
complex overlap(const PureState& a, const PureState& b);
complex overlap(const ProductState& a, const PureState& b);

/// Contracts `state` with the conjugated local vectors of every party except
/// `site`; the result is the unnormalised vector <others|state> of length
/// d_site.
CVector contract_all_but(const PureState& state, const ProductState& product, int site);

/// Explicit tensor product of the local vectors.
PureState product_as_pure(const ProductState& product);

/// Partial trace onto `keep` (ordered ascending in the result). `keep` must be
/// a nonempty proper subset of the parties.
DensityMatrix reduced_density_matrix(const PureState& state, std::span<const int> keep);

/// Amplitudes reshaped as (prod_{i in left} d_i) x (prod_{i not in left} d_i),
/// each side row-major in ascending party order.
CMatrix matricization(const PureState& state, std::span<const int> left);

/// Applies `u` to one party.
PureState apply_local(const PureState& state, int party, const CMatrix& u);

/// Applies u[0] (x) u[1] (x) ... (x) u[n-1].
PureState apply_local_unitaries(const PureState& state, std::span<const CMatrix> unitaries);

/// Same amplitudes, parties merged in consecutive groups (e.g. qubit pairs
/// read as ququads). Every group must be a run of consecutive parties and the
/// groups must cover 0..n-1 in order.
PureState regroup(const PureState& state, const std::vector<std::vector<int>>& groups);

namespace detail {

// Shared kernel of contract_all_but: contracts `amps` (shape `dims`) with
// conj(locals[j]) for all j != site. `scratch` is reused between calls.
void contract_except(std::span<const complex> amps, const std::vector<int>& dims,
                     const std::vector<CVector>& locals, int site, CVector& out,
                     CVector& scratch);

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

void check_subset(const SystemShape& shape, std::span<const int> subset, bool allow_full);

}  // namespace detail

}  // namespace geomax
