#include "geomax/state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace geomax {

SystemShape::SystemShape(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw ShapeError("system shape needs at least one party");
  strides_.assign(dims_.size(), 1);
  for (std::size_t i = dims_.size(); i-- > 0;) {
    if (dims_[i] < 2) throw ShapeError("local dimension must be >= 2, got " + std::to_string(dims_[i]));
    strides_[i] = total_;
    const auto d = static_cast<std::size_t>(dims_[i]);
    if (total_ > std::numeric_limits<std::size_t>::max() / d) {
      throw ShapeError("total dimension of shape " + to_string() + " is too large");
    }
    total_ *= d;
  }
}

SystemShape SystemShape::uniform(int parties, int local_dim) {
  if (parties < 1) throw ShapeError("number of parties must be >= 1");
  return SystemShape(std::vector<int>(static_cast<std::size_t>(parties), local_dim));
}

std::vector<int> SystemShape::unravel(std::size_t index) const {
  std::vector<int> digits(dims_.size());
  for (std::size_t i = dims_.size(); i-- > 0;) {
    const auto d = static_cast<std::size_t>(dims_[i]);
    digits[i] = static_cast<int>(index % d);
    index /= d;
  }
  return digits;
}

std::size_t SystemShape::ravel(std::span<const int> digits) const {
  if (digits.size() != dims_.size()) throw ShapeError("digit count does not match party count");
  std::size_t index = 0;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (digits[i] < 0 || digits[i] >= dims_[i]) throw ShapeError("basis digit out of range");
    index = index * static_cast<std::size_t>(dims_[i]) + static_cast<std::size_t>(digits[i]);
  }
  return index;
}

std::size_t SystemShape::subsystem_dim(std::span<const int> parties) const {
  std::size_t d = 1;
  for (int p : parties) d *= static_cast<std::size_t>(dim(p));
  return d;
}

std::string SystemShape::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < dims_.size(); ++i) os << (i ? "," : "") << dims_[i];
  os << ')';
  return os.str();
}

PureState::PureState(SystemShape shape, CVector amplitudes)
    : shape_(std::move(shape)), amps_(std::move(amplitudes)) {
  if (amps_.size() != shape_.total_dim()) {
    throw ShapeError("amplitude count " + std::to_string(amps_.size()) + " does not match shape " +
                     shape_.to_string());
  }
}

PureState PureState::basis(SystemShape shape, std::span<const int> digits) {
  CVector amps(shape.total_dim());
  amps[shape.ravel(digits)] = 1.0;
  return PureState(std::move(shape), std::move(amps));
}

double PureState::norm() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

bool PureState::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

PureState PureState::normalized() const {
  const double n = norm();
  if (!(n > 0.0)) throw Error("cannot normalise the zero vector");
  CVector out(amps_);
  for (auto& a : out) a /= n;
  return PureState(shape_, std::move(out));
}

namespace {

void normalize_local(CVector& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  s = std::sqrt(s);
  if (!(s > 0.0)) throw Error("local vector has zero norm");
  for (auto& x : v) x /= s;
}

complex gaussian(std::mt19937_64& rng, std::normal_distribution<double>& normal) {
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

}  // namespace

ProductState::ProductState(SystemShape shape, std::vector<CVector> locals)
    : shape_(std::move(shape)), locals_(std::move(locals)) {
  if (static_cast<int>(locals_.size()) != shape_.parties()) {
    throw ShapeError("product state needs one local vector per party");
  }
  for (int p = 0; p < shape_.parties(); ++p) {
    auto& v = locals_[static_cast<std::size_t>(p)];
    if (static_cast<int>(v.size()) != shape_.dim(p)) throw ShapeError("local vector has wrong dimension");
    normalize_local(v);
  }
}

ProductState ProductState::with_local(int party, CVector v) const {
  auto locals = locals_;
  locals.at(static_cast<std::size_t>(party)) = std::move(v);
  return ProductState(shape_, std::move(locals));
}

std::vector<double> DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(entries, Eigen::EigenvaluesOnly);
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

PureState random_pure_state(const SystemShape& shape, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  CVector amps(shape.total_dim());
  for (auto& a : amps) a = gaussian(rng, normal);
  return PureState(shape, std::move(amps)).normalized();
}

ProductState random_product_state(const SystemShape& shape, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<CVector> locals;
  locals.reserve(static_cast<std::size_t>(shape.parties()));
  for (int p = 0; p < shape.parties(); ++p) {
    CVector v(static_cast<std::size_t>(shape.dim(p)));
    for (auto& x : v) x = gaussian(rng, normal);
    locals.push_back(std::move(v));
  }
  return ProductState(shape, std::move(locals));
}

complex overlap(const PureState& a, const PureState& b) {
  if (!(a.shape() == b.shape())) throw ShapeError("overlap of states with different shapes");
  complex s = 0.0;
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
  return s;
}

complex overlap(const ProductState& a, const PureState& b) {
  if (!(a.shape() == b.shape())) throw ShapeError("overlap of states with different shapes");
  CVector partial, scratch;
  detail::contract_except(b.amplitudes(), b.shape().dims(), a.locals(), 0, partial, scratch);
  complex s = 0.0;
  const auto& u = a.local(0);
  for (std::size_t j = 0; j < u.size(); ++j) s += std::conj(u[j]) * partial[j];
  return s;
}

namespace detail {

void contract_except(std::span<const complex> amps, const std::vector<int>& dims,
                     const std::vector<CVector>& locals, int site, CVector& out, CVector& scratch) {
  const int n = static_cast<int>(dims.size());
  if (site < 0 || site >= n) throw ShapeError("site index out of range");
  if (n == 1) {
    out.assign(amps.begin(), amps.end());
    return;
  }
  // The first reduction reads from `amps`, later ones work in place on
  // `scratch`; writes never overtake the reads they depend on.
  std::size_t size = amps.size();
  const complex* src = amps.data();
  scratch.resize(size);
  complex* buf = scratch.data();

  for (int p = n - 1; p > site; --p) {
    const auto d = static_cast<std::size_t>(dims[static_cast<std::size_t>(p)]);
    const CVector& u = locals[static_cast<std::size_t>(p)];
    const std::size_t outer = size / d;
    for (std::size_t o = 0; o < outer; ++o) {
      const complex* row = src + o * d;
      complex acc = 0.0;
      for (std::size_t j = 0; j < d; ++j) acc += row[j] * std::conj(u[j]);
      buf[o] = acc;
    }
    size = outer;
    src = buf;
  }
  for (int p = 0; p < site; ++p) {
    const auto d = static_cast<std::size_t>(dims[static_cast<std::size_t>(p)]);
    const CVector& u = locals[static_cast<std::size_t>(p)];
    const std::size_t rest = size / d;
    for (std::size_t r = 0; r < rest; ++r) {
      complex acc = 0.0;
      for (std::size_t j = 0; j < d; ++j) acc += std::conj(u[j]) * src[j * rest + r];
      buf[r] = acc;
    }
    size = rest;
    src = buf;
  }
  out.assign(src, src + size);
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  // splitmix64 finaliser over a combined word.
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void check_subset(const SystemShape& shape, std::span<const int> subset, bool allow_full) {
  if (subset.empty()) throw ShapeError("party subset must be nonempty");
  std::vector<bool> seen(static_cast<std::size_t>(shape.parties()), false);
  for (int p : subset) {
    if (p < 0 || p >= shape.parties()) throw ShapeError("party index " + std::to_string(p) + " out of range");
    if (seen[static_cast<std::size_t>(p)]) throw ShapeError("duplicate party index in subset");
    seen[static_cast<std::size_t>(p)] = true;
  }
  if (!allow_full && static_cast<int>(subset.size()) == shape.parties()) {
    throw ShapeError("party subset must be a proper subset");
  }
}

}  // namespace detail

CVector contract_all_but(const PureState& state, const ProductState& product, int site) {
  if (!(state.shape() == product.shape())) throw ShapeError("contraction of mismatched shapes");
  CVector out, scratch;
  detail::contract_except(state.amplitudes(), state.shape().dims(), product.locals(), site, out, scratch);
  return out;
}

PureState product_as_pure(const ProductState& product) {
  const auto& shape = product.shape();
  CVector amps(shape.total_dim());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const auto digits = shape.unravel(i);
    complex a = 1.0;
    for (int p = 0; p < shape.parties(); ++p) {
      a *= product.local(p)[static_cast<std::size_t>(digits[static_cast<std::size_t>(p)])];
    }
    amps[i] = a;
  }
  return PureState(shape, std::move(amps));
}

CMatrix matricization(const PureState& state, std::span<const int> left) {
  const auto& shape = state.shape();
  detail::check_subset(shape, left, false);
  std::vector<int> rows(left.begin(), left.end());
  std::sort(rows.begin(), rows.end());
  std::vector<int> cols;
  for (int p = 0; p < shape.parties(); ++p) {
    if (!std::binary_search(rows.begin(), rows.end(), p)) cols.push_back(p);
  }
  const auto nr = static_cast<Eigen::Index>(shape.subsystem_dim(rows));
  const auto nc = static_cast<Eigen::Index>(shape.subsystem_dim(cols));
  CMatrix m(nr, nc);
  const auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const auto digits = shape.unravel(i);
    Eigen::Index r = 0, c = 0;
    for (int p : rows) r = r * shape.dim(p) + digits[static_cast<std::size_t>(p)];
    for (int p : cols) c = c * shape.dim(p) + digits[static_cast<std::size_t>(p)];
    m(r, c) = amps[i];
  }
  return m;
}

DensityMatrix reduced_density_matrix(const PureState& state, std::span<const int> keep) {
  const CMatrix m = matricization(state, keep);
  DensityMatrix rho{m * m.adjoint()};
  // Exact hermiticity.
  rho.entries = (0.5 * (rho.entries + rho.entries.adjoint())).eval();
  return rho;
}

PureState apply_local(const PureState& state, int party, const CMatrix& u) {
  const auto& shape = state.shape();
  if (party < 0 || party >= shape.parties()) throw ShapeError("party index out of range");
  const int d = shape.dim(party);
  if (u.rows() != d || u.cols() != d) throw ShapeError("local operator has wrong dimension");
  const std::size_t stride = shape.stride(party);
  const std::size_t block = stride * static_cast<std::size_t>(d);
  const auto in = state.amplitudes();
  CVector out(in.size());
  for (std::size_t base = 0; base < in.size(); base += block) {
    for (std::size_t inner = 0; inner < stride; ++inner) {
      const std::size_t off = base + inner;
      for (int a = 0; a < d; ++a) {
        complex acc = 0.0;
        for (int b = 0; b < d; ++b) acc += u(a, b) * in[off + static_cast<std::size_t>(b) * stride];
        out[off + static_cast<std::size_t>(a) * stride] = acc;
      }
    }
  }
  return PureState(shape, std::move(out));
}

PureState apply_local_unitaries(const PureState& state, std::span<const CMatrix> unitaries) {
  if (static_cast<int>(unitaries.size()) != state.shape().parties()) {
    throw ShapeError("need one local operator per party");
  }
  PureState out = state;
  for (int p = 0; p < state.shape().parties(); ++p) out = apply_local(out, p, unitaries[static_cast<std::size_t>(p)]);
  return out;
}

PureState regroup(const PureState& state, const std::vector<std::vector<int>>& groups) {
  const auto& shape = state.shape();
  std::vector<int> dims;
  int next = 0;
  for (const auto& g : groups) {
    if (g.empty()) throw ShapeError("empty party group");
    int d = 1;
    for (int p : g) {
      if (p != next) throw ShapeError("groups must be consecutive runs covering every party in order");
      d *= shape.dim(p);
      ++next;
    }
    dims.push_back(d);
  }
  if (next != shape.parties()) throw ShapeError("groups do not cover every party");
  return PureState(SystemShape(std::move(dims)), CVector(state.amplitudes().begin(), state.amplitudes().end()));
}

}  // namespace geomax
