#include "geomax/canonicalize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "geomax/local_search.hpp"
#include "parallel.hpp"

namespace geomax {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kPolarSweepsMax = 2000;
constexpr double kPolarTol = 1e-15;
constexpr double kRefineSkip = 1e-12;

CMatrix polar_factor(const CMatrix& y) {
  // argmax_U Re Tr(U Y) = V W^dagger for Y = W S V^dagger.
  Eigen::JacobiSVD<CMatrix> svd(y, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixV() * svd.matrixU().adjoint();
}

std::vector<PureState> rotate_all(const std::vector<PureState>& vs, std::span<const CMatrix> us) {
  std::vector<PureState> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(apply_local_unitaries(v, us));
  return out;
}

// sum_ij |<t_i| f_j>|^2 for already rotated f.
double overlap_mass(const std::vector<PureState>& targets, const std::vector<PureState>& rotated) {
  double s = 0.0;
  for (const auto& t : targets) {
    for (const auto& f : rotated) s += std::norm(overlap(t, f));
  }
  return s;
}

// Alternating maximisation of sum_ij |<t_i|(U_1 x ... x U_n) f_j>|^2. For
// party p, <t_i|U_p g_j> = Tr(U_p X_ij) with X_ij = G_j T_i^dagger, so the
// linearised objective is maximised by the polar factor of
// sum_ij conj(c_ij) X_ij. The objective is convex in U_p, hence monotone.
double polar_ascent(const std::vector<PureState>& targets, const std::vector<PureState>& found,
                    std::vector<CMatrix>& us) {
  const SystemShape& shape = targets.front().shape();
  const int n = shape.parties();
  double value = overlap_mass(targets, rotate_all(found, us));
  for (int sweep = 0; sweep < kPolarSweepsMax; ++sweep) {
    for (int p = 0; p < n; ++p) {
      std::vector<CMatrix> others = us;
      others[static_cast<std::size_t>(p)] = CMatrix::Identity(shape.dim(p), shape.dim(p));
      const auto g = rotate_all(found, others);
      const int left[1] = {p};
      std::vector<CMatrix> tm;
      for (const auto& t : targets) tm.push_back(matricization(t, left));
      CMatrix y = CMatrix::Zero(shape.dim(p), shape.dim(p));
      CMatrix plain = y;
      const CMatrix& up = us[static_cast<std::size_t>(p)];
      for (const auto& gj : g) {
        const CMatrix gm = matricization(gj, left);
        for (const auto& ti : tm) {
          const CMatrix x = gm * ti.adjoint();
          const complex c = (up * x).trace();
          y += std::conj(c) * x;
          plain += x;
        }
      }
      if (y.norm() < 1e-300) y = plain;
      if (y.norm() < 1e-300) continue;
      us[static_cast<std::size_t>(p)] = polar_factor(y);
    }
    const double next = overlap_mass(targets, rotate_all(found, us));
    const bool stalled = next - value <= kPolarTol * std::max(1.0, value);
    value = std::max(value, next);
    if (stalled) break;
  }
  return value;
}

// Per-party unitary U_p(x) = J(x_p) J(x0_p)^dagger B_p: a Jarlskog chart
// re-centred on a generic point so that x = x0 reproduces the frame B.
class LocalChart {
 public:
  LocalChart(const SystemShape& shape, std::vector<CMatrix> frames, std::uint64_t seed)
      : shape_(shape), frames_(std::move(frames)) {
    for (int p = 0; p < shape.parties(); ++p) {
      const int d = shape.dim(p);
      const auto jp = JarlskogParams::random(d, detail::mix_seed(seed, static_cast<std::uint64_t>(p)));
      const auto v = jp.to_vector();
      offsets_.push_back(x0_.size());
      x0_.insert(x0_.end(), v.begin(), v.end());
      const CMatrix j0 = jarlskog_unitary(jp);
      right_.push_back(j0.adjoint() * frames_[static_cast<std::size_t>(p)]);
      cache_x_.emplace_back(v);
      cache_u_.push_back(frames_[static_cast<std::size_t>(p)]);
    }
    offsets_.push_back(x0_.size());
  }

  const std::vector<double>& origin() const { return x0_; }

  const std::vector<CMatrix>& unitaries(std::span<const double> x) {
    for (int p = 0; p < shape_.parties(); ++p) {
      const auto i = static_cast<std::size_t>(p);
      const auto block = x.subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
      if (!std::equal(block.begin(), block.end(), cache_x_[i].begin())) {
        cache_x_[i].assign(block.begin(), block.end());
        cache_u_[i] = jarlskog_unitary(JarlskogParams::from_vector(shape_.dim(p), block)) * right_[i];
      }
    }
    return cache_u_;
  }

 private:
  SystemShape shape_;
  std::vector<CMatrix> frames_;
  std::vector<CMatrix> right_;
  std::vector<double> x0_;
  std::vector<std::size_t> offsets_;
  std::vector<std::vector<double>> cache_x_;
  std::vector<CMatrix> cache_u_;
};

std::vector<CMatrix> identity_frames(const SystemShape& shape) {
  std::vector<CMatrix> us;
  for (int p = 0; p < shape.parties(); ++p) us.push_back(CMatrix::Identity(shape.dim(p), shape.dim(p)));
  return us;
}

std::vector<CMatrix> haar_frames(const SystemShape& shape, std::uint64_t seed) {
  std::vector<CMatrix> us;
  for (int p = 0; p < shape.parties(); ++p) {
    us.push_back(haar_unitary(shape.dim(p), detail::mix_seed(seed, static_cast<std::uint64_t>(p))));
  }
  return us;
}

// Frame mapping each one-party marginal eigenvector (descending) to the
// computational basis.
std::vector<CMatrix> marginal_frames(const PureState& state) {
  std::vector<CMatrix> us;
  for (int p = 0; p < state.shape().parties(); ++p) {
    const int keep[1] = {p};
    const auto rho = reduced_density_matrix(state, keep);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.entries);
    us.push_back(es.eigenvectors().rowwise().reverse().adjoint());
  }
  return us;
}

struct AlignResult {
  double mass = 0.0;
  std::vector<CMatrix> unitaries;
  bool converged = false;
};

// Maximises sum_ij |<t_i|U f_j>|^2 / k, returning the raw mass / k.
AlignResult align(const std::vector<PureState>& targets, const std::vector<PureState>& found,
                  const SearchBudget& budget) {
  budget.validate();
  const SystemShape& shape = targets.front().shape();
  const double k = static_cast<double>(targets.size());
  const auto n_restarts = static_cast<std::size_t>(budget.restarts);
  std::vector<std::vector<CMatrix>> starts(n_restarts);
  std::vector<double> values(n_restarts, -1.0);
  detail::parallel_for(n_restarts, budget.jobs, [&](std::size_t r) {
    starts[r] = r == 0 ? identity_frames(shape) : haar_frames(shape, detail::mix_seed(budget.seed, r));
    values[r] = polar_ascent(targets, found, starts[r]) / k;
  });
  // Earliest restart within rounding of the maximum, so an optimal identity
  // frame is kept.
  const double top = *std::max_element(values.begin(), values.end());
  const auto best = static_cast<std::size_t>(
      std::find_if(values.begin(), values.end(), [&](double v) { return v >= top - 1e-13; }) - values.begin());
  AlignResult result{values[best], starts[best], true};
  if (result.mass >= 1.0 - kRefineSkip) return result;

  LocalChart chart(shape, result.unitaries, detail::mix_seed(budget.seed, 0xc4a27ULL));
  const Objective f = [&](std::span<const double> x) {
    return -overlap_mass(targets, rotate_all(found, chart.unitaries(x))) / k;
  };
  LocalSearchOptions opts;
  opts.max_evaluations = budget.evaluations;
  opts.initial_step = 1e-2;
  opts.min_step = 1e-10;
  opts.seed = budget.seed;
  opts.stop_at = -(1.0 - 1e-15);
  const auto refined = minimize_coordinatewise(f, chart.origin(), opts);
  if (-refined.value > result.mass) {
    result.mass = -refined.value;
    result.unitaries = chart.unitaries(refined.x);
  }
  result.converged = refined.converged;
  return result;
}

}  // namespace

JarlskogParams JarlskogParams::identity(int d) {
  if (d < 1) throw Error("unitary dimension must be >= 1");
  JarlskogParams p;
  p.d = d;
  p.alpha.assign(static_cast<std::size_t>(d), 0.0);
  p.beta.assign(static_cast<std::size_t>(d), 0.0);
  for (int k = 2; k <= d; ++k) {
    p.theta.push_back(0.0);
    CVector a(static_cast<std::size_t>(k - 1), 0.0);
    a[0] = 1.0;
    p.a.push_back(std::move(a));
  }
  return p;
}

JarlskogParams JarlskogParams::random(int d, std::uint64_t seed) {
  JarlskogParams p = identity(d);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::normal_distribution<double> normal;
  for (auto& x : p.alpha) x = angle(rng);
  for (auto& x : p.beta) x = angle(rng);
  for (std::size_t i = 0; i < p.theta.size(); ++i) {
    p.theta[i] = angle(rng);
    double n = 0.0;
    for (auto& z : p.a[i]) {
      z = {normal(rng), normal(rng)};
      n += std::norm(z);
    }
    n = std::sqrt(n);
    for (auto& z : p.a[i]) z /= n;
  }
  return p;
}

std::size_t JarlskogParams::parameter_count(int d) {
  if (d < 1) throw Error("unitary dimension must be >= 1");
  const auto n = static_cast<std::size_t>(d);
  return n * n + 2 * n - 1;
}

std::vector<double> JarlskogParams::to_vector() const {
  validate();
  std::vector<double> x(alpha);
  x.insert(x.end(), beta.begin(), beta.end());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    x.push_back(theta[i]);
    for (const auto& z : a[i]) x.push_back(z.real());
    for (const auto& z : a[i]) x.push_back(z.imag());
  }
  return x;
}

JarlskogParams JarlskogParams::from_vector(int d, std::span<const double> x) {
  if (x.size() != parameter_count(d)) throw ShapeError("Jarlskog vector has wrong length");
  JarlskogParams p = identity(d);
  const auto n = static_cast<std::size_t>(d);
  std::copy_n(x.begin(), n, p.alpha.begin());
  std::copy_n(x.begin() + static_cast<std::ptrdiff_t>(n), n, p.beta.begin());
  std::size_t pos = 2 * n;
  for (int k = 2; k <= d; ++k) {
    const auto i = static_cast<std::size_t>(k - 2);
    const auto m = static_cast<std::size_t>(k - 1);
    p.theta[i] = x[pos++];
    CVector& a = p.a[i];
    double norm = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      a[j] = {x[pos + j], x[pos + m + j]};
      norm += std::norm(a[j]);
    }
    pos += 2 * m;
    norm = std::sqrt(norm);
    if (norm > 0.0) {
      for (auto& z : a) z /= norm;
    } else {
      std::fill(a.begin(), a.end(), complex{0.0});
      a[0] = 1.0;
    }
  }
  return p;
}

void JarlskogParams::validate() const {
  const auto n = static_cast<std::size_t>(d);
  if (d < 1 || alpha.size() != n || beta.size() != n || theta.size() != n - 1 || a.size() != n - 1) {
    throw ShapeError("inconsistent Jarlskog parameter sizes");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != i + 1) throw ShapeError("a_k must have length k - 1");
    double s = 0.0;
    for (const auto& z : a[i]) s += std::norm(z);
    if (std::abs(s - 1.0) > 1e-12) throw Error("a_k must be a unit vector");
  }
}

CMatrix jarlskog_unitary(const JarlskogParams& p) {
  p.validate();
  const int d = p.d;
  CMatrix y = CMatrix::Identity(d, d);
  for (int k = 2; k <= d; ++k) {
    const auto i = static_cast<std::size_t>(k - 2);
    const double c = std::cos(p.theta[i]);
    const double s = std::sin(p.theta[i]);
    const Eigen::Map<const Eigen::VectorXcd> a(p.a[i].data(), k - 1);
    CMatrix block(k, k);
    block.topLeftCorner(k - 1, k - 1) = CMatrix::Identity(k - 1, k - 1) - (1.0 - c) * (a * a.adjoint());
    block.topRightCorner(k - 1, 1) = s * a;
    block.bottomLeftCorner(1, k - 1) = -s * a.adjoint();
    block(k - 1, k - 1) = c;
    // Right-multiplying by A_{d,k} only touches the first k columns.
    y.leftCols(k) = (y.leftCols(k) * block).eval();
  }
  for (int r = 0; r < d; ++r) {
    for (int col = 0; col < d; ++col) {
      y(r, col) *= std::polar(1.0, p.alpha[static_cast<std::size_t>(r)] + p.beta[static_cast<std::size_t>(col)]);
    }
  }
  return y;
}

CMatrix haar_unitary(int d, std::uint64_t seed) {
  if (d < 1) throw Error("unitary dimension must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  CMatrix z(d, d);
  for (int c = 0; c < d; ++c) {
    for (int r = 0; r < d; ++r) z(r, c) = {normal(rng), normal(rng)};
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix rmat = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < d; ++c) {
    const complex r = rmat(c, c);
    q.col(c) *= r / std::abs(r);
  }
  return q;
}

void SearchBudget::validate() const {
  if (restarts < 1) throw Error("search needs at least one restart");
  if (evaluations < 1) throw Error("search needs a positive evaluation budget");
  if (jobs < 1) throw Error("jobs must be >= 1");
}

FidelityResult lu_fidelity(const PureState& state, const PureState& guess, const SearchBudget& budget) {
  if (!(state.shape() == guess.shape())) throw ShapeError("lu_fidelity needs matching shapes");
  const auto r = align({state}, {guess}, budget);
  FidelityResult out;
  out.fidelity = std::sqrt(std::max(0.0, r.mass));
  out.unitaries = r.unitaries;
  out.equal = out.fidelity >= 1.0 - kEqualityEpsilon;
  out.converged = r.converged;
  return out;
}

double l1_norm(const PureState& state) {
  double s = 0.0;
  for (const auto& z : state.amplitudes()) s += std::abs(z);
  return s;
}

SparsifyResult sparsify(const PureState& state, const SearchBudget& budget) {
  budget.validate();
  const SystemShape& shape = state.shape();
  const auto n_restarts = static_cast<std::size_t>(budget.restarts);
  struct Run {
    double l1 = 0.0;
    std::vector<CMatrix> us;
    bool converged = false;
  };
  std::vector<Run> runs(n_restarts);
  detail::parallel_for(n_restarts, budget.jobs, [&](std::size_t r) {
    std::vector<CMatrix> frame;
    if (r == 0) {
      frame = identity_frames(shape);
    } else if (r == 1) {
      frame = marginal_frames(state);
    } else {
      frame = haar_frames(shape, detail::mix_seed(budget.seed, r));
    }
    LocalChart chart(shape, frame, detail::mix_seed(budget.seed ^ 0x5ba75eULL, r));
    const Objective f = [&](std::span<const double> x) {
      return l1_norm(apply_local_unitaries(state, chart.unitaries(x)));
    };
    LocalSearchOptions opts;
    opts.max_evaluations = std::max<std::size_t>(1, budget.evaluations / n_restarts);
    opts.initial_step = 0.3;
    opts.min_step = 1e-9;
    opts.random_directions = static_cast<int>(chart.origin().size());
    opts.seed = detail::mix_seed(budget.seed, r);
    const auto res = minimize_coordinatewise(f, chart.origin(), opts);
    runs[r] = {res.value, chart.unitaries(res.x), res.converged};
  });
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r) {
    if (runs[r].l1 < runs[best].l1) best = r;
  }
  PureState out = apply_local_unitaries(state, runs[best].us);
  const double l1 = l1_norm(out);
  return {std::move(out), std::move(runs[best].us), l1, runs[best].converged};
}

std::string pretty_print(const PureState& state, double zero_threshold) {
  const SystemShape& shape = state.shape();
  bool wide = false;
  for (int p = 0; p < shape.parties(); ++p) wide |= shape.dim(p) > 10;
  auto clean = [](double v) { return std::abs(v) < 5e-11 ? 0.0 : v; };
  std::string out;
  char buf[96];
  for (std::size_t i = 0; i < state.size(); ++i) {
    const complex z = state[i];
    if (std::abs(z) < zero_threshold) continue;
    const auto digits = shape.unravel(i);
    out += '|';
    for (std::size_t p = 0; p < digits.size(); ++p) {
      if (wide && p > 0) out += ',';
      out += std::to_string(digits[p]);
    }
    std::snprintf(buf, sizeof buf, "> %+.10f %+.10f\n", clean(z.real()), clean(z.imag()));
    out += buf;
  }
  return out;
}

SubspaceMatch subspace_lu_match(const SubspaceProjector& target, const SubspaceProjector& found,
                                const SearchBudget& budget) {
  if (!(target.shape() == found.shape()) || target.rank() != found.rank()) {
    throw ShapeError("subspace match needs equal shapes and ranks");
  }
  const auto r = align(target.basis(), found.basis(), budget);
  SubspaceMatch out;
  out.fidelity = std::min(1.0, r.mass);
  out.unitaries = r.unitaries;
  out.angles = principal_angles(target, SubspaceProjector(found.shape(), rotate_all(found.basis(), r.unitaries)));
  out.equal = out.fidelity >= 1.0 - kEqualityEpsilon;
  out.converged = r.converged;
  return out;
}

}  // namespace geomax
