#include "geomax/subspace.hpp"

#include <algorithm>
#include <cmath>

namespace geomax {

namespace {

constexpr double kOrthonormalTol = 1e-10;
constexpr double kCutGapTol = 1e-12;
constexpr double kTightestTol = 1e-14;
// Near a degenerate optimum the projector see-saw converges sublinearly; per
// iteration it is polished only this far, the final certification goes further.
constexpr int kIterationPolishSweeps = 200;

CVector column(const CMatrix& m, Eigen::Index c) {
  CVector v(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) v[static_cast<std::size_t>(r)] = m(r, c);
  return v;
}

// Top eigenvector of a small Hermitian matrix with the deterministic
// tie-break described in the header. Returns the top eigenvalue.
double top_eigenvector(const CMatrix& m, CVector& out) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  const auto& ev = es.eigenvalues();
  const Eigen::Index d = m.rows();
  const double top = ev(d - 1);
  const double tie = 1e-12 * std::max(1.0, std::abs(top));
  Eigen::Index first = d - 1;
  while (first > 0 && top - ev(first - 1) <= tie) --first;
  if (first == d - 1) {
    out = column(es.eigenvectors(), d - 1);
    return top;
  }
  const CMatrix space = es.eigenvectors().rightCols(d - first);
  for (Eigen::Index b = 0; b < d; ++b) {
    const Eigen::VectorXcd proj = space * space.row(b).adjoint();
    const double n = proj.norm();
    if (n > 1e-6) {
      out.assign(proj.data(), proj.data() + proj.size());
      for (auto& x : out) x /= n;
      return top;
    }
  }
  out = column(es.eigenvectors(), d - 1);
  return top;
}

struct Chain {
  std::vector<CVector> locals;
  double value = 0.0;
};

double sweep(const SubspaceProjector& p, std::vector<CVector>& locals) {
  const auto& dims = p.shape().dims();
  CVector c, scratch, top;
  double value = 0.0;
  for (int site = 0; site < p.shape().parties(); ++site) {
    const int d = dims[static_cast<std::size_t>(site)];
    CMatrix m = CMatrix::Zero(d, d);
    for (const auto& v : p.basis()) {
      detail::contract_except(v.amplitudes(), dims, locals, site, c, scratch);
      const Eigen::Map<const Eigen::VectorXcd> cv(c.data(), d);
      m.noalias() += cv * cv.adjoint();
    }
    value = top_eigenvector(m, top);
    if (!(value > 1e-28)) throw DegenerateIterate("projector contraction vanished");
    locals[static_cast<std::size_t>(site)] = top;
  }
  return value;
}

void run_chain(const SubspaceProjector& p, Chain& chain, int sweeps, double tol) {
  double prev = -1.0;
  for (int t = 0; t < sweeps; ++t) {
    chain.value = sweep(p, chain.locals);
    if (std::abs(chain.value - prev) < tol) break;
    prev = chain.value;
  }
}

}  // namespace

SubspaceProjector::SubspaceProjector(SystemShape shape, std::vector<PureState> basis)
    : shape_(std::move(shape)), basis_(std::move(basis)) {
  const auto k = basis_.size();
  if (k < 1 || k >= shape_.total_dim()) throw Error("subspace rank must satisfy 1 <= k < D");
  for (const auto& v : basis_) {
    if (!(v.shape() == shape_)) throw ShapeError("basis vector has wrong shape");
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      const complex g = overlap(basis_[i], basis_[j]);
      const double expect = i == j ? 1.0 : 0.0;
      if (std::abs(g - expect) > kOrthonormalTol) throw Error("subspace basis is not orthonormal");
    }
  }
}

SubspaceProjector SubspaceProjector::from_spanning(SystemShape shape, const std::vector<PureState>& vectors) {
  std::vector<CVector> done;
  for (const auto& v : vectors) {
    CVector w(v.amplitudes().begin(), v.amplitudes().end());
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : done) {
        complex c = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) c += std::conj(q[i]) * w[i];
        for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * q[i];
      }
    }
    double n = 0.0;
    for (const auto& x : w) n += std::norm(x);
    n = std::sqrt(n);
    if (!(n > 1e-12)) throw Error("spanning vectors are linearly dependent");
    for (auto& x : w) x /= n;
    done.push_back(std::move(w));
  }
  std::vector<PureState> basis;
  for (auto& w : done) basis.emplace_back(shape, std::move(w));
  return SubspaceProjector(std::move(shape), std::move(basis));
}

CMatrix SubspaceProjector::basis_matrix() const {
  const auto D = static_cast<Eigen::Index>(shape_.total_dim());
  CMatrix b(D, rank());
  for (int c = 0; c < rank(); ++c) {
    const auto amps = basis_[static_cast<std::size_t>(c)].amplitudes();
    for (Eigen::Index r = 0; r < D; ++r) b(r, c) = amps[static_cast<std::size_t>(r)];
  }
  return b;
}

CMatrix SubspaceProjector::matrix() const {
  const CMatrix b = basis_matrix();
  return b * b.adjoint();
}

double SubspaceProjector::expectation(const ProductState& pi) const {
  double s = 0.0;
  for (const auto& v : basis_) s += std::norm(overlap(pi, v));
  return s;
}

SubspaceProjector random_subspace(const SystemShape& shape, int k, std::uint64_t seed) {
  std::vector<PureState> vs;
  for (int i = 0; i < k; ++i) vs.push_back(random_pure_state(shape, detail::mix_seed(seed, static_cast<std::uint64_t>(i))));
  return SubspaceProjector::from_spanning(shape, vs);
}

ProjectorOverlap best_product_overlap_with_projector(const SubspaceProjector& p, const SeesawConfig& cfg,
                                                     std::span<const ProductState> extra_starts) {
  cfg.validate();
  std::vector<Chain> chains;
  for (const auto& s : extra_starts) {
    Chain c{s.locals()};
    try {
      run_chain(p, c, cfg.sweeps_max, cfg.overlap_tol);
    } catch (const DegenerateIterate&) {
      c.value = 0.0;
    }
    chains.push_back(std::move(c));
  }
  for (int i = 0; i < cfg.restarts; ++i) {
    Chain c;
    for (int retry = 0; retry < 16; ++retry) {
      const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i);
      c = Chain{random_product_state(p.shape(), retry == 0 ? seed : detail::mix_seed(seed, static_cast<std::uint64_t>(retry))).locals()};
      try {
        run_chain(p, c, cfg.sweeps_max, cfg.overlap_tol);
        break;
      } catch (const DegenerateIterate&) {
        c.value = 0.0;
      }
    }
    chains.push_back(std::move(c));
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < chains.size(); ++i) {
    if (chains[i].value > chains[best].value) best = i;
  }
  Chain& w = chains[best];
  try {
    run_chain(p, w, cfg.polish_sweeps, cfg.overlap_tol);
  } catch (const DegenerateIterate&) {
  }
  ProductState pi(p.shape(), std::move(w.locals));
  const double value = std::min(p.expectation(pi), 1.0);
  return {std::move(pi), value};
}

SubspaceProjector subspace_ascend_step(const SubspaceProjector& p, const ProductState& pi, double theta) {
  if (theta < 0.0) throw Error("step size must be >= 0");
  if (!(pi.shape() == p.shape())) throw ShapeError("product state has wrong shape");
  const PureState v = product_as_pure(pi);
  const Eigen::Map<const Eigen::VectorXcd> pv(v.amplitudes().data(), static_cast<Eigen::Index>(v.size()));
  const CMatrix h = p.matrix() - theta * (pv * pv.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const auto D = h.rows();
  const auto k = static_cast<Eigen::Index>(p.rank());
  const auto& ev = es.eigenvalues();
  if (ev(D - k) - ev(D - k - 1) < kCutGapTol) {
    throw DegenerateCut("eigenvalues k and k+1 of P - theta|pi><pi| coincide");
  }
  std::vector<PureState> basis;
  for (Eigen::Index c = D - 1; c >= D - k; --c) basis.emplace_back(p.shape(), column(es.eigenvectors(), c));
  return SubspaceProjector(p.shape(), std::move(basis));
}

SubspaceTrace run_subspace_ascent(const SystemShape& shape, int k, const AscentConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  if (k < 1 || static_cast<std::size_t>(k) >= shape.total_dim()) throw Error("subspace rank must satisfy 1 <= k < D");
  SubspaceProjector p = random_subspace(shape, k, seed);
  double tol = cfg.seesaw.overlap_tol;
  auto seesaw_at = [&](int iter) {
    SeesawConfig s = cfg.seesaw;
    s.seed = detail::mix_seed(detail::mix_seed(cfg.seesaw.seed, seed), static_cast<std::uint64_t>(iter));
    s.overlap_tol = tol;
    s.polish_sweeps = std::min(s.polish_sweeps, kIterationPolishSweeps);
    return s;
  };

  ProjectorOverlap cur = best_product_overlap_with_projector(p, seesaw_at(0));
  double theta = cfg.theta0;
  SubspaceTrace trace{{{0, cur.measure(), theta}}, p, cur.measure(), AscentStatus::iters_exhausted};
  double best = cur.measure();
  int last_improvement = 0;

  for (int iter = 1; iter <= cfg.iters_max; ++iter) {
    try {
      p = subspace_ascend_step(p, cur.pi, theta);
    } catch (const DegenerateCut&) {
      try {
        p = subspace_ascend_step(p, cur.pi, theta * 1.1);
      } catch (const DegenerateCut&) {
        p = subspace_ascend_step(p, cur.pi, theta * 0.9);
      }
    }
    const ProductState prev = cur.pi;
    cur = cfg.warm_start ? best_product_overlap_with_projector(p, seesaw_at(iter), std::span(&prev, 1))
                         : best_product_overlap_with_projector(p, seesaw_at(iter));
    const double m = cur.measure();
    trace.records.push_back({iter, m, theta});
    if (m > best + cfg.improvement_tol) last_improvement = iter;
    if (m > best) {
      best = m;
      trace.best = p;
    }
    if (iter - last_improvement >= cfg.stagnation_window) {
      theta *= 0.5;
      tol = std::max(tol * 0.1, kTightestTol);
      last_improvement = iter;
      if (theta < cfg.theta_min) {
        trace.status = AscentStatus::converged;
        break;
      }
    }
  }

  SeesawConfig final_cfg = cfg.seesaw;
  final_cfg.restarts = std::max(cfg.final_restarts, 4 * cfg.seesaw.restarts);
  final_cfg.overlap_tol = kTightestTol;
  final_cfg.polish_sweeps = std::max(final_cfg.polish_sweeps, 20000);
  final_cfg.seed = detail::mix_seed(seed, 0xf17a1ULL);
  const double best_check = best_product_overlap_with_projector(trace.best, final_cfg).measure();
  const double last_check = best_product_overlap_with_projector(p, final_cfg, std::span(&cur.pi, 1)).measure();
  if (last_check > best_check) {
    trace.best = p;
    trace.best_measure = last_check;
  } else {
    trace.best_measure = best_check;
  }
  return trace;
}

std::vector<double> principal_angles(const SubspaceProjector& a, const SubspaceProjector& b) {
  if (!(a.shape() == b.shape()) || a.rank() != b.rank()) throw ShapeError("principal angles need equal shapes and ranks");
  const CMatrix m = a.basis_matrix().adjoint() * b.basis_matrix();
  Eigen::JacobiSVD<CMatrix> svd(m);
  std::vector<double> angles;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    angles.push_back(std::acos(std::clamp(svd.singularValues()(i), 0.0, 1.0)));
  }
  std::sort(angles.begin(), angles.end());
  return angles;
}

}  // namespace geomax
