#include "oracles.hpp"

#include <Eigen/SVD>
#include <array>
#include <cmath>
#include <numbers>

namespace geomax::oracle {

namespace {

std::vector<int> digits_of(std::size_t index, const std::vector<int>& dims) {
  std::vector<int> d(dims.size());
  for (std::size_t p = dims.size(); p-- > 0;) {
    d[p] = static_cast<int>(index % static_cast<std::size_t>(dims[p]));
    index /= static_cast<std::size_t>(dims[p]);
  }
  return d;
}

std::array<complex, 2> bloch(double theta, double phi) {
  return {complex(std::cos(theta / 2), 0.0), std::polar(std::sin(theta / 2), phi)};
}

double pair_value(const PureState& s, double t1, double p1, double t2, double p2) {
  const auto a = bloch(t1, p1);
  const auto b = bloch(t2, p2);
  complex z = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) z += std::conj(a[i]) * std::conj(b[j]) * s[static_cast<std::size_t>(2 * i + j)];
  }
  return std::norm(z);
}

}  // namespace

CVector contract(const PureState& state, const std::vector<CVector>& locals, int site) {
  const auto& dims = state.shape().dims();
  CVector out(static_cast<std::size_t>(dims[static_cast<std::size_t>(site)]), 0.0);
  for (std::size_t i = 0; i < state.size(); ++i) {
    const auto d = digits_of(i, dims);
    complex w = state[i];
    for (std::size_t p = 0; p < dims.size(); ++p) {
      if (static_cast<int>(p) != site) w *= std::conj(locals[p][static_cast<std::size_t>(d[p])]);
    }
    out[static_cast<std::size_t>(d[static_cast<std::size_t>(site)])] += w;
  }
  return out;
}

CMatrix partial_trace(const PureState& state, const std::vector<int>& keep) {
  const auto& dims = state.shape().dims();
  std::vector<bool> kept(dims.size(), false);
  int kd = 1;
  for (int p : keep) {
    kept[static_cast<std::size_t>(p)] = true;
    kd *= dims[static_cast<std::size_t>(p)];
  }
  CMatrix rho = CMatrix::Zero(kd, kd);
  // rho[r, c] = sum over pairs (i, j) agreeing on every traced party.
  for (std::size_t i = 0; i < state.size(); ++i) {
    const auto di = digits_of(i, dims);
    for (std::size_t j = 0; j < state.size(); ++j) {
      const auto dj = digits_of(j, dims);
      bool agree = true;
      for (std::size_t p = 0; p < dims.size() && agree; ++p) agree = kept[p] || di[p] == dj[p];
      if (!agree) continue;
      int r = 0, c = 0;
      for (int p : keep) {
        r = r * dims[static_cast<std::size_t>(p)] + di[static_cast<std::size_t>(p)];
        c = c * dims[static_cast<std::size_t>(p)] + dj[static_cast<std::size_t>(p)];
      }
      rho(r, c) += state[i] * std::conj(state[j]);
    }
  }
  return rho;
}

double bipartite_lambda(const PureState& state) {
  const int d1 = state.shape().dim(0);
  const int d2 = state.shape().dim(1);
  CMatrix m(d1, d2);
  for (int i = 0; i < d1; ++i) {
    for (int j = 0; j < d2; ++j) m(i, j) = state[static_cast<std::size_t>(i * d2 + j)];
  }
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

double bloch_grid_lambda2(const PureState& state, int points) {
  const double pi = std::numbers::pi;
  std::vector<std::array<complex, 2>> grid;
  std::vector<std::array<double, 2>> angles;
  for (int i = 0; i < points; ++i) {
    for (int j = 0; j < points; ++j) {
      const double t = pi * i / (points - 1);
      const double p = 2 * pi * j / points;
      grid.push_back(bloch(t, p));
      angles.push_back({t, p});
    }
  }
  double best = -1.0;
  std::size_t ba = 0, bb = 0;
  for (std::size_t ia = 0; ia < grid.size(); ++ia) {
    const auto& a = grid[ia];
    const complex v0 = std::conj(a[0]) * state[0] + std::conj(a[1]) * state[2];
    const complex v1 = std::conj(a[0]) * state[1] + std::conj(a[1]) * state[3];
    for (std::size_t ib = 0; ib < grid.size(); ++ib) {
      const auto& b = grid[ib];
      const double val = std::norm(std::conj(b[0]) * v0 + std::conj(b[1]) * v1);
      if (val > best) {
        best = val;
        ba = ia;
        bb = ib;
      }
    }
  }
  std::array<double, 4> x = {angles[ba][0], angles[ba][1], angles[bb][0], angles[bb][1]};
  double w = 2.0 * pi / points;
  constexpr int kSteps = 10;
  for (int round = 0; round < 12; ++round) {
    std::array<double, 4> bx = x;
    for (int a = -kSteps; a <= kSteps; ++a) {
      for (int b = -kSteps; b <= kSteps; ++b) {
        for (int c = -kSteps; c <= kSteps; ++c) {
          for (int d = -kSteps; d <= kSteps; ++d) {
            const double t1 = x[0] + w * a / kSteps, p1 = x[1] + w * b / kSteps;
            const double t2 = x[2] + w * c / kSteps, p2 = x[3] + w * d / kSteps;
            const double val = pair_value(state, t1, p1, t2, p2);
            if (val > best) {
              best = val;
              bx = {t1, p1, t2, p2};
            }
          }
        }
      }
    }
    x = bx;
    w *= 0.3;
  }
  return best;
}

CMatrix mean_first_marginal(const SystemShape& shape, int samples, std::uint64_t seed) {
  const int d = shape.dim(0);
  const std::size_t rest = shape.total_dim() / static_cast<std::size_t>(d);
  CMatrix mean = CMatrix::Zero(d, d);
  for (int s = 0; s < samples; ++s) {
    const PureState psi = random_pure_state(shape, seed + static_cast<std::uint64_t>(s));
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) {
        complex acc = 0.0;
        for (std::size_t k = 0; k < rest; ++k) {
          acc += psi[static_cast<std::size_t>(r) * rest + k] * std::conj(psi[static_cast<std::size_t>(c) * rest + k]);
        }
        mean(r, c) += acc;
      }
    }
  }
  return mean / samples;
}

}  // namespace geomax::oracle
