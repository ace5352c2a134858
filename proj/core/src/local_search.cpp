#include "geomax/local_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace geomax {

namespace {

struct Exhausted {};

constexpr double kGolden = 0.6180339887498949;

class Counted {
 public:
  Counted(const Objective& f, std::size_t budget) : f_(f), budget_(budget) {}

  double operator()(const std::vector<double>& x) {
    if (evals_ >= budget_) throw Exhausted{};
    ++evals_;
    const double v = f_(x);
    if (v < best_value_) {
      best_value_ = v;
      best_x_ = x;
    }
    return v;
  }

  std::size_t evaluations() const { return evals_; }
  double best_value() const { return best_value_; }
  const std::vector<double>& best_x() const { return best_x_; }

 private:
  const Objective& f_;
  std::size_t budget_;
  std::size_t evals_ = 0;
  double best_value_ = std::numeric_limits<double>::infinity();
  std::vector<double> best_x_;
};

std::vector<double> along(const std::vector<double>& x, const std::vector<double>& d, double t) {
  std::vector<double> y(x);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += t * d[i];
  return y;
}

// Line minimisation from x along d. Returns true and updates (x, fx) when a
// lower value is found.
bool line_search(Counted& f, std::vector<double>& x, double& fx, const std::vector<double>& d, double h,
                 double tol) {
  double fp = f(along(x, d, h));
  double sign = 1.0;
  if (!(fp < fx)) {
    const double fm = f(along(x, d, -h));
    if (!(fm < fx)) return false;
    sign = -1.0;
    fp = fm;
  }
  // Expand until the value rises again: a < b < c with f(b) lowest.
  double a = 0.0, fa = fx;
  double b = h, fb = fp;
  double c = 2.0 * h;
  double fc = f(along(x, d, sign * c));
  while (fc < fb) {
    a = b;
    fa = fb;
    b = c;
    fb = fc;
    c = b + (b - a) / kGolden;
    fc = f(along(x, d, sign * c));
  }
  (void)fa;
  // Golden section on [a, c].
  double lo = a, hi = c;
  double x1 = hi - kGolden * (hi - lo);
  double x2 = lo + kGolden * (hi - lo);
  double f1 = f(along(x, d, sign * x1));
  double f2 = f(along(x, d, sign * x2));
  while (hi - lo > tol) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kGolden * (hi - lo);
      f1 = f(along(x, d, sign * x1));
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kGolden * (hi - lo);
      f2 = f(along(x, d, sign * x2));
    }
  }
  double t = b, ft = fb;
  if (f1 < ft) {
    t = x1;
    ft = f1;
  }
  if (f2 < ft) {
    t = x2;
    ft = f2;
  }
  x = along(x, d, sign * t);
  fx = ft;
  return true;
}

}  // namespace

LocalSearchResult minimize_coordinatewise(const Objective& objective, std::vector<double> x0,
                                          const LocalSearchOptions& options) {
  Counted f(objective, options.max_evaluations);
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  const std::size_t n = x0.size();
  LocalSearchResult result;
  std::vector<double> x = std::move(x0);
  bool converged = false;
  try {
    double fx = f(x);
    double h = options.initial_step;
    std::vector<double> dir(n);
    while (true) {
      if (options.stop_at && fx <= *options.stop_at) {
        converged = true;
        break;
      }
      const double tol = std::max(options.min_step, 1e-3 * h);
      bool improved = false;
      for (std::size_t i = 0; i < n; ++i) {
        std::fill(dir.begin(), dir.end(), 0.0);
        dir[i] = 1.0;
        improved |= line_search(f, x, fx, dir, h, tol);
      }
      for (int r = 0; r < options.random_directions; ++r) {
        double s = 0.0;
        for (auto& v : dir) {
          v = normal(rng);
          s += v * v;
        }
        s = std::sqrt(s);
        for (auto& v : dir) v /= s;
        improved |= line_search(f, x, fx, dir, h, tol);
      }
      if (!improved) {
        h *= 0.25;
        if (h < options.min_step) {
          converged = true;
          break;
        }
      }
    }
  } catch (const Exhausted&) {
  }
  result.x = f.best_x().empty() ? x : f.best_x();
  result.value = f.best_value();
  result.evaluations = f.evaluations();
  result.converged = converged;
  return result;
}

}  // namespace geomax
