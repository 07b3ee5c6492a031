#include "btensor/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "btensor/rng.hpp"

namespace btensor {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double m_norm(std::span<const double> x, int m) {
  double s = 0.0;
  for (double c : x) s += std::pow(std::abs(c), m);
  return std::pow(s, 1.0 / m);
}

void normalize_m(std::vector<double>& x, int m) {
  const double nrm = m_norm(x, m);
  if (!(nrm > 0.0)) throw std::invalid_argument("cannot normalize a zero vector");
  for (double& c : x) c /= nrm;
}

double max_abs_defect(const SymTensor& a, double lambda,
                      const std::vector<double>& x) {
  const auto ax = apply(a, x);
  const auto xp = power_vec(x, a.order() - 1);
  double r = 0.0;
  for (std::size_t i = 0; i < ax.size(); ++i)
    r = std::max(r, std::abs(ax[i] - lambda * xp[i]));
  return r;
}

// x and -x carry the same eigenvalue for even order; fix the sign so reports
// are reproducible under any restart order.
void canonical_sign(std::vector<double>& x) {
  for (double c : x) {
    if (c > 0.0) return;
    if (c < 0.0) {
      for (double& q : x) q = -q;
      return;
    }
  }
}

bool pair_less(const HEigenPair& a, const HEigenPair& b) {
  if (a.lambda != b.lambda) return a.lambda < b.lambda;
  return std::lexicographical_compare(a.x.begin(), a.x.end(), b.x.begin(),
                                      b.x.end());
}

}  // namespace

double h_residual(const SymTensor& a, double lambda, std::span<const double> x) {
  std::vector<double> xn(x.begin(), x.end());
  normalize_m(xn, a.order());
  return max_abs_defect(a, lambda, xn);
}

SpectrumReport min_h_eigenvalue(const SymTensor& a, int restarts, int max_iters,
                                std::uint64_t seed, double tol) {
  if (a.order() % 2 != 0)
    throw std::invalid_argument("min_h_eigenvalue requires even order");
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");

  const int m = a.order();
  const int n = a.dim();
  const double amax = a.max_abs_entry();
  const double step0 =
      amax > 0.0 ? 1.0 / (m * amax * std::pow(static_cast<double>(n), m - 1)) : 1.0;

  SpectrumReport rep;
  rep.restarts = restarts;
  rep.max_iters = max_iters;
  rep.seed = seed;
  rep.tol = tol;

  for (int r = 0; r < restarts; ++r) {
    SplitMix64 rng(split_stream(seed, static_cast<std::uint64_t>(r)));
    std::vector<double> x(static_cast<std::size_t>(n));
    do {
      for (double& c : x) c = rng.uniform_pm1();
    } while (m_norm(x, m) < 1e-3);
    normalize_m(x, m);

    double f = eval_xm(a, x);
    double step = step0;
    const double step_min = step0 * 1e-14;
    const double step_max = step0 * 1e8;
    bool converged = false;

    int it = 0;
    for (; it < max_iters; ++it) {
      if (max_abs_defect(a, f, x) <= tol) {
        converged = true;
        break;
      }
      const auto g = apply(a, x);  // gradient of A x^m is m * A x^{m-1}
      bool improved = false;
      while (step >= step_min) {
        std::vector<double> y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
          y[i] = x[i] - step * m * g[i];
        if (m_norm(y, m) < 1e-300) {
          step *= 0.5;
          continue;
        }
        normalize_m(y, m);
        const double fy = eval_xm(a, y);
        if (fy < f) {
          x = std::move(y);
          f = fy;
          step = std::min(step * 2.0, step_max);
          improved = true;
          break;
        }
        step *= 0.5;
      }
      if (!improved) {
        converged = max_abs_defect(a, f, x) <= tol;
        break;
      }
    }
    rep.total_iterations += it;

    if (converged) {
      canonical_sign(x);
      const double lambda = eval_xm(a, x);
      rep.pairs.push_back({lambda, x, max_abs_defect(a, lambda, x)});
      ++rep.converged_count;
    }
  }

  std::sort(rep.pairs.begin(), rep.pairs.end(), pair_less);
  if (!rep.pairs.empty()) {
    rep.best_pair = rep.pairs.front();
    rep.min_h_estimate = rep.pairs.front().lambda;
  }
  return rep;
}

RadiusEstimate spectral_radius_nonneg(const SymTensor& b, double tol,
                                      int max_iters) {
  for (const auto& [idx, v] : b.entries())
    if (v < 0.0)
      throw std::invalid_argument(
          "spectral_radius_nonneg requires a nonnegative tensor");

  const int n = b.dim();
  const int m = b.order();
  RadiusEstimate est;
  est.lower = 0.0;
  est.upper = kInf;

  std::vector<double> x(static_cast<std::size_t>(n), 1.0);
  for (int it = 0; it < max_iters; ++it) {
    est.iterations = it + 1;
    const auto y = apply(b, x);

    double ymax = 0.0;
    for (double v : y) ymax = std::max(ymax, v);
    if (ymax == 0.0) {  // every row vanishes on a positive iterate
      est.lower = est.upper = est.value = 0.0;
      est.converged = true;
      return est;
    }

    double lo = kInf, hi = -kInf;
    bool all_positive = true;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] <= 0.0) {
        all_positive = false;
        continue;
      }
      double d = x[i];
      for (int k = 2; k < m; ++k) d *= x[i];
      const double ratio = y[i] / d;
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    if (all_positive) {
      est.lower = std::max(est.lower, lo);
      est.upper = std::min(est.upper, hi);
    }
    if (std::isfinite(est.upper) &&
        est.upper - est.lower <= tol * std::max(1.0, est.upper)) {
      est.value = 0.5 * (est.lower + est.upper);
      est.converged = true;
      return est;
    }

    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] = std::pow(y[i] / ymax, 1.0 / (m - 1));
  }

  est.value = est.upper < kInf ? 0.5 * (est.lower + est.upper) : est.lower;
  est.converged = false;
  return est;
}

SphereScan sphere_min_oracle(const SymTensor& a, int resolution) {
  if (a.dim() > 3)
    throw std::invalid_argument("sphere_min_oracle supports n <= 3 only");
  if (resolution < 4) throw std::invalid_argument("resolution must be >= 4");

  SphereScan best;
  best.min_value = kInf;
  auto consider = [&](std::vector<double> x) {
    const double v = eval_xm(a, x);
    if (v < best.min_value) {
      best.min_value = v;
      best.argmin = std::move(x);
    }
  };

  const double pi = std::acos(-1.0);
  if (a.dim() == 1) {
    consider({1.0});
    consider({-1.0});
  } else if (a.dim() == 2) {
    for (int k = 0; k < 2 * resolution; ++k) {
      const double t = pi * k / resolution;
      consider({std::cos(t), std::sin(t)});
    }
  } else {
    for (int i = 0; i <= resolution; ++i) {
      const double theta = pi * i / resolution;
      const double ct = std::cos(theta), st = std::sin(theta);
      for (int k = 0; k < 2 * resolution; ++k) {
        const double phi = pi * k / resolution;
        consider({st * std::cos(phi), st * std::sin(phi), ct});
      }
    }
  }
  return best;
}

}  // namespace btensor
