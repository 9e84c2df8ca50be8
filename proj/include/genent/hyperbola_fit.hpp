#pragma once

// Least-squares fit of y = a / (x + b) + c. For fixed b the problem is linear
// in (a, c); b is found by a grid scan followed by golden-section refinement.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "genent/error.hpp"

namespace genent {

struct HyperbolaFit {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double residual_norm = 0.0;  // sqrt of the (weighted) sum of squared residuals
  std::size_t points = 0;
  bool at_bracket_edge = false;
  std::string warning;
};

struct HyperbolaFitOptions {
  double b_max = 1000.0;
  int grid = 400;
};

namespace detail {

/// Weighted linear least squares of y on u = 1/(x+b); returns SSR.
inline double fit_linear(std::span<const double> x, std::span<const double> y, std::span<const double> w, double b,
                         double& a, double& c) {
  double sw = 0, su = 0, sy = 0, suu = 0, suy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double u = 1.0 / (x[i] + b);
    sw += w[i];
    su += w[i] * u;
    sy += w[i] * y[i];
    suu += w[i] * u * u;
    suy += w[i] * u * y[i];
  }
  const double det = sw * suu - su * su;
  if (!(std::abs(det) > 1e-300)) {
    a = 0.0;
    c = sy / sw;
  } else {
    a = (sw * suy - su * sy) / det;
    c = (suu * sy - su * suy) / det;
  }
  double ssr = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (a / (x[i] + b) + c);
    ssr += w[i] * r * r;
  }
  return ssr;
}

}  // namespace detail

/// Unweighted when `weights` is empty.
inline HyperbolaFit fit_hyperbola(std::span<const double> x, std::span<const double> y,
                                  std::span<const double> weights = {}, const HyperbolaFitOptions& opt = {}) {
  require(x.size() == y.size(), ErrorKind::DimensionMismatch, "fit_hyperbola: x and y differ in length");
  require(weights.empty() || weights.size() == x.size(), ErrorKind::DimensionMismatch, "fit_hyperbola: weight count");
  require(x.size() >= 3, ErrorKind::InvalidArgument, "fit_hyperbola needs at least 3 points");
  for (std::size_t i = 0; i < x.size(); ++i)
    require(std::isfinite(x[i]) && std::isfinite(y[i]) && (weights.empty() || std::isfinite(weights[i])),
            ErrorKind::InvalidArgument, "fit_hyperbola: non-finite input");
  {
    std::vector<double> distinct(x.begin(), x.end());
    std::sort(distinct.begin(), distinct.end());
    require(std::unique(distinct.begin(), distinct.end()) - distinct.begin() >= 3, ErrorKind::Numerical,
            "fit_hyperbola: fewer than 3 distinct x values leave the fit underdetermined");
  }
  std::vector<double> w(weights.begin(), weights.end());
  if (w.empty()) w.assign(x.size(), 1.0);
  const double xmin = *std::min_element(x.begin(), x.end());
  // b must keep every x + b positive.
  const double lo = -xmin + 1e-6 * std::max(1.0, std::abs(xmin));
  const double hi = std::max(opt.b_max, lo + 1.0);
  // Grid uniform in log(b - lo) resolves both the pole region and large b.
  auto grid_b = [&](int i) { return lo + std::expm1(std::log1p(hi - lo) * i / opt.grid); };
  int best = 0;
  double best_ssr = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= opt.grid; ++i) {
    double a, c;
    const double ssr = detail::fit_linear(x, y, w, grid_b(i), a, c);
    if (ssr < best_ssr) {
      best_ssr = ssr;
      best = i;
    }
  }
  double left = grid_b(std::max(best - 1, 1)), right = grid_b(std::min(best + 1, opt.grid));
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a_tmp, c_tmp;
  double p = right - g * (right - left), q = left + g * (right - left);
  double fp = detail::fit_linear(x, y, w, p, a_tmp, c_tmp), fq = detail::fit_linear(x, y, w, q, a_tmp, c_tmp);
  for (int it = 0; it < 200 && (right - left) > 1e-12 * std::max(1.0, std::abs(right)); ++it) {
    if (fp < fq) {
      right = q;
      q = p;
      fq = fp;
      p = right - g * (right - left);
      fp = detail::fit_linear(x, y, w, p, a_tmp, c_tmp);
    } else {
      left = p;
      p = q;
      fp = fq;
      q = left + g * (right - left);
      fq = detail::fit_linear(x, y, w, q, a_tmp, c_tmp);
    }
  }
  HyperbolaFit out;
  out.b = 0.5 * (left + right);
  out.residual_norm = std::sqrt(detail::fit_linear(x, y, w, out.b, out.a, out.c));
  out.points = x.size();
  if (best == 1 || best == opt.grid) {
    out.at_bracket_edge = true;
    out.warning = "optimum of b lies at the edge of the scanned bracket";
  }
  return out;
}

}  // namespace genent
