#pragma once

// Level statistics of a spectrum: consecutive-gap ratios and the
// nearest-neighbour spacing distribution after polynomial unfolding, both on
// the central band.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "genent/error.hpp"
#include "genent/parallel.hpp"

namespace genent {

inline constexpr double kPoissonGapRatio = 0.38629436111989057;  // 2 ln 2 - 1
inline constexpr double kGoeGapRatio = 0.5307;

inline constexpr std::size_t kMinLevels = 50;

struct LevelStatsOptions {
  double edge_fraction = 0.1;  // dropped at each spectral edge
  int unfolding_degree = 7;
  double degenerate_spacing = 1e-12;
};

struct LevelStatistics {
  std::vector<double> gap_ratios;
  double mean_gap_ratio = 0.0;
  std::vector<double> unfolded_spacings;  // mean 1 over the band
  std::size_t levels_used = 0;
  std::size_t excluded_degenerate = 0;
};

/// Index range [first, last) kept after dropping `fraction` of levels per edge.
inline std::pair<std::size_t, std::size_t> central_band(std::size_t count, double fraction) {
  const auto drop = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(count)));
  return {drop, count - drop};
}

/// Least-squares polynomial fit of the staircase N(E) over the band; returns
/// the unfolded levels.
inline std::vector<double> unfold(std::span<const double> band, std::size_t first_index, int degree) {
  const auto m = static_cast<Eigen::Index>(band.size());
  require(m > degree + 1, ErrorKind::InvalidArgument, "unfold: too few levels for the polynomial degree");
  const double lo = band.front(), hi = band.back();
  const double mid = 0.5 * (lo + hi), half = std::max(0.5 * (hi - lo), 1e-300);
  Eigen::MatrixXd v(m, degree + 1);
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double x = (band[static_cast<std::size_t>(i)] - mid) / half;
    double p = 1.0;
    for (int d = 0; d <= degree; ++d, p *= x) v(i, d) = p;
    y(i) = static_cast<double>(first_index) + static_cast<double>(i);
  }
  const Eigen::VectorXd c = v.colPivHouseholderQr().solve(y);
  const Eigen::VectorXd fit = v * c;
  return {fit.data(), fit.data() + fit.size()};
}

inline LevelStatistics level_statistics(std::span<const double> energies, const LevelStatsOptions& opt = {}) {
  require(energies.size() >= kMinLevels, ErrorKind::InvalidArgument, "level_statistics needs at least 50 levels");
  require(std::is_sorted(energies.begin(), energies.end()), ErrorKind::InvalidArgument, "energies must be ascending");
  const auto [first, last] = central_band(energies.size(), opt.edge_fraction);
  const auto band = energies.subspan(first, last - first);
  LevelStatistics out;
  out.levels_used = band.size();
  const double scale = std::max({1.0, std::abs(energies.front()), std::abs(energies.back())});
  std::vector<double> s(band.size() - 1);
  for (std::size_t i = 0; i + 1 < band.size(); ++i) s[i] = band[i + 1] - band[i];
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const double a = s[i], b = s[i + 1];
    if (a < opt.degenerate_spacing * scale || b < opt.degenerate_spacing * scale) {
      ++out.excluded_degenerate;
      continue;
    }
    out.gap_ratios.push_back(std::min(a, b) / std::max(a, b));
  }
  out.mean_gap_ratio = out.gap_ratios.empty() ? 0.0 : pairwise_sum(out.gap_ratios) / static_cast<double>(out.gap_ratios.size());

  const auto unfolded = unfold(band, first, opt.unfolding_degree);
  for (std::size_t i = 0; i + 1 < unfolded.size(); ++i) out.unfolded_spacings.push_back(unfolded[i + 1] - unfolded[i]);
  const double mean = pairwise_sum(out.unfolded_spacings) / static_cast<double>(out.unfolded_spacings.size());
  if (mean > 0)
    for (double& x : out.unfolded_spacings) x /= mean;
  return out;
}

inline double poisson_spacing_density(double s) { return std::exp(-s); }

inline double wigner_surmise_goe(double s) {
  return std::numbers::pi / 2.0 * s * std::exp(-std::numbers::pi * s * s / 4.0);
}

/// Normalized histogram on [0, max) with `bins` equal bins; values beyond the
/// range are dropped from the counts but not from the normalization.
inline std::vector<double> density_histogram(std::span<const double> values, double max, int bins) {
  std::vector<double> h(static_cast<std::size_t>(bins), 0.0);
  if (values.empty()) return h;
  const double w = max / bins;
  for (double v : values) {
    if (v < 0 || v >= max) continue;
    h[static_cast<std::size_t>(v / w)] += 1.0;
  }
  for (double& x : h) x /= static_cast<double>(values.size()) * w;
  return h;
}

}  // namespace genent
