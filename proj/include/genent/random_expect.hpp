#pragma once

// Expected purities over random-state ensembles: closed forms for Haar
// (complex and real) states on the full space and on a subspace, plus the
// Monte Carlo estimators that check them.

#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "genent/basis.hpp"
#include "genent/error.hpp"
#include "genent/observables.hpp"
#include "genent/parallel.hpp"
#include "genent/purity.hpp"
#include "genent/state.hpp"

namespace genent {

inline double expected_purity_haar(const ObservableSet& h, Index N) {
  require(h.hilbert_dim == N, ErrorKind::DimensionMismatch, "expected_purity_haar: set built for another dimension");
  return h.kappa * static_cast<double>(h.dim_h()) / (static_cast<double>(N) + 1.0);
}

/// Real-amplitude ensemble; every operator of h must be real.
inline double expected_purity_real(const ObservableSet& h, Index N) {
  require(h.hilbert_dim == N, ErrorKind::DimensionMismatch, "expected_purity_real: set built for another dimension");
  for (const auto& op : h.ops)
    require(is_real_operator(op), ErrorKind::InvalidArgument,
            "expected_purity_real: operator " + describe(op) + " is not real in the computational basis");
  return h.kappa * 2.0 * static_cast<double>(h.dim_h()) / (static_cast<double>(N) + 2.0);
}

struct SectorTraces {
  std::int64_t trace = 0;         // tr(P Pi P)
  std::int64_t trace_square = 0;  // tr((Pi P Pi)^2)
};

/// Exact traces of a unit-coefficient Pauli string projected onto a
/// fixed-weight sector. Only strings without flips have a diagonal; a flip
/// pattern x keeps a string inside the sector iff half its |x| sites are 1.
inline SectorTraces pauli_sector_traces(const PauliString& p, const SectorBasis& sector) {
  require(!sector.is_full(), ErrorKind::InvalidArgument, "pauli_sector_traces needs a fixed-magnetization sector");
  require(p.sites == sector.sites(), ErrorKind::DimensionMismatch, "Pauli string length differs from sector");
  const int n = sector.sites(), k = sector.ones();
  SectorTraces t;
  if (p.x_mask == 0) {
    const int w = std::popcount(p.z_mask);
    for (int j = 0; j <= w; ++j) {
      const auto term = static_cast<std::int64_t>(binomial(w, j) * binomial(n - w, k - j));
      t.trace += (j % 2 == 0) ? term : -term;
    }
    t.trace_square = static_cast<std::int64_t>(sector.dim());
    return t;
  }
  const int x = std::popcount(p.x_mask);
  if (x % 2 == 0) t.trace_square = static_cast<std::int64_t>(binomial(x, x / 2) * binomial(n - x, k - x / 2));
  return t;
}

enum class ProjectedPart { Full, Real };

struct ProjectedOperator {
  double alpha = 0.0;
  double beta = 0.0;
  double trace = 0.0;
  double trace_square = 0.0;
  bool vanishes = false;  // structurally zero on the sector
};

struct ProjectedOperatorDecomposition {
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<bool> skipped;
  Index sector_dim = 0;
};

/// Pi b Pi = alpha b' + beta 1 with tr b' = 0 and tr b'^2 = N_S. With
/// ProjectedPart::Real the real part of Pi b Pi is decomposed instead, which is
/// what real-amplitude states see.
inline ProjectedOperator project_operator(const Operator& op, const SectorBasis& sector,
                                          ProjectedPart part = ProjectedPart::Full) {
  require(operator_dim(op) == sector.register_dim(), ErrorKind::DimensionMismatch,
          "project_operator: operator and sector live on different registers");
  ProjectedOperator out;
  const auto NS = static_cast<double>(sector.dim());
  if (part == ProjectedPart::Real && !is_real_operator(op)) {
    // Built-in operators are purely real or purely imaginary.
    out.vanishes = true;
    return out;
  }
  if (sector.is_full()) {
    // Traceless and normalized on the whole space.
    out.trace_square = NS;
    out.alpha = 1.0;
    return out;
  }
  if (const auto* p = std::get_if<PauliString>(&op)) {
    const auto t = pauli_sector_traces(*p, sector);
    out.trace = p->coeff * static_cast<double>(t.trace);
    out.trace_square = p->coeff * p->coeff * static_cast<double>(t.trace_square);
  } else {
    for (Index i = 0; i < sector.dim(); ++i) {
      const Bits col = sector.unrank(i);
      for_each_column_entry(op, col, [&](Index row, Complex v) {
        if (sector.find(row) < 0) return;
        const double mag2 = part == ProjectedPart::Real ? v.real() * v.real() : std::norm(v);
        out.trace_square += mag2;
        if (row == col) out.trace += v.real();
      });
    }
  }
  out.vanishes = out.trace_square == 0.0;
  out.beta = out.trace / NS;
  out.alpha = std::sqrt(std::max(0.0, (out.trace_square - NS * out.beta * out.beta) / NS));
  return out;
}

inline ProjectedOperatorDecomposition decompose(const ObservableSet& h, const SectorBasis& sector,
                                                ProjectedPart part = ProjectedPart::Full) {
  ProjectedOperatorDecomposition d;
  d.sector_dim = sector.dim();
  for (const auto& op : h.ops) {
    const auto p = project_operator(op, sector, part);
    d.alpha.push_back(p.alpha);
    d.beta.push_back(p.beta);
    d.skipped.push_back(p.vanishes);
  }
  return d;
}

/// kappa (g sum alpha^2 + sum beta^2) with g = 1/(N_S+1) for complex states
/// and 2/(N_S+2) for real states.
inline double expected_purity_sector(const ObservableSet& h, const SectorBasis& sector, bool real) {
  require(h.hilbert_dim == sector.register_dim(), ErrorKind::DimensionMismatch,
          "expected_purity_sector: set and sector live on different registers");
  const auto d = decompose(h, sector, real ? ProjectedPart::Real : ProjectedPart::Full);
  const auto NS = static_cast<double>(d.sector_dim);
  const double g = real ? 2.0 / (NS + 2.0) : 1.0 / (NS + 1.0);
  double s = 0.0;
  for (std::size_t i = 0; i < d.alpha.size(); ++i) {
    if (d.skipped[i]) continue;
    s += g * d.alpha[i] * d.alpha[i] + d.beta[i] * d.beta[i];
  }
  return h.kappa * s;
}

/// Sample mean and standard error of P_h over `samples` members of the ensemble.
inline MeanEstimate monte_carlo_expected_purity(const ObservableSet& h, const EnsembleSpec& spec,
                                                std::size_t samples, unsigned jobs = 1) {
  require(samples >= 1, ErrorKind::InvalidArgument, "monte_carlo_expected_purity needs samples >= 1");
  spec.validate();
  require(h.hilbert_dim == spec.basis->register_dim(), ErrorKind::DimensionMismatch,
          "ensemble register does not match the observable set");
  std::vector<double> values(samples);
  parallel_for(samples, jobs, [&](std::size_t i) { values[i] = purity(sample(spec, i), h); });
  return mean_and_stderr(values);
}

/// Same estimator for an arbitrary per-state functional.
template <class Fn>
MeanEstimate monte_carlo_mean(const EnsembleSpec& spec, std::size_t samples, unsigned jobs, Fn&& fn) {
  spec.validate();
  std::vector<double> values(samples);
  parallel_for(samples, jobs, [&](std::size_t i) { values[i] = fn(sample(spec, i)); });
  return mean_and_stderr(values);
}

// ---------------------------------------------------------------------------
// Closed forms for named sets

/// tr of Pi sigma_z sigma_z Pi on the zero-magnetization sector of n qubits.
inline std::int64_t bilocal_lambda(int n) {
  require(n >= 2 && n % 2 == 0, ErrorKind::InvalidArgument, "bilocal_lambda needs even n >= 2");
  std::int64_t s = 0;
  for (int k = 0; k <= 2; ++k) {
    const auto term = static_cast<std::int64_t>(binomial(2, k) * binomial(n - 2, n / 2 - k));
    s += (k % 2 == 0) ? term : -term;
  }
  return s;
}

/// Expected pair-block purity of real random states in the zero-magnetization
/// sector, from the subspace formula with beta_zz = lambda / N0 and
/// tr((Pi xx Pi)^2) = 2 C(n-2, n/2-1).
inline double bilocal_sector_real(int n) {
  const double n0 = static_cast<double>(binomial(n, n / 2));
  const double lam = static_cast<double>(bilocal_lambda(n));
  const double c = static_cast<double>(binomial(n - 2, (n - 2) / 2));
  const double b2 = (lam / n0) * (lam / n0);
  return (1.0 / 3.0) * ((2.0 / (n0 + 2.0)) * (3.0 - b2 + 4.0 * c / n0) + b2);
}

/// The same quantity with lambda^2 / N0 in place of (lambda / N0)^2.
inline double bilocal_sector_real_lambda2_over_n0(int n) {
  const double n0 = static_cast<double>(binomial(n, n / 2));
  const double lam = static_cast<double>(bilocal_lambda(n));
  const double c = static_cast<double>(binomial(n - 2, (n - 2) / 2));
  return (1.0 / 3.0) * ((2.0 / (n0 + 2.0)) * (3.0 - lam * lam / n0 + 4.0 * c / n0) + lam * lam / n0);
}

}  // namespace genent
