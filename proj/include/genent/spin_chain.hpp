#pragma once

// Disordered Heisenberg chain with open boundaries,
//   H = sum_i (eps_i / 2) z_i + (J / 4) sum_i (x_i x_{i+1} + y_i y_{i+1} + z_i z_{i+1}),
// diagonalized in a fixed-magnetization sector, with per-eigenvector
// delocalization and Hamming-profile analysis and disorder averaging.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "genent/basis.hpp"
#include "genent/eigensolver.hpp"
#include "genent/error.hpp"
#include "genent/hamming.hpp"
#include "genent/hyperbola_fit.hpp"
#include "genent/level_stats.hpp"
#include "genent/parallel.hpp"
#include "genent/purity.hpp"
#include "genent/rng.hpp"
#include "genent/state.hpp"

namespace genent {

struct ChainSpec {
  int n = 12;
  double J = 1.0;
  double eps = 1.0;
  double disorder_width = 1.0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  /// Explicit eps_i; when empty they are eps + U[-w/2, w/2] drawn from (seed, stream).
  std::vector<double> fields;

  void validate() const {
    require(n >= 2 && n <= 20, ErrorKind::InvalidArgument, "chain: n must be in [2, 20]");
    require(J > 0.0 && std::isfinite(J), ErrorKind::InvalidArgument, "chain: J must be positive");
    require(disorder_width >= 0.0 && std::isfinite(disorder_width), ErrorKind::InvalidArgument,
            "chain: disorder_width must be >= 0");
    require(std::isfinite(eps), ErrorKind::InvalidArgument, "chain: eps must be finite");
    require(fields.empty() || fields.size() == static_cast<std::size_t>(n), ErrorKind::DimensionMismatch,
            "chain: fields must have one entry per site");
  }
};

inline std::vector<double> site_fields(const ChainSpec& spec) {
  if (!spec.fields.empty()) return spec.fields;
  RandomStream rng(spec.seed, spec.stream);
  std::vector<double> e(static_cast<std::size_t>(spec.n));
  for (auto& x : e) x = spec.eps + spec.disorder_width * (rng.uniform() - 0.5);
  return e;
}

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

inline double site_z(Bits s, int n, int site) { return ((s >> site_bit(n, site)) & 1U) ? -1.0 : 1.0; }

/// Sparse H on `sector` (qubit basis: full register or a magnetization sector).
inline SparseMatrix build_hamiltonian(const ChainSpec& spec, const SectorBasis& sector) {
  spec.validate();
  require(sector.sites() == spec.n && sector.local_dim() == 2, ErrorKind::DimensionMismatch,
          "chain: sector does not match the chain");
  const int n = spec.n;
  const auto eps = site_fields(spec);
  const auto dim = sector.dim();
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(dim * static_cast<std::size_t>(n));
  for (Index k = 0; k < dim; ++k) {
    const Bits s = sector.unrank(k);
    double diag = 0.0;
    for (int i = 0; i < n; ++i) diag += 0.5 * eps[static_cast<std::size_t>(i)] * site_z(s, n, i);
    for (int i = 0; i + 1 < n; ++i) {
      const double zz = site_z(s, n, i) * site_z(s, n, i + 1);
      diag += 0.25 * spec.J * zz;
      if (zz < 0) {
        const Bits flipped = s ^ (Bits{1} << site_bit(n, i)) ^ (Bits{1} << site_bit(n, i + 1));
        t.emplace_back(static_cast<int>(k), static_cast<int>(sector.rank(flipped)), 0.5 * spec.J);
      }
    }
    t.emplace_back(static_cast<int>(k), static_cast<int>(k), diag);
  }
  SparseMatrix h(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  h.setFromTriplets(t.begin(), t.end());
  return h;
}

/// tr H in a sector = sum_i (eps_i/2) field_count + (J/4) bond_count, both
/// integers fixed by combinatorics.
struct TraceFormula {
  std::int64_t field_count = 0;  // sum over sector strings of z_i (same for every i)
  std::int64_t bond_count = 0;   // sum over strings and bonds of z_i z_{i+1}

  double trace(const ChainSpec& spec) const {
    const auto eps = site_fields(spec);
    double f = 0.0;
    for (double e : eps) f += e;
    return 0.5 * f * static_cast<double>(field_count) + 0.25 * spec.J * static_cast<double>(bond_count);
  }
};

inline TraceFormula hamiltonian_trace_formula(int n, int ones) {
  auto c = [](int a, int b) -> std::int64_t { return (b < 0 || a < 0 || b > a) ? 0 : static_cast<std::int64_t>(binomial(a, b)); };
  TraceFormula t;
  t.field_count = c(n - 1, ones) - c(n - 1, ones - 1);
  t.bond_count = static_cast<std::int64_t>(n - 1) * (c(n - 2, ones) + c(n - 2, ones - 2) - 2 * c(n - 2, ones - 1));
  return t;
}

struct SpectralResult {
  BasisPtr sector;
  Eigen::VectorXd energies;  // ascending
  Eigen::MatrixXd vectors;   // real, orthonormal columns
  std::uint64_t realization_id = 0;
  double max_residual = 0.0;         // max_k |H v_k - E_k v_k| / |H|
  double orthonormality_error = 0.0;  // max |V^T V - 1|
  double min_spacing = 0.0;
};

inline constexpr double kResidualTolerance = 1e-8;
inline constexpr double kOrthonormalityTolerance = 1e-9;
inline constexpr double kDegenerateLevel = 1e-12;

/// Full spectrum; throws Numerical when the residual or orthonormality bounds
/// fail. Eigenvector signs are fixed so the largest component is positive.
inline SpectralResult diagonalize(const SparseMatrix& h, BasisPtr sector, std::uint64_t realization_id = 0) {
  require(h.rows() == h.cols(), ErrorKind::DimensionMismatch, "diagonalize needs a square matrix");
  require(sector && static_cast<Eigen::Index>(sector->dim()) == h.rows(), ErrorKind::DimensionMismatch,
          "diagonalize: matrix and sector dimensions differ");
  const Eigen::MatrixXd dense(h);
  require((dense - dense.transpose()).cwiseAbs().maxCoeff() == 0.0, ErrorKind::InvalidArgument,
          "diagonalize: matrix is not symmetric");
  auto eig = symmetric_eigen(dense);
  SpectralResult r;
  r.sector = std::move(sector);
  r.realization_id = realization_id;
  r.energies = std::move(eig.values);
  r.vectors = std::move(eig.vectors);
  const auto dim = r.energies.size();
  for (Eigen::Index k = 0; k < dim; ++k) {
    Eigen::Index at = 0;
    r.vectors.col(k).cwiseAbs().maxCoeff(&at);
    if (r.vectors(at, k) < 0) r.vectors.col(k) *= -1.0;
  }
  const double norm = std::max(r.energies.cwiseAbs().maxCoeff(), 1e-300);
  const Eigen::MatrixXd hv = h * r.vectors;
  for (Eigen::Index k = 0; k < dim; ++k)
    r.max_residual = std::max(r.max_residual, (hv.col(k) - r.energies(k) * r.vectors.col(k)).norm() / norm);
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(dim, dim);
  gram.selfadjointView<Eigen::Lower>().rankUpdate(r.vectors.transpose());
  gram.diagonal().array() -= 1.0;
  r.orthonormality_error = gram.triangularView<Eigen::Lower>().toDenseMatrix().cwiseAbs().maxCoeff();
  r.min_spacing = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k + 1 < dim; ++k) r.min_spacing = std::min(r.min_spacing, r.energies(k + 1) - r.energies(k));
  if (!(r.max_residual < kResidualTolerance) || !(r.orthonormality_error < kOrthonormalityTolerance)) {
    std::string msg = "eigendecomposition failed its checks (residual " + std::to_string(r.max_residual) +
                      ", orthonormality " + std::to_string(r.orthonormality_error) + ")";
    if (dim <= 16) {
      msg += "; matrix:";
      for (Eigen::Index i = 0; i < dim; ++i) {
        msg += "\n ";
        for (Eigen::Index j = 0; j < dim; ++j) msg += " " + std::to_string(dense(i, j));
      }
    }
    throw Error(ErrorKind::Numerical, msg);
  }
  return r;
}

/// True when two levels coincide to within 1e-12 max(1, |H|).
inline bool has_degenerate_levels(const SpectralResult& r) {
  const double scale = std::max(1.0, r.energies.size() ? r.energies.cwiseAbs().maxCoeff() : 0.0);
  return r.min_spacing < kDegenerateLevel * scale;
}

struct EigvecRecord {
  double energy = 0.0;
  double npc_z = 0.0;
  double p_loc = 0.0;
  std::vector<double> A_f;  // index f = 0..n; odd f are zero in a magnetization sector
  std::uint64_t realization_id = 0;
  std::uint32_t level = 0;  // position in the ascending spectrum
};

inline PureState eigenvector_state(const SpectralResult& r, Eigen::Index k) {
  Amplitudes a(static_cast<std::size_t>(r.vectors.rows()));
  for (Eigen::Index i = 0; i < r.vectors.rows(); ++i) a[static_cast<std::size_t>(i)] = r.vectors(i, k);
  return PureState::normalized(r.sector, std::move(a));
}

/// Per eigenvector: NPC in the z basis, P_loc = (1/n) sum_i <z_i>^2 (the x and
/// y terms vanish for real sector states) and the z-basis A_f profile.
inline std::vector<EigvecRecord> analyze_eigenvectors(const SpectralResult& r) {
  const auto& sector = *r.sector;
  require(sector.local_dim() == 2, ErrorKind::Unsupported, "analyze_eigenvectors needs qubits");
  const int n = sector.sites();
  const auto dim = static_cast<Eigen::Index>(sector.dim());
  std::vector<EigvecRecord> out(static_cast<std::size_t>(dim));
  for (Eigen::Index k = 0; k < dim; ++k) {
    const auto psi = eigenvector_state(r, k);
    auto& rec = out[static_cast<std::size_t>(k)];
    rec.energy = r.energies(k);
    rec.npc_z = npc(psi);
    std::vector<double> z(static_cast<std::size_t>(n), 0.0);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double p = r.vectors(i, k) * r.vectors(i, k);
      const Bits s = sector.unrank(static_cast<Index>(i));
      for (int site = 0; site < n; ++site) z[static_cast<std::size_t>(site)] += p * site_z(s, n, site);
    }
    double sum = 0.0;
    for (double v : z) sum += v * v;
    rec.p_loc = sum / n;
    rec.A_f = profile(psi).A_f;
    rec.realization_id = r.realization_id;
    rec.level = static_cast<std::uint32_t>(k);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Disorder ensembles

struct ChainExperiment {
  int n = 12;
  std::vector<double> ratios{0.2, 0.59, 1.0};  // J / disorder_width
  int realizations = 100;
  std::uint64_t master_seed = 2024;
  double eps = 1.0;
  double disorder_width = 1.0;
  int bins = 50;  // NPC histogram bins
  double edge_fraction = 0.1;
  // Eigenvectors whose NPC lies in (inset_lo, inset_hi) at ratio inset_ratio
  // keep their components.
  double inset_ratio = 1.0;
  double inset_lo = 300.0;
  double inset_hi = 316.0;
  int max_attempts = 8;

  void validate() const {
    require(n >= 2 && n <= 14 && n % 2 == 0, ErrorKind::InvalidArgument, "chain experiment: n must be even, 2..14");
    require(!ratios.empty(), ErrorKind::InvalidArgument, "chain experiment: no ratios");
    for (double r : ratios) require(r > 0 && std::isfinite(r), ErrorKind::InvalidArgument, "chain experiment: ratios must be > 0");
    require(realizations >= 1, ErrorKind::InvalidArgument, "chain experiment: realizations must be >= 1");
    require(disorder_width >= 0, ErrorKind::InvalidArgument, "chain experiment: disorder_width must be >= 0");
    require(bins >= 1, ErrorKind::InvalidArgument, "chain experiment: bins must be >= 1");
    require(edge_fraction >= 0 && edge_fraction < 0.5, ErrorKind::InvalidArgument, "chain experiment: bad edge_fraction");
    require(max_attempts >= 1, ErrorKind::InvalidArgument, "chain experiment: max_attempts must be >= 1");
  }
};

struct RealizationResult {
  std::uint64_t realization_id = 0;
  bool ok = false;
  std::string failure;
  int attempts = 0;  // > 1 when a degenerate spectrum was resampled
  std::vector<double> fields;
  std::vector<double> energies;
  std::vector<EigvecRecord> records;
  LevelStatistics levels;
  double max_residual = 0.0;
  double orthonormality_error = 0.0;
  std::vector<std::vector<double>> inset_components;
};

struct RatioResult {
  double ratio = 0.0;
  double J = 0.0;
  std::vector<RealizationResult> realizations;
  MeanEstimate gap_ratio;  // over per-realization means; empty below kMinLevels levels
  std::size_t failures = 0;
  std::size_t resampled = 0;
  std::size_t excluded_degenerate_spacings = 0;
};

struct ChainDataset {
  ChainExperiment config;
  Index sector_dim = 0;
  std::vector<RatioResult> ratios;
};

inline RealizationResult run_realization(const ChainExperiment& cfg, std::size_t ratio_index, std::uint64_t realization,
                                         const BasisPtr& sector, bool keep_inset) {
  RealizationResult out;
  out.realization_id = realization;
  const RandomStream base = RandomStream(cfg.master_seed).substream(ratio_index).substream(realization);
  try {
    for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
      out.attempts = attempt + 1;
      ChainSpec spec{cfg.n, cfg.ratios[ratio_index] * cfg.disorder_width, cfg.eps, cfg.disorder_width,
                     cfg.master_seed, base.substream(static_cast<std::uint64_t>(attempt)).stream_id(), {}};
      spec.fields = site_fields(spec);
      const auto h = build_hamiltonian(spec, *sector);
      auto r = diagonalize(h, sector, realization);
      if (has_degenerate_levels(r)) continue;
      out.fields = spec.fields;
      out.max_residual = r.max_residual;
      out.orthonormality_error = r.orthonormality_error;
      out.energies.assign(r.energies.data(), r.energies.data() + r.energies.size());
      out.records = analyze_eigenvectors(r);
      LevelStatsOptions lo;
      lo.edge_fraction = cfg.edge_fraction;
      if (out.energies.size() >= kMinLevels) out.levels = level_statistics(out.energies, lo);
      if (keep_inset)
        for (std::size_t k = 0; k < out.records.size(); ++k) {
          const double x = out.records[k].npc_z;
          if (x > cfg.inset_lo && x < cfg.inset_hi) {
            const auto col = r.vectors.col(static_cast<Eigen::Index>(k));
            out.inset_components.emplace_back(col.data(), col.data() + col.size());
          }
        }
      out.ok = true;
      return out;
    }
    out.failure = "degenerate spectrum after " + std::to_string(cfg.max_attempts) + " attempts";
  } catch (const Error& e) {
    out.failure = e.what();
  }
  return out;
}

/// Deterministic in master_seed for any `jobs`.
inline ChainDataset run_ensemble(const ChainExperiment& cfg, unsigned jobs = 0) {
  cfg.validate();
  ChainDataset data;
  data.config = cfg;
  const auto sector = make_sector(cfg.n, 0);
  data.sector_dim = sector->dim();
  const std::size_t per = static_cast<std::size_t>(cfg.realizations);
  std::vector<RealizationResult> all(cfg.ratios.size() * per);
  parallel_for(all.size(), jobs, [&](std::size_t i) {
    const std::size_t ri = i / per;
    const bool inset = std::abs(cfg.ratios[ri] - cfg.inset_ratio) < 1e-12;
    all[i] = run_realization(cfg, ri, i % per, sector, inset);
  });
  for (std::size_t ri = 0; ri < cfg.ratios.size(); ++ri) {
    RatioResult rr;
    rr.ratio = cfg.ratios[ri];
    rr.J = cfg.ratios[ri] * cfg.disorder_width;
    std::vector<double> r_means;
    for (std::size_t k = 0; k < per; ++k) {
      auto& real = all[ri * per + k];
      if (!real.ok) {
        ++rr.failures;
      } else {
        if (real.attempts > 1) ++rr.resampled;
        rr.excluded_degenerate_spacings += real.levels.excluded_degenerate;
        if (real.levels.levels_used > 0) r_means.push_back(real.levels.mean_gap_ratio);
      }
      rr.realizations.push_back(std::move(real));
    }
    rr.gap_ratio = mean_and_stderr(r_means);
    data.ratios.push_back(std::move(rr));
  }
  return data;
}

// ---------------------------------------------------------------------------
// Binned curves and the hyperbolic fit

struct NpcBin {
  int lower = 0;  // bin is [lower, lower + 1)
  std::size_t count = 0;
  double mean_npc = 0.0;
  double mean_p_loc = 0.0;
  double stderr_p_loc = 0.0;
  double mean_prediction = 0.0;  // sector prediction for uncorrelated amplitudes
  std::vector<double> mean_A_f;
};

/// Records with `level` inside the central band when `trim_edges` is set.
inline std::vector<const EigvecRecord*> select_records(const RatioResult& rr, bool trim_edges, double edge_fraction) {
  std::vector<const EigvecRecord*> out;
  for (const auto& real : rr.realizations) {
    if (!real.ok) continue;
    const auto [first, last] = central_band(real.records.size(), trim_edges ? edge_fraction : 0.0);
    for (std::size_t k = first; k < last; ++k) out.push_back(&real.records[k]);
  }
  return out;
}

/// Unit-width bins on integer NPC boundaries; empty bins are omitted.
inline std::vector<NpcBin> bin_by_npc(const std::vector<const EigvecRecord*>& records, double sector_dim) {
  std::vector<std::vector<const EigvecRecord*>> groups;
  for (const auto* r : records) {
    const auto b = static_cast<std::size_t>(std::floor(r->npc_z));
    if (groups.size() <= b) groups.resize(b + 1);
    groups[b].push_back(r);
  }
  std::vector<NpcBin> out;
  for (std::size_t b = 0; b < groups.size(); ++b) {
    const auto& g = groups[b];
    if (g.empty()) continue;
    NpcBin bin;
    bin.lower = static_cast<int>(b);
    bin.count = g.size();
    std::vector<double> x, y, pred;
    const std::size_t nf = g.front()->A_f.size();
    std::vector<std::vector<double>> af(nf);
    for (const auto* r : g) {
      x.push_back(r->npc_z);
      y.push_back(r->p_loc);
      pred.push_back(sector_prediction_sz0(r->npc_z, sector_dim));
      for (std::size_t f = 0; f < nf; ++f) af[f].push_back(r->A_f[f]);
    }
    const double c = static_cast<double>(g.size());
    bin.mean_npc = pairwise_sum(x) / c;
    const auto e = mean_and_stderr(y);
    bin.mean_p_loc = e.mean;
    bin.stderr_p_loc = e.std_error;
    bin.mean_prediction = pairwise_sum(pred) / c;
    for (auto& v : af) bin.mean_A_f.push_back(pairwise_sum(v) / c);
    out.push_back(std::move(bin));
  }
  return out;
}

/// Fit over bins holding at least `min_count` eigenvectors.
inline HyperbolaFit fit_binned(const std::vector<NpcBin>& bins, std::size_t min_count) {
  std::vector<double> x, y;
  for (const auto& b : bins)
    if (b.count >= min_count) {
      x.push_back(b.mean_npc);
      y.push_back(b.mean_p_loc);
    }
  require(x.size() >= 10, ErrorKind::Numerical, "hyperbolic fit needs at least 10 populated bins");
  return fit_hyperbola(x, y);
}

}  // namespace genent
