#pragma once

// Hamming-distance-resolved amplitude correlations.

#include <bit>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "genent/basis.hpp"
#include "genent/error.hpp"
#include "genent/purity.hpp"
#include "genent/state.hpp"

namespace genent {

enum class HammingMethod { Direct, Fast };

/// 1 - (4/n) sum_{k<j} f_kj p_k p_j with amplitudes taken in basis `axis`.
/// Direct enumerates pairs; Fast uses single-site marginals.
inline double hamming_weighted_purity(const PureState& psi, BasisAxis axis = BasisAxis::Z,
                                      HammingMethod method = HammingMethod::Direct) {
  require(psi.local_dim() == 2, ErrorKind::Unsupported, "hamming_weighted_purity is defined for qubits");
  const PureState rotated = change_basis(psi, axis);
  if (method == HammingMethod::Direct) return qudit_hamming_purity(rotated);
  const double n = psi.sites();
  const auto amps = rotated.register_amplitudes();
  return 1.0 - (4.0 / n) * hamming_pair_sum_marginals(amps, psi.sites(), 2);
}

/// In-place Walsh-Hadamard transform (unnormalized).
inline void walsh_hadamard(std::vector<double>& v) {
  const std::size_t n = v.size();
  for (std::size_t h = 1; h < n; h <<= 1)
    for (std::size_t i = 0; i < n; i += 2 * h)
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = v[j], b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
}

/// c[m] = sum_k p_k p_{k xor m} over a 2^n register.
inline std::vector<double> xor_autocorrelation(std::vector<double> p) {
  require(std::has_single_bit(p.size()), ErrorKind::InvalidArgument, "xor_autocorrelation needs a power-of-two length");
  walsh_hadamard(p);
  for (double& x : p) x *= x;
  walsh_hadamard(p);
  const double inv = 1.0 / static_cast<double>(p.size());
  for (double& x : p) x *= inv;
  return p;
}

struct HammingProfile {
  std::string basis_label;
  int sites = 0;
  Index basis_dim = 0;
  std::vector<std::uint64_t> n_f;  // index f = 0..n
  std::vector<double> A_f;
  std::vector<double> w_f;
  double A_bar = 0.0;
  double ipr = 0.0;
  bool degenerate = false;  // A_bar vanishes; w_f set to 0

  /// sum_f 2 n_f A_f; equals 1 - IPR.
  double pair_mass() const {
    double s = 0.0;
    for (std::size_t f = 0; f < A_f.size(); ++f) s += 2.0 * static_cast<double>(n_f[f]) * A_f[f];
    return s;
  }
};

inline constexpr double kDegenerateProfile = 1e-12;

/// A_f for a qubit state in basis `axis` (z only for sector states); pairs are
/// bucketed through the XOR autocorrelation of the probability vector.
inline HammingProfile profile(const PureState& psi, BasisAxis axis = BasisAxis::Z) {
  require(psi.local_dim() == 2, ErrorKind::Unsupported, "Hamming profiles are defined for qubits");
  require(psi.sites() <= 24, ErrorKind::Unsupported, "Hamming profiles limited to n <= 24");
  const PureState rotated = change_basis(psi, axis);
  const int n = psi.sites();
  const auto& basis = rotated.basis();
  std::vector<double> p(basis.register_dim(), 0.0);
  const auto amps = rotated.amplitudes();
  for (Index i = 0; i < amps.size(); ++i) p[basis.unrank(i)] = std::norm(amps[i]);
  const auto c = xor_autocorrelation(std::move(p));

  HammingProfile h;
  h.basis_label = std::string(1, axis_name(axis));
  h.sites = n;
  h.basis_dim = basis.dim();
  h.n_f.assign(static_cast<std::size_t>(n + 1), 0);
  h.A_f.assign(static_cast<std::size_t>(n + 1), 0.0);
  h.w_f.assign(static_cast<std::size_t>(n + 1), 0.0);
  std::vector<double> bucket(static_cast<std::size_t>(n + 1), 0.0);
  for (Index m = 1; m < c.size(); ++m) bucket[static_cast<std::size_t>(std::popcount(m))] += c[m];
  for (int f = 1; f <= n; ++f) {
    const auto nf = sector_pair_count_by_distance(basis, f);
    h.n_f[static_cast<std::size_t>(f)] = nf;
    if (nf > 0) h.A_f[static_cast<std::size_t>(f)] = 0.5 * bucket[static_cast<std::size_t>(f)] / static_cast<double>(nf);
  }
  const auto N = static_cast<double>(basis.dim());
  h.ipr = ipr(rotated);
  h.A_bar = (1.0 - h.ipr) / (N * (N - 1.0));
  h.degenerate = (1.0 - h.ipr) < kDegenerateProfile;
  if (!h.degenerate)
    for (int f = 1; f <= n; ++f) h.w_f[static_cast<std::size_t>(f)] = h.A_f[static_cast<std::size_t>(f)] / h.A_bar;
  return h;
}

/// Predicted P_loc when A_f does not depend on f in any of the three bases.
inline double uncorrelated_prediction(double npc_x, double npc_y, double npc_z, double N) {
  require(N >= 2, ErrorKind::InvalidArgument, "uncorrelated_prediction needs N >= 2");
  return N / (N - 1.0) * (1.0 / npc_x + 1.0 / npc_y + 1.0 / npc_z) - 3.0 / (N - 1.0);
}

/// Same prediction restricted to the zero-magnetization sector of dimension N0.
inline double sector_prediction_sz0(double npc_z, double n0) {
  require(n0 >= 2, ErrorKind::InvalidArgument, "sector_prediction_sz0 needs N0 >= 2");
  return n0 / (n0 - 1.0) / npc_z - 1.0 / (n0 - 1.0);
}

/// Exact P_loc of a single-excitation state (every pair at distance 2).
inline double single_excitation_relation(double npc_z, int n) {
  require(n >= 1, ErrorKind::InvalidArgument, "single_excitation_relation needs n >= 1");
  return (4.0 / n) / npc_z + (n - 4.0) / n;
}

struct Z2Check {
  bool symmetric = false;
  int parity = 0;  // +1 or -1 when symmetric
  double max_transverse = 0.0;
};

/// Whether psi is an eigenvector of the global sigma_z parity; for symmetric
/// states every <sigma_x^(i)>, <sigma_y^(i)> must vanish.
inline Z2Check z2_symmetry_check(const PureState& psi, double tolerance = 1e-9) {
  require(psi.local_dim() == 2, ErrorKind::Unsupported, "parity check needs qubits");
  const auto& basis = psi.basis();
  double odd = 0.0, even = 0.0;
  for (Index i = 0; i < psi.dim(); ++i) (std::popcount(basis.unrank(i)) & 1 ? odd : even) += std::norm(psi[i]);
  // |(P - lambda) psi| = 2 sqrt(weight of the other parity)
  Z2Check out;
  if (2.0 * std::sqrt(odd) < tolerance) {
    out.symmetric = true;
    out.parity = 1;
  } else if (2.0 * std::sqrt(even) < tolerance) {
    out.symmetric = true;
    out.parity = -1;
  }
  for (const auto& r : bloch_vectors(psi)) out.max_transverse = std::max({out.max_transverse, std::abs(r[0]), std::abs(r[1])});
  if (out.symmetric)
    require(out.max_transverse < tolerance, ErrorKind::Numerical,
            "parity eigenstate with nonzero transverse expectation " + std::to_string(out.max_transverse));
  return out;
}

}  // namespace genent
