#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "genent/basis.hpp"
#include "genent/error.hpp"
#include "genent/observables.hpp"
#include "genent/state.hpp"

namespace genent {

/// kappa_h * sum_i <psi|b_i|psi>^2.
inline double purity(const PureState& psi, const ObservableSet& h) {
  require(h.hilbert_dim == psi.basis().register_dim(), ErrorKind::DimensionMismatch,
          "observable set '" + h.label + "' has dimension " + std::to_string(h.hilbert_dim) +
              ", state register has " + std::to_string(psi.basis().register_dim()));
  double s = 0.0;
  for (const auto& op : h.ops) {
    const double e = expectation(psi, op);
    s += e * e;
  }
  return h.kappa * s;
}

/// Purity relative to every observable on the register; 1 for any pure state.
inline double purity_all(const PureState& psi) { return purity(psi, all_observables(psi.basis().register_dim())); }

/// 1 - P_{h_A} = d_A/(d_A - 1) (1 - tr rho_A^2) from the d_A x d_B reshaped amplitudes.
inline double bipartite_ge(const PureState& psi, Index d_a, Index d_b) {
  const Index N = psi.basis().register_dim();
  require(d_a >= 2 && d_b >= 1 && d_a * d_b == N, ErrorKind::DimensionMismatch,
          "bipartite_ge: d_A * d_B must equal the register dimension");
  const auto full = psi.register_amplitudes();
  const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      full.data(), static_cast<Eigen::Index>(d_a), static_cast<Eigen::Index>(d_b));
  const Eigen::MatrixXcd rho = m * m.adjoint();
  const double tr2 = rho.squaredNorm();
  const auto da = static_cast<double>(d_a);
  return da / (da - 1.0) * (1.0 - tr2);
}

inline double ipr(std::span<const Complex> amps) {
  double s = 0.0;
  for (const auto& a : amps) {
    const double p = std::norm(a);
    s += p * p;
  }
  return s;
}

inline double ipr(const PureState& psi) { return ipr(psi.amplitudes()); }

/// Number of principal components, 1 / sum_k |a_k|^4.
inline double npc(const PureState& psi) { return 1.0 / ipr(psi); }

/// Purity relative to the diagonal algebra of the state's own basis:
/// N/(N-1) IPR - 1/(N-1).
inline double purity_diagonal(const PureState& psi) {
  const auto N = static_cast<double>(psi.dim());
  require(psi.dim() >= 2, ErrorKind::InvalidArgument, "purity_diagonal needs N >= 2");
  return N / (N - 1.0) * ipr(psi) - 1.0 / (N - 1.0);
}

struct LocalPurities {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double loc = 0.0;
};

/// P_alpha = (1/n) sum_i <sigma_alpha^(i)>^2 and their sum P_loc.
inline LocalPurities local_purity_mub(const PureState& psi) {
  const auto r = bloch_vectors(psi);
  LocalPurities p;
  for (const auto& v : r) {
    p.x += v[0] * v[0];
    p.y += v[1] * v[1];
    p.z += v[2] * v[2];
  }
  const double n = static_cast<double>(r.size());
  p.x /= n;
  p.y /= n;
  p.z /= n;
  p.loc = p.x + p.y + p.z;
  return p;
}

/// Sum over unordered pairs of basis labels of f_{kk'} p_k p_{k'}, by direct
/// pair enumeration. Labels are taken from the state's basis.
inline double hamming_pair_sum(const PureState& psi) {
  const auto& basis = psi.basis();
  const int n = psi.sites(), d = psi.local_dim();
  require(psi.dim() <= (Index{1} << 16), ErrorKind::Unsupported, "direct pair sum limited to 2^16 basis states");
  const auto p = psi.probabilities();
  std::vector<Bits> label(p.size());
  for (Index i = 0; i < p.size(); ++i) label[i] = basis.unrank(i);
  double total = 0.0;
  for (Index i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    double row = 0.0;
    for (Index j = i + 1; j < p.size(); ++j) row += hamming_packed(label[i], label[j], n, d) * p[j];
    total += p[i] * row;
  }
  return total;
}

/// 1 - (2d/(n(d-1))) sum_{k<k'} f_{kk'} p_k p_{k'} for amplitudes already in a
/// product basis with diagonal single-site marginals.
inline double qudit_hamming_purity(const PureState& psi) {
  const double n = psi.sites(), d = psi.local_dim();
  return 1.0 - (2.0 * d / (n * (d - 1.0))) * hamming_pair_sum(psi);
}

/// GE_loc as a two-copy Hamming-operator expectation in the given frame.
inline double ge_two_copy(const PureState& psi, const LocalFrame& frame) {
  const PureState rotated = change_basis(psi, frame);
  const double n = psi.sites(), d = psi.local_dim();
  return (2.0 * d / (n * (d - 1.0))) * hamming_pair_sum(rotated);
}

/// Site marginals of the computational-basis distribution: sum over sites of
/// sum_{k,k'} f_{kk'} p_k p_{k'} = sum_i (1 - sum_v p_i(v)^2), halved to count
/// unordered pairs.
inline double hamming_pair_sum_marginals(std::span<const Complex> amps, int n, int d) {
  const auto dd = static_cast<Index>(d);
  double total = 0.0;
  std::vector<double> marg(dd);
  for (int s = 0; s < n; ++s) {
    std::fill(marg.begin(), marg.end(), 0.0);
    const Index right = ipow(d, n - 1 - s);
    for (Index k = 0; k < amps.size(); ++k) marg[(k / right) % dd] += std::norm(amps[k]);
    double sq = 0.0;
    for (double m : marg) sq += m * m;
    total += 1.0 - sq;
  }
  return 0.5 * total;
}

inline bool is_prime(int d) {
  if (d < 2) return false;
  for (int q = 2; q * q <= d; ++q)
    if (d % q == 0) return false;
  return true;
}

/// Per-site bases of a complete set of d+1 mutually unbiased bases (columns
/// are basis vectors). d = 2 gives z, x, y; odd prime d gives the
/// computational basis plus omega^{k m^2 + j m} / sqrt(d), k = 0..d-1.
inline std::vector<Eigen::MatrixXcd> mub_site_bases(int d) {
  require(d == 2 || (is_prime(d) && d % 2 == 1), ErrorKind::Unsupported,
          "mutually unbiased product bases are supported for prime d only");
  std::vector<Eigen::MatrixXcd> out;
  if (d == 2) {
    for (BasisAxis a : {BasisAxis::Z, BasisAxis::X, BasisAxis::Y}) out.push_back(axis_frame(1, a).site_bases[0]);
    return out;
  }
  out.push_back(Eigen::MatrixXcd::Identity(d, d));
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int k = 0; k < d; ++k) {
    Eigen::MatrixXcd v(d, d);
    for (int m = 0; m < d; ++m)
      for (int j = 0; j < d; ++j) {
        const int e = (k * m * m + j * m) % d;
        const double t = 2.0 * std::numbers::pi * e / d;
        v(m, j) = norm * Complex(std::cos(t), std::sin(t));
      }
    out.push_back(v);
  }
  return out;
}

/// GE_loc = (2d/(n(d-1))) sum_alpha <F_alpha> - d over the d+1 product MUBs.
inline double mub_sum_form(const PureState& psi) {
  require(psi.basis().is_full(), ErrorKind::Unsupported, "mub_sum_form needs a full product basis");
  const int n = psi.sites(), d = psi.local_dim();
  double total = 0.0;
  for (const auto& v : mub_site_bases(d)) {
    LocalFrame f;
    f.local_dim = d;
    f.site_bases.assign(static_cast<std::size_t>(n), v);
    const PureState rotated = change_basis(psi, f);
    total += hamming_pair_sum_marginals(rotated.amplitudes(), n, d);
  }
  const double dn = n, dd = d;
  return (2.0 * dd / (dn * (dd - 1.0))) * total - dd;
}

}  // namespace genent
