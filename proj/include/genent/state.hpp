#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "genent/basis.hpp"
#include "genent/error.hpp"
#include "genent/rng.hpp"

namespace genent {

using Complex = std::complex<double>;
using Amplitudes = std::vector<Complex>;

inline constexpr double kNormTolerance = 1e-12;

/// Normalized pure state over a product basis or an S_z sector of one.
class PureState {
 public:
  PureState(BasisPtr basis, Amplitudes amps, double tolerance = kNormTolerance)
      : basis_(std::move(basis)), amps_(std::move(amps)) {
    require(basis_ != nullptr, ErrorKind::InvalidArgument, "state without basis");
    require(amps_.size() == basis_->dim(), ErrorKind::DimensionMismatch,
            "state has " + std::to_string(amps_.size()) + " amplitudes for basis of dim " +
                std::to_string(basis_->dim()));
    const double norm2 = squared_norm(amps_);
    require(std::abs(norm2 - 1.0) <= tolerance, ErrorKind::Normalization,
            "state is not normalized (|psi|^2 = " + std::to_string(norm2) + ")");
  }

  /// Rescales `amps` to unit norm first.
  static PureState normalized(BasisPtr basis, Amplitudes amps) {
    const double norm2 = squared_norm(amps);
    require(norm2 > 0.0 && std::isfinite(norm2), ErrorKind::Normalization, "cannot normalize a zero vector");
    const double s = 1.0 / std::sqrt(norm2);
    for (auto& a : amps) a *= s;
    return PureState(std::move(basis), std::move(amps));
  }

  static PureState basis_state(BasisPtr basis, Index i) {
    Amplitudes a(basis->dim());
    require(i < a.size(), ErrorKind::InvalidArgument, "basis_state: index out of range");
    a[i] = 1.0;
    return PureState(std::move(basis), std::move(a));
  }

  const SectorBasis& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const { return basis_; }
  std::span<const Complex> amplitudes() const { return amps_; }
  Index dim() const { return amps_.size(); }
  int sites() const { return basis_->sites(); }
  int local_dim() const { return basis_->local_dim(); }
  const Complex& operator[](Index i) const { return amps_[i]; }

  bool is_real(double tolerance = 0.0) const {
    return std::all_of(amps_.begin(), amps_.end(), [&](const Complex& a) { return std::abs(a.imag()) <= tolerance; });
  }

  std::vector<double> probabilities() const {
    std::vector<double> p(amps_.size());
    for (Index i = 0; i < p.size(); ++i) p[i] = std::norm(amps_[i]);
    return p;
  }

  /// Amplitudes over the whole register (sector states are zero-padded).
  Amplitudes register_amplitudes() const {
    if (basis_->is_full()) return amps_;
    Amplitudes full(basis_->register_dim());
    for (Index i = 0; i < amps_.size(); ++i) full[basis_->unrank(i)] = amps_[i];
    return full;
  }

  static double squared_norm(std::span<const Complex> a) {
    double s = 0.0;
    for (const auto& x : a) s += std::norm(x);
    return s;
  }

 private:
  BasisPtr basis_;
  Amplitudes amps_;
};

// ---------------------------------------------------------------------------
// Named states

inline PureState product_state(std::string_view digits, int d = 2) {
  const auto s = OccupationString::parse(digits, d);
  return PureState::basis_state(make_full_basis(s.size(), d), static_cast<Index>(s.packed()));
}

inline PureState ghz_state(int n) {
  auto basis = make_full_basis(n);
  Amplitudes a(basis->dim());
  a.front() = a.back() = 1.0 / std::numbers::sqrt2;
  return PureState(basis, std::move(a));
}

inline PureState bell_state() { return ghz_state(2); }

/// Uniform superposition of the single-excitation strings.
inline PureState w_state(int n) {
  auto basis = make_full_basis(n);
  Amplitudes a(basis->dim());
  for (int s = 0; s < n; ++s) a[Bits{1} << site_bit(n, s)] = 1.0 / std::sqrt(static_cast<double>(n));
  return PureState(basis, std::move(a));
}

// ---------------------------------------------------------------------------
// Site-local structure

/// Applies `m` to one site of a full-register amplitude vector:
/// a[L, s, R] <- sum_t m(s, t) a[L, t, R].
inline void apply_site_matrix(std::span<Complex> amps, int n, int d, int site, const Eigen::MatrixXcd& m) {
  const Index right = ipow(d, n - 1 - site);
  const Index left = ipow(d, site);
  const auto dd = static_cast<Index>(d);
  std::vector<Complex> in(dd), out(dd);
  for (Index l = 0; l < left; ++l) {
    for (Index r = 0; r < right; ++r) {
      const Index base = l * dd * right + r;
      for (Index t = 0; t < dd; ++t) in[t] = amps[base + t * right];
      for (Index s = 0; s < dd; ++s) {
        Complex acc = 0.0;
        for (Index t = 0; t < dd; ++t) acc += m(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t)) * in[t];
        out[s] = acc;
      }
      for (Index s = 0; s < dd; ++s) amps[base + s * right] = out[s];
    }
  }
}

/// Reduced density matrix of one site, rho(s, t) = sum a[.., s, ..] conj(a[.., t, ..]).
inline Eigen::MatrixXcd site_density_matrix(std::span<const Complex> amps, int n, int d, int site) {
  const Index right = ipow(d, n - 1 - site);
  const Index left = ipow(d, site);
  const auto dd = static_cast<Index>(d);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  for (Index l = 0; l < left; ++l) {
    for (Index r = 0; r < right; ++r) {
      const Index base = l * dd * right + r;
      for (Index s = 0; s < dd; ++s) {
        const Complex as = amps[base + s * right];
        if (as == Complex{}) continue;
        for (Index t = 0; t < dd; ++t)
          rho(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t)) += as * std::conj(amps[base + t * right]);
      }
    }
  }
  return rho;
}

inline std::vector<Eigen::MatrixXcd> site_density_matrices(const PureState& psi) {
  const auto full = psi.register_amplitudes();
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(static_cast<std::size_t>(psi.sites()));
  for (int s = 0; s < psi.sites(); ++s) out.push_back(site_density_matrix(full, psi.sites(), psi.local_dim(), s));
  return out;
}

using BlochVector = std::array<double, 3>;

/// (<sigma_x>, <sigma_y>, <sigma_z>) for every qubit.
inline std::vector<BlochVector> bloch_vectors(const PureState& psi) {
  require(psi.local_dim() == 2, ErrorKind::Unsupported, "Bloch vectors need qubits");
  const int n = psi.sites();
  std::vector<BlochVector> r(static_cast<std::size_t>(n), BlochVector{0.0, 0.0, 0.0});
  const auto& basis = psi.basis();
  const auto amps = psi.amplitudes();
  for (Index i = 0; i < amps.size(); ++i) {
    const double p = std::norm(amps[i]);
    if (p == 0.0) continue;
    const Bits k = basis.unrank(i);
    for (int s = 0; s < n; ++s) {
      const Bits bit = Bits{1} << site_bit(n, s);
      r[static_cast<std::size_t>(s)][2] += (k & bit) ? -p : p;
      if (k & bit) continue;
      // <sigma_x> + i<sigma_y> = 2 sum_{k: bit=0} conj(a_k) a_{k|bit}
      const std::int64_t j = basis.find(k | bit);
      if (j < 0) continue;
      const Complex c = 2.0 * std::conj(amps[i]) * amps[static_cast<Index>(j)];
      r[static_cast<std::size_t>(s)][0] += c.real();
      r[static_cast<std::size_t>(s)][1] += c.imag();
    }
  }
  return r;
}

enum class BasisAxis { X, Y, Z };

inline char axis_name(BasisAxis a) { return a == BasisAxis::X ? 'x' : a == BasisAxis::Y ? 'y' : 'z'; }

inline BasisAxis parse_axis(std::string_view s) {
  if (s == "x" || s == "X") return BasisAxis::X;
  if (s == "y" || s == "Y") return BasisAxis::Y;
  if (s == "z" || s == "Z") return BasisAxis::Z;
  fail(ErrorKind::InvalidArgument, "unknown basis axis '" + std::string(s) + "'");
}

/// Per-site product basis. Column v of site_bases[i] is the new basis vector
/// labelled by digit v, expressed in the computational basis of site i.
struct LocalFrame {
  int local_dim = 2;
  std::vector<Eigen::MatrixXcd> site_bases;
  std::vector<BlochVector> axes;  // qubit frames only
  std::vector<bool> degenerate;

  int sites() const { return static_cast<int>(site_bases.size()); }
};

/// Eigenbasis of n.sigma: column 0 is the +1 eigenvector, column 1 the -1.
inline Eigen::Matrix2cd qubit_axis_basis(const BlochVector& axis) {
  const double theta = std::acos(std::clamp(axis[2], -1.0, 1.0));
  const double phi = std::atan2(axis[1], axis[0]);
  const Complex e(std::cos(phi), std::sin(phi));
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  Eigen::Matrix2cd v;
  v << c, -std::conj(e) * s, e * s, c;
  return v;
}

inline LocalFrame axis_frame(int n, BasisAxis axis) {
  const double h = 1.0 / std::numbers::sqrt2;
  Eigen::Matrix2cd v;
  BlochVector dir{};
  switch (axis) {
    case BasisAxis::X:
      v << h, h, h, -h;
      dir = {1.0, 0.0, 0.0};
      break;
    case BasisAxis::Y:
      v << h, h, Complex(0, h), Complex(0, -h);
      dir = {0.0, 1.0, 0.0};
      break;
    case BasisAxis::Z:
      v = Eigen::Matrix2cd::Identity();
      dir = {0.0, 0.0, 1.0};
      break;
  }
  LocalFrame f;
  f.site_bases.assign(static_cast<std::size_t>(n), v);
  f.axes.assign(static_cast<std::size_t>(n), dir);
  f.degenerate.assign(static_cast<std::size_t>(n), false);
  return f;
}

inline constexpr double kDegenerateBloch = 1e-10;

/// Product basis in which every single-site reduced density matrix is diagonal.
/// Qubit axes follow the Bloch vector; maximally mixed sites default to +z and
/// are flagged. Qudit sites use the eigenvectors of rho_i, largest first.
inline LocalFrame canonical_frame(const PureState& psi) {
  require(psi.basis().is_full(), ErrorKind::Unsupported, "canonical_frame needs a full product basis");
  const int n = psi.sites();
  LocalFrame f;
  f.local_dim = psi.local_dim();
  if (psi.local_dim() == 2) {
    for (const auto& r : bloch_vectors(psi)) {
      const double len = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
      const bool flat = len < kDegenerateBloch;
      const BlochVector axis = flat ? BlochVector{0.0, 0.0, 1.0} : BlochVector{r[0] / len, r[1] / len, r[2] / len};
      f.axes.push_back(axis);
      f.degenerate.push_back(flat);
      f.site_bases.emplace_back(qubit_axis_basis(axis));
    }
    return f;
  }
  const auto amps = psi.amplitudes();
  for (int s = 0; s < n; ++s) {
    const Eigen::MatrixXcd rho = site_density_matrix(amps, n, psi.local_dim(), s);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    require(es.info() == Eigen::Success, ErrorKind::Numerical, "canonical_frame: eigensolver failed");
    const Eigen::MatrixXcd v = es.eigenvectors().rowwise().reverse();
    const Eigen::VectorXd w = es.eigenvalues().reverse();
    bool flat = false;
    for (Eigen::Index i = 0; i + 1 < w.size(); ++i) flat = flat || (w(i) - w(i + 1)) < kDegenerateBloch;
    f.site_bases.push_back(v);
    f.degenerate.push_back(flat);
  }
  return f;
}

/// Amplitudes in the rotated product basis, one d x d transform per site.
inline PureState change_basis(const PureState& psi, const LocalFrame& frame) {
  require(psi.basis().is_full(), ErrorKind::Unsupported,
          "change_basis: sector states cannot be rotated out of their sector");
  require(frame.sites() == psi.sites(), ErrorKind::DimensionMismatch, "change_basis: frame size mismatch");
  Amplitudes a(psi.amplitudes().begin(), psi.amplitudes().end());
  for (int s = 0; s < psi.sites(); ++s) {
    const auto& v = frame.site_bases[static_cast<std::size_t>(s)];
    require(v.rows() == psi.local_dim() && v.cols() == psi.local_dim(), ErrorKind::DimensionMismatch,
            "change_basis: site matrix has wrong size");
    apply_site_matrix(a, psi.sites(), psi.local_dim(), s, v.adjoint());
  }
  return PureState(psi.basis_ptr(), std::move(a), 1e-10);
}

inline PureState change_basis(const PureState& psi, BasisAxis axis) {
  if (axis == BasisAxis::Z) return psi;
  require(psi.basis().is_full(), ErrorKind::Unsupported,
          "change_basis: x/y bases leave the S_z sector");
  require(psi.local_dim() == 2, ErrorKind::Unsupported, "x/y bases are defined for qubits");
  return change_basis(psi, axis_frame(psi.sites(), axis));
}

// ---------------------------------------------------------------------------
// Random ensembles

enum class EnsembleKind { HaarComplex, HaarReal, HaarComplexSector, HaarRealSector, ShuffledProbabilities };

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::HaarComplex;
  BasisPtr basis;
  std::uint64_t seed = 0;
  std::vector<double> probabilities;  // ShuffledProbabilities only

  Index dim() const { return basis ? basis->dim() : 0; }

  void validate() const {
    require(basis != nullptr, ErrorKind::InvalidArgument, "ensemble without basis");
    const bool sector_kind = kind == EnsembleKind::HaarComplexSector || kind == EnsembleKind::HaarRealSector;
    require(!sector_kind || !basis->is_full(), ErrorKind::InvalidArgument, "sector ensemble needs a sector basis");
    require(sector_kind || kind == EnsembleKind::ShuffledProbabilities || basis->is_full(), ErrorKind::InvalidArgument,
            "Haar ensemble over the full space needs a full basis");
    if (kind == EnsembleKind::ShuffledProbabilities) {
      require(probabilities.size() == basis->dim(), ErrorKind::DimensionMismatch,
              "shuffled ensemble: one probability per basis state required");
      double total = 0.0;
      for (double p : probabilities) {
        require(p >= 0.0, ErrorKind::InvalidArgument, "shuffled ensemble: negative probability");
        total += p;
      }
      require(std::abs(total - 1.0) <= 1e-12, ErrorKind::InvalidArgument, "shuffled ensemble: probabilities must sum to 1");
    }
  }

  bool is_real() const { return kind == EnsembleKind::HaarReal || kind == EnsembleKind::HaarRealSector; }
};

/// Draws member `index` of the ensemble; a pure function of (spec, index).
inline PureState sample(const EnsembleSpec& spec, std::uint64_t index) {
  spec.validate();
  RandomStream rng = RandomStream(spec.seed).substream(index);
  const Index dim = spec.dim();
  Amplitudes a(dim);
  if (spec.kind == EnsembleKind::ShuffledProbabilities) {
    std::vector<double> p = spec.probabilities;
    rng.shuffle(std::span<double>(p));
    for (Index i = 0; i < dim; ++i) {
      const double phase = 2.0 * std::numbers::pi * rng.uniform();
      a[i] = std::sqrt(p[i]) * Complex(std::cos(phase), std::sin(phase));
    }
    return PureState::normalized(spec.basis, std::move(a));
  }
  const bool real = spec.is_real();
  for (;;) {
    for (Index i = 0; i < dim; ++i) a[i] = real ? Complex(rng.normal(), 0.0) : Complex(rng.normal(), rng.normal());
    if (PureState::squared_norm(a) > 0.0) break;
  }
  return PureState::normalized(spec.basis, std::move(a));
}

}  // namespace genent
