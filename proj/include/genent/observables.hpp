#pragma once

// Structured traceless Hermitian operators and the observable sets built from
// them. Every built-in operator is normalized to tr(b^2) = N on its register
// and is either purely real or purely imaginary in the computational basis.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "genent/basis.hpp"
#include "genent/error.hpp"
#include "genent/state.hpp"

namespace genent {

/// coeff * (tensor product of I, X, Y, Z). A site carrying Y has both its
/// x and z bits set.
struct PauliString {
  Bits x_mask = 0;
  Bits z_mask = 0;
  int sites = 0;
  double coeff = 1.0;

  int y_count() const { return std::popcount(x_mask & z_mask); }
  int weight() const { return std::popcount(x_mask | z_mask); }
  bool is_identity() const { return (x_mask | z_mask) == 0; }
  bool is_real() const { return y_count() % 2 == 0; }

  /// Phase i^{#y} (-1)^{|k & z|} picked up when acting on |k>.
  Complex phase(Bits k) const {
    static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Complex p = kIPow[y_count() & 3] * coeff;
    return (std::popcount(k & z_mask) & 1) ? -p : p;
  }

  static PauliString parse(std::string_view text, double coeff = 1.0) {
    require(!text.empty() && text.size() <= 62, ErrorKind::InvalidArgument, "Pauli string length must be 1..62");
    PauliString p;
    p.sites = static_cast<int>(text.size());
    p.coeff = coeff;
    for (int s = 0; s < p.sites; ++s) {
      const Bits bit = Bits{1} << site_bit(p.sites, s);
      switch (text[static_cast<std::size_t>(s)]) {
        case 'I': case 'i': break;
        case 'X': case 'x': p.x_mask |= bit; break;
        case 'Y': case 'y': p.x_mask |= bit; p.z_mask |= bit; break;
        case 'Z': case 'z': p.z_mask |= bit; break;
        default: fail(ErrorKind::InvalidArgument, "invalid Pauli letter in '" + std::string(text) + "'");
      }
    }
    return p;
  }

  std::string str() const {
    std::string s(static_cast<std::size_t>(sites), 'I');
    for (int i = 0; i < sites; ++i) {
      const Bits bit = Bits{1} << site_bit(sites, i);
      const bool x = x_mask & bit, z = z_mask & bit;
      s[static_cast<std::size_t>(i)] = x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
    }
    return s;
  }

  /// Single-site Pauli; `axis` is 'X', 'Y' or 'Z'.
  static PauliString single(int n, int site, char axis) {
    std::string s(static_cast<std::size_t>(n), 'I');
    s[static_cast<std::size_t>(site)] = axis;
    return parse(s);
  }
};

/// Real diagonal operator given by its entries on the register.
struct DiagonalReal {
  std::vector<double> entries;
};

/// Scaled spin-J angular momentum component; basis index k carries m = J - k.
struct SpinComponent {
  BasisAxis axis = BasisAxis::Z;
  int two_j = 1;
  double scale = 1.0;

  double j() const { return two_j / 2.0; }
  int dim() const { return two_j + 1; }
};

/// Generalized Gell-Mann matrix on a `dim`-dimensional tensor factor:
/// register index = (l * dim + s) * right + r.
struct GellMann {
  enum class Kind { Sym, Antisym, Diag };
  Index left = 1;
  Index dim = 2;
  Index right = 1;
  Kind kind = Kind::Diag;
  Index j = 0;  // Sym/Antisym: row pair j < k; Diag: level l = j in 1..dim-1
  Index k = 0;
  double scale = 1.0;

  /// Entry (s, s) of a Diag generator before scaling.
  double diag_entry(Index s) const {
    const auto l = static_cast<double>(j);
    const double norm = std::sqrt(2.0 / (l * (l + 1.0)));
    if (s < j) return norm;
    if (s == j) return -l * norm;
    return 0.0;
  }
};

using Operator = std::variant<PauliString, DiagonalReal, SpinComponent, GellMann>;

inline Index operator_dim(const Operator& op) {
  return std::visit(
      [](const auto& o) -> Index {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, PauliString>) return Index{1} << o.sites;
        else if constexpr (std::is_same_v<T, DiagonalReal>) return o.entries.size();
        else if constexpr (std::is_same_v<T, SpinComponent>) return static_cast<Index>(o.dim());
        else return o.left * o.dim * o.right;
      },
      op);
}

/// True when the operator has real matrix elements in the computational basis.
inline bool is_real_operator(const Operator& op) {
  return std::visit(
      [](const auto& o) -> bool {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, PauliString>) return o.is_real();
        else if constexpr (std::is_same_v<T, DiagonalReal>) return true;
        else if constexpr (std::is_same_v<T, SpinComponent>) return o.axis != BasisAxis::Y;
        else return o.kind != GellMann::Kind::Antisym;
      },
      op);
}

/// Calls fn(row, value) for every nonzero entry in column `col`.
template <class Fn>
void for_each_column_entry(const Operator& op, Index col, Fn&& fn) {
  std::visit(
      [&](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, PauliString>) {
          fn(static_cast<Index>(col ^ o.x_mask), o.phase(col));
        } else if constexpr (std::is_same_v<T, DiagonalReal>) {
          if (o.entries[col] != 0.0) fn(col, Complex(o.entries[col]));
        } else if constexpr (std::is_same_v<T, SpinComponent>) {
          const double jj = o.j();
          const double m = jj - static_cast<double>(col);
          if (o.axis == BasisAxis::Z) {
            if (m != 0.0) fn(col, Complex(o.scale * m));
            return;
          }
          // J+ |m> raises m, i.e. lowers the index.
          const double up = std::sqrt(jj * (jj + 1) - m * (m + 1));
          const double down = std::sqrt(jj * (jj + 1) - m * (m - 1));
          const Complex cu = o.axis == BasisAxis::X ? Complex(0.5 * up) : Complex(0, -0.5 * up);
          const Complex cd = o.axis == BasisAxis::X ? Complex(0.5 * down) : Complex(0, 0.5 * down);
          if (col > 0 && up != 0.0) fn(col - 1, o.scale * cu);
          if (col + 1 < static_cast<Index>(o.dim()) && down != 0.0) fn(col + 1, o.scale * cd);
        } else {
          const Index r = col % o.right;
          const Index s = (col / o.right) % o.dim;
          const Index l = col / (o.right * o.dim);
          auto at = [&](Index t) { return (l * o.dim + t) * o.right + r; };
          switch (o.kind) {
            case GellMann::Kind::Sym:
              if (s == o.j) fn(at(o.k), Complex(o.scale));
              else if (s == o.k) fn(at(o.j), Complex(o.scale));
              break;
            case GellMann::Kind::Antisym:
              // -i|j><k| + i|k><j|
              if (s == o.k) fn(at(o.j), Complex(0, -o.scale));
              else if (s == o.j) fn(at(o.k), Complex(0, o.scale));
              break;
            case GellMann::Kind::Diag: {
              const double v = o.diag_entry(s);
              if (v != 0.0) fn(col, Complex(o.scale * v));
              break;
            }
          }
        }
      },
      op);
}

inline Eigen::MatrixXcd to_dense(const Operator& op) {
  const Index n = operator_dim(op);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Index c = 0; c < n; ++c)
    for_each_column_entry(op, c, [&](Index r, Complex v) { m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) += v; });
  return m;
}

inline std::string describe(const Operator& op) {
  return std::visit(
      [](const auto& o) -> std::string {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, PauliString>) return o.str();
        else if constexpr (std::is_same_v<T, DiagonalReal>) return "diag[" + std::to_string(o.entries.size()) + "]";
        else if constexpr (std::is_same_v<T, SpinComponent>) return std::string("J") + axis_name(o.axis);
        else {
          const char* k = o.kind == GellMann::Kind::Sym ? "sym" : o.kind == GellMann::Kind::Antisym ? "asym" : "diag";
          return std::string("gm_") + k + "(" + std::to_string(o.j) + "," + std::to_string(o.k) + ")";
        }
      },
      op);
}

// ---------------------------------------------------------------------------
// Expectation values

/// <psi|op|psi>; Pauli strings act directly on sector amplitudes, other
/// operators on the zero-padded register vector.
inline double expectation(const PureState& psi, const Operator& op) {
  const auto& basis = psi.basis();
  require(operator_dim(op) == basis.register_dim(), ErrorKind::DimensionMismatch,
          "operator dimension does not match the state's register");
  const auto a = psi.amplitudes();
  if (const auto* p = std::get_if<PauliString>(&op)) {
    Complex acc = 0.0;
    if (basis.is_full()) {
      for (Index k = 0; k < a.size(); ++k) {
        if (a[k] == Complex{}) continue;
        acc += std::conj(a[k ^ p->x_mask]) * p->phase(k) * a[k];
      }
    } else {
      for (Index i = 0; i < a.size(); ++i) {
        if (a[i] == Complex{}) continue;
        const Bits k = basis.unrank(i);
        const std::int64_t j = basis.find(k ^ p->x_mask);
        if (j < 0) continue;
        acc += std::conj(a[static_cast<Index>(j)]) * p->phase(k) * a[i];
      }
    }
    return acc.real();
  }
  const Amplitudes reg = basis.is_full() ? Amplitudes() : psi.register_amplitudes();
  const std::span<const Complex> v = basis.is_full() ? a : std::span<const Complex>(reg);
  Complex acc = 0.0;
  if (const auto* g = std::get_if<GellMann>(&op)) {
    // Visit only the columns the generator touches.
    auto column = [&](Index col) {
      for_each_column_entry(op, col, [&](Index row, Complex val) { acc += std::conj(v[row]) * val * v[col]; });
    };
    for (Index l = 0; l < g->left; ++l) {
      for (Index r = 0; r < g->right; ++r) {
        const Index base = l * g->dim * g->right + r;
        if (g->kind == GellMann::Kind::Diag) {
          for (Index s = 0; s <= g->j; ++s) column(base + s * g->right);
        } else {
          column(base + g->j * g->right);
          column(base + g->k * g->right);
        }
      }
    }
    return acc.real();
  }
  for (Index c = 0; c < v.size(); ++c) {
    if (v[c] == Complex{}) continue;
    for_each_column_entry(op, c, [&](Index row, Complex val) { acc += std::conj(v[row]) * val * v[c]; });
  }
  return acc.real();
}

// ---------------------------------------------------------------------------
// Observable sets

struct ObservableSet {
  std::string label;
  std::vector<Operator> ops;
  double kappa = 1.0;
  Index hilbert_dim = 0;
  int sites = 0;      // 0 when the register has no tensor structure
  int local_dim = 0;  // 0 when not a uniform product register

  std::size_t dim_h() const { return ops.size(); }
  bool is_real() const {
    return std::all_of(ops.begin(), ops.end(), [](const Operator& o) { return is_real_operator(o); });
  }
};

/// Generalized Gell-Mann basis of a dim-`d` factor embedded in left x d x right,
/// scaled so that tr(b^2) equals the register dimension.
inline void append_gell_mann(std::vector<Operator>& ops, Index left, Index d, Index right) {
  const double scale = std::sqrt(static_cast<double>(d) / 2.0);
  for (Index j = 0; j < d; ++j)
    for (Index k = j + 1; k < d; ++k) {
      ops.emplace_back(GellMann{left, d, right, GellMann::Kind::Sym, j, k, scale});
      ops.emplace_back(GellMann{left, d, right, GellMann::Kind::Antisym, j, k, scale});
    }
  for (Index l = 1; l < d; ++l) ops.emplace_back(GellMann{left, d, right, GellMann::Kind::Diag, l, 0, scale});
}

/// Every traceless observable on an N-dimensional space.
inline ObservableSet all_observables(Index N) {
  require(N >= 2, ErrorKind::InvalidArgument, "all_observables needs N >= 2");
  ObservableSet h{"all", {}, 1.0 / static_cast<double>(N - 1), N, 0, 0};
  h.ops.reserve(N * N - 1);
  append_gell_mann(h.ops, 1, N, 1);
  return h;
}

/// Observables of subsystem A in a d_A x d_B split.
inline ObservableSet unilocal(Index d_a, Index d_b) {
  require(d_a >= 2 && d_b >= 1, ErrorKind::InvalidArgument, "unilocal needs d_A >= 2, d_B >= 1");
  ObservableSet h{"unilocal", {}, 1.0 / static_cast<double>(d_a - 1), d_a * d_b, 0, 0};
  append_gell_mann(h.ops, 1, d_a, d_b);
  return h;
}

/// All single-qubit Pauli operators, ordered site by site as X, Y, Z.
inline ObservableSet local_qubits(int n) {
  require(n >= 1 && n <= 30, ErrorKind::InvalidArgument, "local_qubits needs 1 <= n <= 30");
  ObservableSet h{"local", {}, 1.0 / n, Index{1} << n, n, 2};
  for (int s = 0; s < n; ++s)
    for (char a : {'X', 'Y', 'Z'}) h.ops.emplace_back(PauliString::single(n, s, a));
  return h;
}

inline ObservableSet local_qudits(int n, int d) {
  if (d == 2) {
    auto h = local_qubits(n);
    h.label = "local_qudits";
    return h;
  }
  require(n >= 1 && d >= 2, ErrorKind::InvalidArgument, "local_qudits needs n >= 1, d >= 2");
  const Index N = ipow(static_cast<std::uint64_t>(d), n);
  ObservableSet h{"local_qudits", {}, 1.0 / (n * (d - 1.0)), N, n, d};
  for (int s = 0; s < n; ++s) append_gell_mann(h.ops, ipow(d, s), static_cast<Index>(d), ipow(d, n - 1 - s));
  return h;
}

/// Traceless diagonal operators in the computational basis. With tr(b^2) = N
/// the maximum purity is reached at kappa = 1/(N-1).
inline ObservableSet diagonal_algebra(Index N) {
  require(N >= 2, ErrorKind::InvalidArgument, "diagonal_algebra needs N >= 2");
  ObservableSet h{"diag", {}, 1.0 / static_cast<double>(N - 1), N, 0, 0};
  const double scale = std::sqrt(static_cast<double>(N) / 2.0);
  for (Index l = 1; l < N; ++l) h.ops.emplace_back(GellMann{1, N, 1, GellMann::Kind::Diag, l, 0, scale});
  return h;
}

/// su(2) generators for spin J = two_j / 2, b = sqrt(3 / (J(J+1))) J_l.
inline ObservableSet spin_j(int two_j) {
  require(two_j >= 1, ErrorKind::InvalidArgument, "spin_j needs J >= 1/2");
  const double J = two_j / 2.0;
  const double scale = std::sqrt(3.0 / (J * (J + 1.0)));
  ObservableSet h{"spinJ", {}, (J + 1.0) / (3.0 * J), static_cast<Index>(two_j + 1), 0, 0};
  for (BasisAxis a : {BasisAxis::X, BasisAxis::Y, BasisAxis::Z}) h.ops.emplace_back(SpinComponent{a, two_j, scale});
  return h;
}

/// All nontrivial Pauli strings supported inside each block of sites. Kappa
/// makes a product of pure block states reach 1.
inline ObservableSet q_block(int n, const std::vector<std::vector<int>>& blocks) {
  require(n >= 1 && n <= 30, ErrorKind::InvalidArgument, "q_block needs 1 <= n <= 30");
  require(!blocks.empty(), ErrorKind::InvalidArgument, "q_block needs at least one block");
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  ObservableSet h{"q_block", {}, 1.0, Index{1} << n, n, 2};
  double count = 0.0;
  for (const auto& b : blocks) {
    require(!b.empty() && b.size() <= 10, ErrorKind::InvalidArgument, "q_block: block size must be 1..10");
    for (int s : b) {
      require(s >= 0 && s < n, ErrorKind::InvalidArgument, "q_block: site out of range");
      require(!used[static_cast<std::size_t>(s)], ErrorKind::InvalidArgument, "q_block: blocks must be disjoint");
      used[static_cast<std::size_t>(s)] = true;
    }
    const auto q = b.size();
    const Index combos = Index{1} << (2 * q);
    for (Index c = 1; c < combos; ++c) {
      PauliString p;
      p.sites = n;
      for (std::size_t i = 0; i < q; ++i) {
        const Bits bit = Bits{1} << site_bit(n, b[i]);
        const auto letter = (c >> (2 * i)) & 3U;  // 0 I, 1 X, 2 Z, 3 Y
        if (letter & 1U) p.x_mask |= bit;
        if (letter & 2U) p.z_mask |= bit;
      }
      h.ops.emplace_back(p);
    }
    count += static_cast<double>((Index{1} << q) - 1);
  }
  h.kappa = 1.0 / count;
  return h;
}

/// Adjacent pairs (0,1), (2,3), ...; n must be even.
inline ObservableSet pairwise_blocks(int n) {
  require(n >= 2 && n % 2 == 0, ErrorKind::InvalidArgument, "pairwise blocks need even n");
  std::vector<std::vector<int>> blocks;
  for (int s = 0; s < n; s += 2) blocks.push_back({s, s + 1});
  auto h = q_block(n, blocks);
  h.label = "bilocal";
  return h;
}

/// Pauli-string set from a user list; enforces the orthonormality contract.
inline ObservableSet pauli_set(std::string label, const std::vector<std::pair<std::string, double>>& strings,
                               std::optional<double> kappa = std::nullopt) {
  require(!strings.empty(), ErrorKind::InvalidArgument, "observable set is empty");
  ObservableSet h;
  h.label = std::move(label);
  std::set<std::pair<Bits, Bits>> seen;
  for (const auto& [text, coeff] : strings) {
    auto p = PauliString::parse(text, coeff);
    if (h.sites == 0) h.sites = p.sites;
    require(p.sites == h.sites, ErrorKind::DimensionMismatch, "Pauli strings differ in length");
    require(!p.is_identity(), ErrorKind::InvalidArgument, "identity is not traceless: '" + text + "'");
    require(std::abs(std::abs(coeff) - 1.0) <= 1e-12, ErrorKind::InvalidArgument,
            "Pauli coefficient must be +-1 for tr(b^2) = N: '" + text + "'");
    require(seen.insert({p.x_mask, p.z_mask}).second, ErrorKind::InvalidArgument,
            "duplicate Pauli string breaks orthogonality: '" + text + "'");
    h.ops.emplace_back(p);
  }
  h.local_dim = 2;
  h.hilbert_dim = Index{1} << h.sites;
  h.kappa = kappa.value_or(1.0 / static_cast<double>(h.ops.size()));
  require(h.kappa > 0.0, ErrorKind::InvalidArgument, "kappa must be positive");
  return h;
}

}  // namespace genent
