#pragma once

// Product-basis bookkeeping: occupation strings, S_z sectors with
// combinatorial rank/unrank, Hamming distances and pair counts.
//
// Conventions used throughout the library:
//   * site 0 is the leftmost character of a printed string and the most
//     significant digit of the packed integer;
//   * for qubits, digit 0 is the sigma_z = +1 state and digit 1 the
//     sigma_z = -1 state, so the magnetization of a string with k ones on n
//     sites is n - 2k;
//   * sector strings are ordered by ascending packed value.

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "genent/error.hpp"

namespace genent {

using Index = std::size_t;
using Bits = std::uint64_t;

inline constexpr int kMaxBinomial = 64;

namespace detail {

inline const std::array<std::array<std::uint64_t, kMaxBinomial + 1>, kMaxBinomial + 1>& pascal() {
  static const auto table = [] {
    std::array<std::array<std::uint64_t, kMaxBinomial + 1>, kMaxBinomial + 1> t{};
    for (int n = 0; n <= kMaxBinomial; ++n) {
      t[n][0] = 1;
      for (int k = 1; k <= n; ++k) t[n][k] = t[n - 1][k - 1] + (k < n ? t[n - 1][k] : 0);
    }
    return t;
  }();
  return table;
}

}  // namespace detail

/// Exact binomial coefficient; zero outside 0 <= k <= n. Exact for n <= 64
/// except C(64, 32) and neighbours, which do not occur for n <= 62.
inline std::uint64_t binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  require(n <= kMaxBinomial, ErrorKind::InvalidArgument, "binomial: n too large");
  return detail::pascal()[n][k];
}

inline std::uint64_t ipow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

/// Bit position holding site `site` of an n-site qubit register.
constexpr int site_bit(int n, int site) { return n - 1 - site; }

class OccupationString {
 public:
  OccupationString(Bits packed, int sites, int local_dim = 2) : packed_(packed), n_(sites), d_(local_dim) {
    require(sites >= 1 && local_dim >= 2, ErrorKind::InvalidArgument, "occupation string needs n >= 1, d >= 2");
    if (d_ == 2) {
      require(n_ <= 63 && (packed >> n_) == 0, ErrorKind::InvalidArgument,
              "occupation string has bits beyond its length");
    } else {
      require(packed < ipow(static_cast<Bits>(d_), n_), ErrorKind::InvalidArgument,
              "occupation string digit out of range");
    }
  }

  /// Parses an ASCII digit string, site 0 first.
  static OccupationString parse(std::string_view text, int local_dim = 2) {
    require(!text.empty(), ErrorKind::InvalidArgument, "empty occupation string");
    Bits packed = 0;
    for (char c : text) {
      const int digit = c - '0';
      require(digit >= 0 && digit < local_dim, ErrorKind::InvalidArgument,
              "invalid digit in occupation string '" + std::string(text) + "'");
      packed = packed * static_cast<Bits>(local_dim) + static_cast<Bits>(digit);
    }
    return OccupationString(packed, static_cast<int>(text.size()), local_dim);
  }

  Bits packed() const { return packed_; }
  int size() const { return n_; }
  int local_dim() const { return d_; }

  int digit(int site) const {
    if (d_ == 2) return static_cast<int>((packed_ >> site_bit(n_, site)) & 1U);
    return static_cast<int>((packed_ / ipow(d_, n_ - 1 - site)) % static_cast<Bits>(d_));
  }

  std::string str() const {
    std::string s(static_cast<std::size_t>(n_), '0');
    for (int i = 0; i < n_; ++i) s[static_cast<std::size_t>(i)] = static_cast<char>('0' + digit(i));
    return s;
  }

  friend bool operator==(const OccupationString&, const OccupationString&) = default;

 private:
  Bits packed_;
  int n_;
  int d_;
};

/// Number of sites at which two strings carry different digits.
inline int hamming(const OccupationString& a, const OccupationString& b) {
  require(a.size() == b.size() && a.local_dim() == b.local_dim(), ErrorKind::InvalidArgument,
          "hamming: strings differ in length or local dimension");
  if (a.local_dim() == 2) return std::popcount(a.packed() ^ b.packed());
  int f = 0;
  Bits x = a.packed(), y = b.packed();
  const auto d = static_cast<Bits>(a.local_dim());
  for (int i = 0; i < a.size(); ++i, x /= d, y /= d) f += (x % d) != (y % d);
  return f;
}

/// Generalized Hamming distance on packed base-d integers.
inline int hamming_packed(Bits a, Bits b, int n, int d) {
  if (d == 2) return std::popcount(a ^ b);
  int f = 0;
  const auto dd = static_cast<Bits>(d);
  for (int i = 0; i < n; ++i, a /= dd, b /= dd) f += (a % dd) != (b % dd);
  return f;
}

/// Unordered pairs of n-qubit basis strings at Hamming distance f:
/// n_f = (N/2) C(n, f) for f >= 1 and zero for f = 0.
inline std::uint64_t pair_count_by_distance(int n, int f) {
  require(n >= 1 && n <= 31, ErrorKind::InvalidArgument, "pair_count_by_distance: need 1 <= n <= 31");
  require(f >= 0 && f <= n, ErrorKind::InvalidArgument, "pair_count_by_distance: f out of range");
  if (f == 0) return 0;
  return (std::uint64_t{1} << (n - 1)) * binomial(n, f);
}

enum class SectorKind { Full, FixedMagnetization };

class SectorBasis {
 public:
  /// Sectors up to this size keep their strings and an inverse table in memory.
  static constexpr int kMaterializeLimit = 16;

  static SectorBasis full(int sites, int local_dim = 2) {
    require(sites >= 1 && local_dim >= 2, ErrorKind::InvalidArgument, "full basis needs n >= 1, d >= 2");
    const double bits = sites * std::log2(static_cast<double>(local_dim));
    require(bits <= 62.0, ErrorKind::InvalidArgument, "full basis too large to index");
    SectorBasis b;
    b.n_ = sites;
    b.d_ = local_dim;
    b.kind_ = SectorKind::Full;
    b.dim_ = ipow(static_cast<std::uint64_t>(local_dim), sites);
    return b;
  }

  /// All n-qubit strings with total sigma_z equal to `magnetization`.
  static SectorBasis fixed_magnetization(int sites, int magnetization) {
    require(sites >= 1 && sites <= 62, ErrorKind::InvalidSector, "sector: need 1 <= n <= 62");
    require(magnetization >= -sites && magnetization <= sites, ErrorKind::InvalidSector,
            "sector: |m| exceeds n");
    require(((sites + magnetization) % 2) == 0, ErrorKind::InvalidSector,
            "sector: n and m must have the same parity");
    return with_ones(sites, (sites - magnetization) / 2);
  }

  /// All n-qubit strings carrying exactly `ones` digits equal to 1.
  static SectorBasis with_ones(int sites, int ones) {
    require(sites >= 1 && sites <= 62, ErrorKind::InvalidSector, "sector: need 1 <= n <= 62");
    require(ones >= 0 && ones <= sites, ErrorKind::InvalidSector, "sector: ones out of range");
    SectorBasis b;
    b.n_ = sites;
    b.d_ = 2;
    b.kind_ = SectorKind::FixedMagnetization;
    b.ones_ = ones;
    b.dim_ = binomial(sites, ones);
    if (sites <= kMaterializeLimit) {
      b.strings_ = std::make_shared<std::vector<Bits>>();
      b.strings_->reserve(b.dim_);
      b.inverse_ = std::make_shared<std::vector<std::int32_t>>(std::size_t{1} << sites, -1);
      // Gosper's hack walks fixed-weight words in ascending order.
      if (ones == 0) {
        b.strings_->push_back(0);
      } else {
        Bits v = (Bits{1} << ones) - 1;
        const Bits limit = Bits{1} << sites;
        while (v < limit) {
          b.strings_->push_back(v);
          const Bits t = v | (v - 1);
          v = (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
        }
      }
      for (std::size_t i = 0; i < b.strings_->size(); ++i) (*b.inverse_)[(*b.strings_)[i]] = static_cast<std::int32_t>(i);
    }
    return b;
  }

  int sites() const { return n_; }
  int local_dim() const { return d_; }
  SectorKind kind() const { return kind_; }
  bool is_full() const { return kind_ == SectorKind::Full; }
  Index dim() const { return static_cast<Index>(dim_); }
  /// Dimension of the enclosing register, d^n.
  Index register_dim() const { return static_cast<Index>(ipow(static_cast<std::uint64_t>(d_), n_)); }
  int ones() const { return ones_; }
  std::optional<int> magnetization() const {
    if (is_full()) return std::nullopt;
    return n_ - 2 * ones_;
  }

  bool contains(Bits s) const {
    if (is_full()) return s < dim_;
    return (s >> n_) == 0 && std::popcount(s) == ones_;
  }

  /// Position of `s` in canonical order; combinatorial number system, O(n).
  Index rank(Bits s) const {
    if (!contains(s)) fail(ErrorKind::NotInSector, "rank: string not in sector");
    if (is_full()) return static_cast<Index>(s);
    if (inverse_) return static_cast<Index>((*inverse_)[s]);
    return colex_rank(s);
  }

  /// Rank or -1 when s is outside the sector; s must fit in the register.
  std::int64_t find(Bits s) const {
    if (is_full()) return s < dim_ ? static_cast<std::int64_t>(s) : -1;
    if (inverse_) return (*inverse_)[s];
    return std::popcount(s) == ones_ ? static_cast<std::int64_t>(colex_rank(s)) : -1;
  }

  Bits unrank(Index i) const {
    require(i < dim_, ErrorKind::InvalidArgument, "unrank: index out of range");
    if (is_full()) return static_cast<Bits>(i);
    if (strings_) return (*strings_)[i];
    Bits s = 0;
    std::uint64_t rest = i;
    int p = n_ - 1;
    for (int j = ones_; j >= 1; --j) {
      while (binomial(p, j) > rest) --p;
      s |= Bits{1} << p;
      rest -= binomial(p, j);
      --p;
    }
    return s;
  }

  OccupationString string(Index i) const { return OccupationString(unrank(i), n_, d_); }

  /// Materialized strings (empty for full bases and for sectors beyond the limit).
  std::span<const Bits> strings() const {
    if (!strings_) return {};
    return {strings_->data(), strings_->size()};
  }

  std::string describe() const {
    if (is_full()) return "full(n=" + std::to_string(n_) + ",d=" + std::to_string(d_) + ")";
    return "sz(n=" + std::to_string(n_) + ",m=" + std::to_string(*magnetization()) + ")";
  }

  friend bool operator==(const SectorBasis& a, const SectorBasis& b) {
    return a.n_ == b.n_ && a.d_ == b.d_ && a.kind_ == b.kind_ && a.ones_ == b.ones_;
  }

 private:
  SectorBasis() = default;

  Index colex_rank(Bits s) const {
    std::uint64_t r = 0;
    int j = 1;
    while (s) {
      const int p = std::countr_zero(s);
      r += binomial(p, j++);
      s &= s - 1;
    }
    return static_cast<Index>(r);
  }

  int n_ = 0;
  int d_ = 2;
  SectorKind kind_ = SectorKind::Full;
  int ones_ = 0;
  std::uint64_t dim_ = 0;
  std::shared_ptr<std::vector<Bits>> strings_;
  std::shared_ptr<std::vector<std::int32_t>> inverse_;
};

using BasisPtr = std::shared_ptr<const SectorBasis>;

inline SectorBasis enumerate_sector(int n, int magnetization) {
  return SectorBasis::fixed_magnetization(n, magnetization);
}

inline BasisPtr make_full_basis(int n, int d = 2) { return std::make_shared<const SectorBasis>(SectorBasis::full(n, d)); }

inline BasisPtr make_sector(int n, int magnetization) {
  return std::make_shared<const SectorBasis>(SectorBasis::fixed_magnetization(n, magnetization));
}

/// Unordered pairs of strings inside a fixed-weight sector at distance f.
/// A string with k ones has C(k, f/2) C(n-k, f/2) partners at even distance f.
inline std::uint64_t sector_pair_count_by_distance(const SectorBasis& sector, int f) {
  if (sector.is_full()) {
    require(sector.local_dim() == 2, ErrorKind::Unsupported, "pair counts implemented for qubits");
    return pair_count_by_distance(sector.sites(), f);
  }
  if (f <= 0 || f % 2 != 0) return 0;
  const int k = sector.ones();
  return static_cast<std::uint64_t>(sector.dim()) * binomial(k, f / 2) * binomial(sector.sites() - k, f / 2) / 2;
}

}  // namespace genent
