#include <gtest/gtest.h>

#include <bit>
#include <set>

#include "genent/basis.hpp"

using namespace genent;

TEST(sector, dimensions) {
  EXPECT_EQ(enumerate_sector(12, 0).dim(), 924u);
  EXPECT_EQ(enumerate_sector(6, 0).dim(), 20u);
  EXPECT_EQ(enumerate_sector(2, 2).dim(), 1u);
  EXPECT_EQ(SectorBasis::full(3).dim(), 8u);
  EXPECT_EQ(SectorBasis::full(3, 3).dim(), 27u);
}

TEST(sector, fully_polarized_string_follows_bit_convention) {
  // digit 0 carries sigma_z = +1, so m = +n is the all-zero string
  const auto up = enumerate_sector(2, 2);
  ASSERT_EQ(up.dim(), 1u);
  EXPECT_EQ(up.string(0).str(), "00");
  const auto down = enumerate_sector(2, -2);
  EXPECT_EQ(down.string(0).str(), "11");
}

TEST(sector, parity_and_range_errors) {
  EXPECT_THROW(enumerate_sector(3, 0), Error);
  EXPECT_THROW(enumerate_sector(4, 6), Error);
  try {
    enumerate_sector(5, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidSector);
  }
}

TEST(sector, strings_strictly_increasing_and_correct_weight) {
  for (int n = 1; n <= 10; ++n)
    for (int m = -n; m <= n; m += 2) {
      const auto s = enumerate_sector(n, m);
      Bits prev = 0;
      for (Index i = 0; i < s.dim(); ++i) {
        const Bits b = s.unrank(i);
        if (i > 0) EXPECT_LT(prev, b);
        EXPECT_EQ(n - 2 * std::popcount(b), m);
        prev = b;
      }
    }
}

TEST(rank, examples) {
  const auto full = SectorBasis::full(3);
  EXPECT_EQ(full.rank(0b101), 5u);
  const auto s = enumerate_sector(4, 0);
  EXPECT_EQ(s.rank(OccupationString::parse("0011").packed()), 0u);
  EXPECT_EQ(s.rank(OccupationString::parse("1100").packed()), 5u);
}

TEST(rank, not_in_sector) {
  const auto s = enumerate_sector(4, 0);
  try {
    s.rank(0b0111);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInSector);
  }
  EXPECT_EQ(s.find(0b0111), -1);
}

TEST(rank, bijective_on_every_sector_up_to_14) {
  for (int n = 1; n <= 14; ++n)
    for (int k = 0; k <= n; ++k) {
      const auto s = SectorBasis::with_ones(n, k);
      ASSERT_EQ(s.dim(), binomial(n, k));
      for (Index i = 0; i < s.dim(); ++i) ASSERT_EQ(s.rank(s.unrank(i)), i) << "n=" << n << " k=" << k;
    }
}

TEST(rank, streaming_matches_materialized) {
  // n = 18 exceeds the materialization limit and uses colex rank/unrank.
  const auto big = SectorBasis::with_ones(18, 5);
  EXPECT_TRUE(big.strings().empty());
  Bits prev = 0;
  for (Index i = 0; i < big.dim(); i += 97) {
    const Bits b = big.unrank(i);
    EXPECT_EQ(std::popcount(b), 5);
    EXPECT_EQ(big.rank(b), i);
    if (i > 0) EXPECT_LT(prev, b);
    prev = b;
  }
}

TEST(hamming, examples) {
  using S = OccupationString;
  EXPECT_EQ(hamming(S::parse("0011"), S::parse("0101")), 2);
  EXPECT_EQ(hamming(S::parse("0101"), S::parse("0101")), 0);
  EXPECT_EQ(hamming(S::parse("012", 3), S::parse("021", 3)), 2);
  EXPECT_THROW(hamming(S::parse("01"), S::parse("011")), Error);
  EXPECT_THROW(hamming(S::parse("01", 3), S::parse("01", 2)), Error);
}

TEST(occupation_string, round_trip_and_digits) {
  const auto s = OccupationString::parse("0120", 3);
  EXPECT_EQ(s.packed(), 0u * 27 + 1u * 9 + 2u * 3 + 0u);
  EXPECT_EQ(s.digit(1), 1);
  EXPECT_EQ(s.digit(2), 2);
  EXPECT_EQ(s.str(), "0120");
  EXPECT_THROW(OccupationString::parse("013", 3), Error);
  EXPECT_EQ(OccupationString::parse("100").packed(), 4u);  // site 0 is the top bit
}

TEST(pair_count, examples) {
  EXPECT_EQ(pair_count_by_distance(2, 1), 4u);
  EXPECT_EQ(pair_count_by_distance(3, 3), 4u);
  std::uint64_t weighted = 0;
  for (int f = 0; f <= 3; ++f) weighted += pair_count_by_distance(3, f) * static_cast<std::uint64_t>(f);
  EXPECT_EQ(weighted, 48u);
}

TEST(pair_count, brute_force_up_to_6) {
  for (int n = 1; n <= 6; ++n) {
    const Bits N = Bits{1} << n;
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(n + 1), 0);
    for (Bits a = 0; a < N; ++a)
      for (Bits b = a + 1; b < N; ++b) ++counts[static_cast<std::size_t>(std::popcount(a ^ b))];
    std::uint64_t total = 0, weighted = 0;
    for (int f = 0; f <= n; ++f) {
      EXPECT_EQ(pair_count_by_distance(n, f), counts[static_cast<std::size_t>(f)]) << "n=" << n << " f=" << f;
      total += pair_count_by_distance(n, f);
      weighted += pair_count_by_distance(n, f) * static_cast<std::uint64_t>(f);
    }
    EXPECT_EQ(total, N * (N - 1) / 2);
    EXPECT_EQ(weighted, static_cast<std::uint64_t>(n) * N * N / 4);
  }
}

TEST(pair_count, sector_brute_force) {
  for (int n = 2; n <= 10; ++n)
    for (int k = 0; k <= n; ++k) {
      const auto s = SectorBasis::with_ones(n, k);
      std::vector<std::uint64_t> counts(static_cast<std::size_t>(n + 1), 0);
      for (Index i = 0; i < s.dim(); ++i)
        for (Index j = i + 1; j < s.dim(); ++j) ++counts[static_cast<std::size_t>(std::popcount(s.unrank(i) ^ s.unrank(j)))];
      for (int f = 1; f <= n; ++f) EXPECT_EQ(sector_pair_count_by_distance(s, f), counts[static_cast<std::size_t>(f)]);
    }
}
