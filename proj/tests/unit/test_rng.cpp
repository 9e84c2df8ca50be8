#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "genent/parallel.hpp"
#include "genent/rng.hpp"

using namespace genent;

// Known-answer vectors of the Philox4x32-10 reference implementation.
TEST(philox, known_answers) {
  using philox::Counter;
  using philox::Key;
  EXPECT_EQ(philox::block(Counter{0, 0, 0, 0}, Key{0, 0}),
            (Counter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(philox::block(Counter{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, Key{0xffffffff, 0xffffffff}),
            (Counter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(philox::block(Counter{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, Key{0xa4093822, 0x299f31d0}),
            (Counter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(stream, reproducible_and_distinct) {
  RandomStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
    EXPECT_NE(x, d.next_u64());
  }
}

TEST(stream, substreams_independent_of_draw_order) {
  RandomStream parent(5);
  auto s1 = parent.substream(3);
  parent.next_u64();
  auto s2 = parent.substream(3);
  EXPECT_EQ(s1.next_u64(), s2.next_u64());
  EXPECT_NE(parent.substream(3).next_u64(), parent.substream(4).next_u64());
}

TEST(stream, uniform_and_normal_moments) {
  RandomStream r(1);
  const int n = 200000;
  double su = 0, sn = 0, sn2 = 0, sn4 = 0;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    su += u;
    const double g = r.normal();
    sn += g;
    sn2 += g * g;
    sn4 += g * g * g * g;
  }
  EXPECT_NEAR(su / n, 0.5, 5 * std::sqrt(1.0 / 12 / n));
  EXPECT_NEAR(sn / n, 0.0, 5 / std::sqrt(n));
  EXPECT_NEAR(sn2 / n, 1.0, 5 * std::sqrt(2.0 / n));
  EXPECT_NEAR(sn4 / n, 3.0, 5 * std::sqrt(96.0 / n));
}

TEST(stream, below_and_shuffle) {
  RandomStream r(9);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 70000; ++i) ++hits[r.below(7)];
  for (int h : hits) EXPECT_NEAR(h, 10000, 500);
  std::vector<int> v{0, 1, 2, 3, 4, 5, 6, 7};
  r.shuffle(std::span<int>(v));
  EXPECT_EQ(std::set<int>(v.begin(), v.end()).size(), 8u);
}

TEST(parallel, results_independent_of_jobs) {
  auto run = [](unsigned jobs) {
    std::vector<double> out(257);
    parallel_for(out.size(), jobs, [&](std::size_t i) { out[i] = RandomStream(11).substream(i).normal(); });
    return mean_and_stderr(out);
  };
  const auto a = run(1), b = run(4);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std_error, b.std_error);
}

TEST(parallel, propagates_exceptions) {
  EXPECT_THROW(parallel_for(10, 3, [](std::size_t i) {
                 if (i == 5) throw std::runtime_error("boom");
               }),
               std::runtime_error);
}
