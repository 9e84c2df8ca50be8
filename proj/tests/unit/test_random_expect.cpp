#include <gtest/gtest.h>

#include <bit>
#include <cmath>

#include "dense_oracle.hpp"
#include "genent/random_expect.hpp"

using namespace genent;

namespace {

std::string pauli_text(int n, std::uint64_t code) {
  std::string s(static_cast<std::size_t>(n), 'I');
  for (int i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = "IXYZ"[(code >> (2 * i)) & 3];
  return s;
}

struct DenseTraces {
  double trace, trace_square, real_trace_square;
};

/// Traces of V^T P V with V the isometry onto strings with `ones` ones.
DenseTraces dense_sector_traces(const std::string& pauli, int ones) {
  const int n = static_cast<int>(pauli.size());
  const long N = 1L << n;
  std::vector<long> keep;
  for (long k = 0; k < N; ++k)
    if (oracle::popcount(k) == ones) keep.push_back(k);
  const Eigen::MatrixXd v = oracle::isometry(N, keep);
  const oracle::Mat proj = v.transpose().cast<oracle::C>() * oracle::pauli_string(pauli) * v.cast<oracle::C>();
  const Eigen::MatrixXd re = proj.real();
  return {proj.trace().real(), (proj * proj).trace().real(), (re * re).trace()};
}

}  // namespace

TEST(closed_forms, haar_examples) {
  EXPECT_NEAR(expected_purity_haar(local_qubits(2), 4), 0.6, 1e-15);
  EXPECT_NEAR(expected_purity_haar(spin_j(2), 3), 0.5, 1e-15);
  EXPECT_NEAR(expected_purity_haar(spin_j(10), 11), 0.1, 1e-15);
  EXPECT_NEAR(expected_purity_haar(all_observables(7), 7), 1.0, 1e-15);
  EXPECT_THROW(expected_purity_haar(local_qubits(2), 8), Error);
}

TEST(closed_forms, real_examples) {
  // E[IPR] = ((N-1) E[P_diag] + 1) / N = 3 / (N + 2)
  const double pd = expected_purity_real(diagonal_algebra(4), 4);
  EXPECT_NEAR((3 * pd + 1) / 4, 0.5, 1e-15);
  const double ratio = expected_purity_real(diagonal_algebra(1000), 1000) / expected_purity_haar(diagonal_algebra(1000), 1000);
  EXPECT_NEAR(ratio, 2.0 * 1001 / 1002, 1e-12);
  EXPECT_THROW(expected_purity_real(local_qubits(2), 4), Error);
}

TEST(sector_traces, example_values) {
  const auto s0 = SectorBasis::fixed_magnetization(12, 0);
  const auto z = project_operator(PauliString::single(12, 3, 'Z'), s0);
  EXPECT_EQ(z.beta, 0.0);
  EXPECT_DOUBLE_EQ(z.alpha, 1.0);
  EXPECT_EQ(bilocal_lambda(12), -84);
  const auto zz = pauli_sector_traces(PauliString::parse("ZZIIIIIIIIII"), s0);
  EXPECT_EQ(zz.trace, -84);
  EXPECT_EQ(zz.trace_square, 924);
  const auto xx = pauli_sector_traces(PauliString::parse("XXIIIIIIIIII"), s0);
  EXPECT_EQ(xx.trace, 0);
  EXPECT_EQ(xx.trace_square, 2 * 252);  // twice C(10, 5)
}

TEST(sector_traces, every_pauli_string_matches_dense_projection) {
  const int n = 6;
  for (int ones = 0; ones <= n; ++ones) {
    const auto sector = SectorBasis::with_ones(n, ones);
    for (std::uint64_t code = 1; code < (1u << (2 * n)); ++code) {
      const auto text = pauli_text(n, code);
      const auto p = PauliString::parse(text);
      const auto t = pauli_sector_traces(p, sector);
      const auto d = dense_sector_traces(text, ones);
      ASSERT_EQ(static_cast<double>(t.trace), std::round(d.trace)) << text << " ones=" << ones;
      ASSERT_EQ(static_cast<double>(t.trace_square), std::round(d.trace_square)) << text << " ones=" << ones;
      const auto real = project_operator(p, sector, ProjectedPart::Real);
      ASSERT_NEAR(real.trace_square, d.real_trace_square, 1e-9) << text;
    }
  }
}

TEST(sector_traces, generic_path_agrees_with_pauli_path) {
  const auto sector = SectorBasis::with_ones(4, 2);
  for (std::uint64_t code = 1; code < 256; ++code) {
    const auto p = PauliString::parse(pauli_text(4, code));
    const auto fast = project_operator(p, sector);
    // Dense copy of the same operator.
    const auto m = to_dense(p);
    double tr = 0, tr2 = 0;
    for (Index i = 0; i < sector.dim(); ++i) {
      const auto c = static_cast<Eigen::Index>(sector.unrank(i));
      tr += m(c, c).real();
      for (Index j = 0; j < sector.dim(); ++j) tr2 += std::norm(m(static_cast<Eigen::Index>(sector.unrank(j)), c));
    }
    EXPECT_NEAR(fast.trace, tr, 1e-12);
    EXPECT_NEAR(fast.trace_square, tr2, 1e-12);
  }
}

TEST(expected_sector, examples) {
  EXPECT_NEAR(expected_purity_sector(local_qubits(4), SectorBasis::fixed_magnetization(4, 0), true), 0.25, 1e-15);
  for (int n : {4, 6, 8, 12})
    EXPECT_NEAR(expected_purity_sector(pairwise_blocks(n), SectorBasis::fixed_magnetization(n, 0), true),
                bilocal_sector_real(n), 1e-14)
        << n;
  // the whole space as "sector" reduces to the Haar formula
  for (const auto& h : {local_qubits(3), pairwise_blocks(4), q_block(3, {{0, 1, 2}})}) {
    const auto full = SectorBasis::full(h.sites);
    EXPECT_NEAR(expected_purity_sector(h, full, false), expected_purity_haar(h, h.hilbert_dim), 1e-13);
  }
}

TEST(expected_sector, lambda2_over_n0_variant_differs_from_subspace_formula) {
  // lambda^2/N0 vs (lambda/N0)^2
  EXPECT_NEAR(bilocal_sector_real(6), 0.1393939393939394, 1e-12);
  EXPECT_GT(bilocal_sector_real_lambda2_over_n0(12), 1.0);
}

TEST(monte_carlo, second_moment_of_traceless_operators) {
  // E<psi|b|psi>^2 = 1/(N+1) for traceless b with tr b^2 = N
  const EnsembleSpec spec{EnsembleKind::HaarComplex, make_full_basis(3), 21, {}};
  const std::vector<Operator> ops{PauliString::parse("XYZ"), GellMann{1, 8, 1, GellMann::Kind::Antisym, 2, 5, 2.0},
                                  GellMann{1, 8, 1, GellMann::Kind::Diag, 7, 0, 2.0}};
  for (const auto& op : ops) {
    const auto e = monte_carlo_mean(spec, 100000, 0, [&](const PureState& psi) { return std::pow(expectation(psi, op), 2); });
    EXPECT_LT(std::abs(e.mean - 1.0 / 9), 3 * e.std_error) << describe(op);
  }
}

TEST(monte_carlo, local_purity_haar_and_real_sector) {
  const auto loc = monte_carlo_expected_purity(local_qubits(4), {EnsembleKind::HaarComplex, make_full_basis(4), 1, {}}, 20000, 0);
  EXPECT_LT(std::abs(loc.mean - 3.0 / 17), 3 * loc.std_error);
  const auto sec =
      monte_carlo_expected_purity(local_qubits(6), {EnsembleKind::HaarRealSector, make_sector(6, 0), 2, {}}, 20000, 0);
  EXPECT_LT(std::abs(sec.mean - 2.0 / 22), 3 * sec.std_error);
}

TEST(monte_carlo, complex_sector_variant) {
  const auto sector = SectorBasis::fixed_magnetization(6, 0);
  const double closed = expected_purity_sector(pairwise_blocks(6), sector, false);
  const auto mc =
      monte_carlo_expected_purity(pairwise_blocks(6), {EnsembleKind::HaarComplexSector, make_sector(6, 0), 3, {}}, 20000, 0);
  EXPECT_LT(std::abs(mc.mean - closed), 3 * mc.std_error) << closed << " vs " << mc.mean;
}

TEST(monte_carlo, deterministic_across_jobs) {
  const EnsembleSpec spec{EnsembleKind::HaarReal, make_full_basis(3), 4, {}};
  const auto a = monte_carlo_expected_purity(local_qubits(3), spec, 500, 1);
  const auto b = monte_carlo_expected_purity(local_qubits(3), spec, 500, 3);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std_error, b.std_error);
}
