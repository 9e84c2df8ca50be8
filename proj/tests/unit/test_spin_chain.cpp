#include <gtest/gtest.h>

#include <cmath>

#include "dense_oracle.hpp"
#include "genent/spin_chain.hpp"

using namespace genent;

namespace {

ChainSpec chain(int n, double J, std::uint64_t seed, double eps = 1.0, double width = 1.0) {
  ChainSpec s;
  s.n = n;
  s.J = J;
  s.eps = eps;
  s.disorder_width = width;
  s.seed = seed;
  return s;
}

/// H on the full register from explicit Pauli strings.
oracle::Mat dense_chain(const ChainSpec& spec) {
  const int n = spec.n;
  const auto eps = site_fields(spec);
  const long N = 1L << n;
  oracle::Mat h = oracle::Mat::Zero(N, N);
  for (int i = 0; i < n; ++i) {
    std::string z(static_cast<std::size_t>(n), 'I');
    z[static_cast<std::size_t>(i)] = 'Z';
    h += 0.5 * eps[static_cast<std::size_t>(i)] * oracle::pauli_string(z);
  }
  for (int i = 0; i + 1 < n; ++i)
    for (char p : {'X', 'Y', 'Z'}) {
      std::string s(static_cast<std::size_t>(n), 'I');
      s[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(i + 1)] = p;
      h += 0.25 * spec.J * oracle::pauli_string(s);
    }
  return h;
}

}  // namespace

TEST(build_hamiltonian, two_site_singlet_triplet) {
  auto spec = chain(2, 1.3, 0);
  spec.fields = {0.0, 0.0};
  const auto h = Eigen::MatrixXd(build_hamiltonian(spec, SectorBasis::fixed_magnetization(2, 0)));
  EXPECT_DOUBLE_EQ(h(0, 0), -1.3 / 4);
  EXPECT_DOUBLE_EQ(h(1, 1), -1.3 / 4);
  EXPECT_DOUBLE_EQ(h(0, 1), 1.3 / 2);
  EXPECT_DOUBLE_EQ(h(1, 0), 1.3 / 2);
  const auto r = diagonalize(build_hamiltonian(spec, SectorBasis::fixed_magnetization(2, 0)), make_sector(2, 0));
  EXPECT_NEAR(r.energies(0), -3 * 1.3 / 4, 1e-14);
  EXPECT_NEAR(r.energies(1), 1.3 / 4, 1e-14);
}

TEST(build_hamiltonian, matches_dense_pauli_sum_in_every_sector) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto spec = chain(6, 0.7, seed, 0.4, 1.5);
    const oracle::Mat full = dense_chain(spec);
    for (int ones = 0; ones <= 6; ++ones) {
      const auto sector = SectorBasis::with_ones(6, ones);
      const Eigen::MatrixXd h(build_hamiltonian(spec, sector));
      for (Index i = 0; i < sector.dim(); ++i)
        for (Index j = 0; j < sector.dim(); ++j)
          ASSERT_NEAR(h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)),
                      full(static_cast<Eigen::Index>(sector.unrank(i)), static_cast<Eigen::Index>(sector.unrank(j))).real(),
                      1e-14);
      // the sector is invariant: no matrix element leaves it
      for (Index i = 0; i < sector.dim(); ++i)
        for (long k = 0; k < 64; ++k)
          if (oracle::popcount(k) != ones)
            ASSERT_EQ(std::abs(full(k, static_cast<Eigen::Index>(sector.unrank(i)))), 0.0);
    }
  }
}

TEST(build_hamiltonian, sparsity_and_dimension) {
  const auto sector = SectorBasis::fixed_magnetization(12, 0);
  EXPECT_EQ(sector.dim(), 924u);
  const auto h = build_hamiltonian(chain(12, 0.59, 1), sector);
  EXPECT_EQ(h.rows(), 924);
  for (Eigen::Index r = 0; r < h.outerSize(); ++r) {
    Eigen::Index nnz = 0;
    for (SparseMatrix::InnerIterator it(h, r); it; ++it) ++nnz;
    EXPECT_LE(nnz, 12);
  }
  const Eigen::MatrixXd d(h);
  EXPECT_EQ((d - d.transpose()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(trace_formula, integer_counts_and_trace) {
  for (int n = 2; n <= 10; ++n)
    for (int ones = 0; ones <= n; ++ones) {
      const auto sector = SectorBasis::with_ones(n, ones);
      const auto t = hamiltonian_trace_formula(n, ones);
      for (int site = 0; site < n; ++site) {
        std::int64_t field = 0;
        for (Index k = 0; k < sector.dim(); ++k) field += static_cast<std::int64_t>(site_z(sector.unrank(k), n, site));
        ASSERT_EQ(field, t.field_count) << n << " " << ones << " " << site;
      }
      std::int64_t bond = 0;
      for (Index k = 0; k < sector.dim(); ++k)
        for (int i = 0; i + 1 < n; ++i)
          bond += static_cast<std::int64_t>(site_z(sector.unrank(k), n, i) * site_z(sector.unrank(k), n, i + 1));
      ASSERT_EQ(bond, t.bond_count);
      const auto spec = chain(n, 0.8, 100 + static_cast<std::uint64_t>(n));
      const Eigen::MatrixXd h(build_hamiltonian(spec, sector));
      EXPECT_NEAR(h.trace(), t.trace(spec), 1e-12 * std::max(1.0, static_cast<double>(sector.dim())));
    }
}

TEST(build_hamiltonian, uniform_field_is_a_sector_constant) {
  for (int m : {-4, -2, 0, 2}) {
    const auto sector = make_sector(8, m);
    auto a = chain(8, 0.9, 5, 0.0);
    auto b = chain(8, 0.9, 5, 2.5);
    const auto ea = diagonalize(build_hamiltonian(a, *sector), sector).energies;
    const auto eb = diagonalize(build_hamiltonian(b, *sector), sector).energies;
    // eps_i = eps + delta_i with the same delta_i; shift is (eps / 2) m
    EXPECT_LT((eb - ea - Eigen::VectorXd::Constant(ea.size(), 1.25 * m)).cwiseAbs().maxCoeff(), 1e-9) << m;
  }
}

TEST(build_hamiltonian, rejects_bad_specs) {
  const auto sector = SectorBasis::fixed_magnetization(4, 0);
  EXPECT_THROW(build_hamiltonian(chain(4, 0.0, 0), sector), Error);
  EXPECT_THROW(build_hamiltonian(chain(4, 1.0, 0, 1.0, -1.0), sector), Error);
  EXPECT_THROW(build_hamiltonian(chain(6, 1.0, 0), sector), Error);
  auto bad = chain(4, 1.0, 0);
  bad.fields = {1.0};
  EXPECT_THROW(build_hamiltonian(bad, sector), Error);
}

TEST(diagonalize, residual_orthonormality_and_sign) {
  const auto sector = make_sector(10, 0);
  const auto r = diagonalize(build_hamiltonian(chain(10, 0.59, 3), *sector), sector, 7);
  EXPECT_EQ(r.realization_id, 7u);
  EXPECT_LT(r.max_residual, kResidualTolerance);
  EXPECT_LT(r.orthonormality_error, kOrthonormalityTolerance);
  for (Eigen::Index k = 0; k + 1 < r.energies.size(); ++k) EXPECT_LE(r.energies(k), r.energies(k + 1));
  for (Eigen::Index k = 0; k < r.vectors.cols(); ++k) {
    Eigen::Index at;
    r.vectors.col(k).cwiseAbs().maxCoeff(&at);
    EXPECT_GT(r.vectors(at, k), 0.0);
  }
  EXPECT_FALSE(has_degenerate_levels(r));
}

TEST(diagonalize, diagonal_hamiltonian_gives_basis_states) {
  const auto sector = make_sector(6, 0);
  const auto dim = static_cast<Eigen::Index>(sector->dim());
  SparseMatrix h(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) h.insert(i, i) = std::sin(1.0 + 3.0 * static_cast<double>(i));
  const auto r = diagonalize(h, sector);
  for (const auto& rec : analyze_eigenvectors(r)) {
    EXPECT_NEAR(rec.npc_z, 1.0, 1e-12);
    EXPECT_NEAR(rec.p_loc, 1.0, 1e-12);
  }
  SparseMatrix deg(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) deg.insert(i, i) = static_cast<double>(i / 2);
  EXPECT_TRUE(has_degenerate_levels(diagonalize(deg, sector)));
}

TEST(diagonalize, rejects_asymmetric_input) {
  const auto sector = make_sector(2, 0);
  SparseMatrix h(2, 2);
  h.insert(0, 1) = 1.0;
  EXPECT_THROW(diagonalize(h, sector), Error);
}

TEST(analyze_eigenvectors, local_purity_matches_other_routes) {
  const int n = 8;
  const auto sector = make_sector(n, 0);
  const auto r = diagonalize(build_hamiltonian(chain(n, 0.59, 11), *sector), sector);
  const auto recs = analyze_eigenvectors(r);
  ASSERT_EQ(recs.size(), sector->dim());
  for (std::size_t k = 0; k < recs.size(); k += 7) {
    const auto psi = eigenvector_state(r, static_cast<Eigen::Index>(k));
    const PureState full(make_full_basis(n), psi.register_amplitudes());
    const auto mub = local_purity_mub(full);
    EXPECT_NEAR(mub.x, 0.0, 1e-12);
    EXPECT_NEAR(mub.y, 0.0, 1e-12);
    EXPECT_NEAR(recs[k].p_loc, mub.z, 1e-12);
    EXPECT_NEAR(recs[k].p_loc, mub.loc, 1e-12);
    const auto amps = full.register_amplitudes();
    const oracle::Vec v = Eigen::Map<const oracle::Vec>(amps.data(), static_cast<Eigen::Index>(amps.size()));
    EXPECT_NEAR(recs[k].p_loc, oracle::local_purity(v, n, 2), 1e-10);
    EXPECT_TRUE(z2_symmetry_check(psi).symmetric);
    EXPECT_GE(recs[k].npc_z, 1.0);
    EXPECT_LE(recs[k].npc_z, static_cast<double>(sector->dim()));
    EXPECT_GE(recs[k].p_loc, 0.0);
    EXPECT_LE(recs[k].p_loc, 1.0);
    for (int f = 1; f <= n; f += 2) EXPECT_EQ(recs[k].A_f[static_cast<std::size_t>(f)], 0.0);
    EXPECT_DOUBLE_EQ(recs[k].energy, r.energies(static_cast<Eigen::Index>(k)));
  }
}

TEST(run_ensemble, deterministic_across_worker_counts) {
  ChainExperiment cfg;
  cfg.n = 6;
  cfg.ratios = {0.3, 1.0};
  cfg.realizations = 5;
  cfg.master_seed = 99;
  cfg.inset_lo = 3;
  cfg.inset_hi = 8;
  const auto a = run_ensemble(cfg, 1);
  const auto b = run_ensemble(cfg, 3);
  ASSERT_EQ(a.ratios.size(), 2u);
  for (std::size_t ri = 0; ri < 2; ++ri) {
    EXPECT_EQ(a.ratios[ri].gap_ratio.mean, b.ratios[ri].gap_ratio.mean);
    for (std::size_t k = 0; k < 5; ++k) {
      const auto& x = a.ratios[ri].realizations[k];
      const auto& y = b.ratios[ri].realizations[k];
      ASSERT_TRUE(x.ok) << x.failure;
      EXPECT_EQ(x.fields, y.fields);
      EXPECT_EQ(x.energies, y.energies);
      EXPECT_EQ(x.inset_components, y.inset_components);
      for (std::size_t j = 0; j < x.records.size(); ++j) {
        EXPECT_EQ(x.records[j].p_loc, y.records[j].p_loc);
        EXPECT_EQ(x.records[j].A_f, y.records[j].A_f);
      }
    }
  }
  // different realizations and ratios draw different disorder
  EXPECT_NE(a.ratios[0].realizations[0].fields, a.ratios[0].realizations[1].fields);
  EXPECT_NE(a.ratios[0].realizations[0].fields, a.ratios[1].realizations[0].fields);
  std::size_t kept[2] = {0, 0};
  for (std::size_t ri = 0; ri < 2; ++ri)
    for (const auto& real : a.ratios[ri].realizations) kept[ri] += real.inset_components.size();
  EXPECT_EQ(kept[0], 0u);
  EXPECT_GT(kept[1], 0u);
}

TEST(run_ensemble, small_chain_physics) {
  // n = 8: delocalization grows with J/d, NPC stays below (N0 + 2) / 3 on
  // average, and weakly coupled localized states are dominated by distance-2
  // pairs.
  ChainExperiment cfg;
  cfg.n = 8;
  cfg.ratios = {0.05, 1.0};
  cfg.realizations = 40;
  const auto d = run_ensemble(cfg);
  EXPECT_LT(d.ratios[0].gap_ratio.mean, d.ratios[1].gap_ratio.mean);
  for (const auto& rr : d.ratios) {
    EXPECT_EQ(rr.failures, 0u);
    std::vector<double> npcs;
    for (const auto* r : select_records(rr, false, 0.1)) npcs.push_back(r->npc_z);
    EXPECT_LT(mean_and_stderr(npcs).mean, (70.0 + 2.0) / 3.0);
  }
  double a2 = 0, a4 = 0;
  for (const auto* r : select_records(d.ratios[0], false, 0.1))
    if (r->npc_z < 3) {
      a2 += r->A_f[2];
      a4 += r->A_f[4];
    }
  EXPECT_GT(a2, a4);
}

TEST(binning, unit_bins_and_prediction) {
  std::vector<EigvecRecord> recs(4);
  recs[0].npc_z = 1.0;
  recs[1].npc_z = 1.9;
  recs[2].npc_z = 3.5;
  recs[3].npc_z = 3.2;
  for (std::size_t i = 0; i < 4; ++i) {
    recs[i].p_loc = 0.1 * static_cast<double>(i);
    recs[i].A_f = {0, 0, 1.0 * static_cast<double>(i)};
  }
  std::vector<const EigvecRecord*> ptrs;
  for (const auto& r : recs) ptrs.push_back(&r);
  const auto bins = bin_by_npc(ptrs, 20);
  ASSERT_EQ(bins.size(), 2u);
  EXPECT_EQ(bins[0].lower, 1);
  EXPECT_EQ(bins[0].count, 2u);
  EXPECT_NEAR(bins[0].mean_npc, 1.45, 1e-15);
  EXPECT_NEAR(bins[0].mean_p_loc, 0.05, 1e-15);
  EXPECT_NEAR(bins[0].mean_A_f[2], 0.5, 1e-15);
  EXPECT_EQ(bins[1].lower, 3);
  EXPECT_NEAR(bins[1].mean_prediction, 0.5 * (sector_prediction_sz0(3.5, 20) + sector_prediction_sz0(3.2, 20)), 1e-15);
}
