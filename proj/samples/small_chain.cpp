// One disorder realization of an 8-site chain: spectrum, level statistics and
// the most and least delocalized eigenvectors.

#include <algorithm>
#include <cstdio>

#include "genent/spin_chain.hpp"

int main() {
  using namespace genent;
  ChainSpec spec;
  spec.n = 8;
  spec.J = 0.59;
  spec.seed = 3;
  const auto sector = make_sector(spec.n, 0);
  const auto r = diagonalize(build_hamiltonian(spec, *sector), sector);
  const auto recs = analyze_eigenvectors(r);
  std::printf("sector dim %zu, E in [%.4f, %.4f], residual %.2e\n", sector->dim(), r.energies(0),
              r.energies(r.energies.size() - 1), r.max_residual);
  const auto [lo, hi] = std::minmax_element(recs.begin(), recs.end(),
                                            [](const auto& a, const auto& b) { return a.npc_z < b.npc_z; });
  std::printf("min NPC %.3f (P_loc %.3f), max NPC %.3f (P_loc %.3f)\n", lo->npc_z, lo->p_loc, hi->npc_z, hi->p_loc);
  std::printf("uncorrelated prediction at max NPC: %.3f\n", sector_prediction_sz0(hi->npc_z, 70));
  const std::vector<double> e(r.energies.data(), r.energies.data() + r.energies.size());
  std::printf("mean gap ratio %.4f\n", level_statistics(e).mean_gap_ratio);
}
