// Purities of a few named states relative to different observable sets.

#include <cstdio>

#include "genent/hamming.hpp"
#include "genent/purity.hpp"

int main() {
  using namespace genent;
  const auto ghz = ghz_state(3);
  const auto w = w_state(3);
  std::printf("P_loc(GHZ_3) = %.6f\n", purity(ghz, local_qubits(3)));
  std::printf("P_loc(W_3)   = %.6f\n", purity(w, local_qubits(3)));
  std::printf("P_all(W_3)   = %.6f\n", purity_all(w));
  std::printf("NPC_z(W_3)   = %.6f\n", npc(w));

  const auto p = local_purity_mub(w);
  std::printf("P_x, P_y, P_z = %.6f %.6f %.6f\n", p.x, p.y, p.z);
  // hamming-weighted pair sum gives the same z-basis contribution
  std::printf("Hamming form  = %.6f\n", hamming_weighted_purity(w));
}
