// Expected local purity of Haar-random states: closed form against sampling.

#include <cstdio>

#include "genent/random_expect.hpp"

int main() {
  using namespace genent;
  for (int n = 2; n <= 6; ++n) {
    const auto h = local_qubits(n);
    const EnsembleSpec spec{EnsembleKind::HaarComplex, make_full_basis(n), 42, {}};
    const auto mc = monte_carlo_expected_purity(h, spec, 20000, 0);
    std::printf("n=%d  closed %.5f  sampled %.5f +- %.5f\n", n, expected_purity_haar(h, h.hilbert_dim), mc.mean,
                mc.std_error);
  }
  const auto sector = make_sector(8, 0);
  std::printf("sector n=8: closed %.5f (real ensemble)\n", expected_purity_sector(local_qubits(8), *sector, true));
}
