#pragma once

// Everything in one include.

#include "genent/basis.hpp"
#include "genent/chain_report.hpp"
#include "genent/eigensolver.hpp"
#include "genent/error.hpp"
#include "genent/format.hpp"
#include "genent/hamming.hpp"
#include "genent/hyperbola_fit.hpp"
#include "genent/io.hpp"
#include "genent/level_stats.hpp"
#include "genent/observables.hpp"
#include "genent/parallel.hpp"
#include "genent/purity.hpp"
#include "genent/random_expect.hpp"
#include "genent/rng.hpp"
#include "genent/spin_chain.hpp"
#include "genent/state.hpp"
