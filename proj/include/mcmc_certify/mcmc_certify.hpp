#pragma once

// Nonasymptotic root-MSE bounds and confidence planning for MCMC estimators
// under quantitative drift/minorization conditions, with an exact split-chain
// regeneration simulator to validate the bounds empirically.

#include "mcmc_certify/drift.hpp"
#include "mcmc_certify/errors.hpp"
#include "mcmc_certify/estimators.hpp"
#include "mcmc_certify/geo_bounds.hpp"
#include "mcmc_certify/golden_min.hpp"
#include "mcmc_certify/io.hpp"
#include "mcmc_certify/models/contracting_normals.hpp"
#include "mcmc_certify/models/hier_t.hpp"
#include "mcmc_certify/models/poisson_gamma.hpp"
#include "mcmc_certify/models/toy_poly.hpp"
#include "mcmc_certify/mse_bound.hpp"
#include "mcmc_certify/poly_bounds.hpp"
#include "mcmc_certify/pool.hpp"
#include "mcmc_certify/rng.hpp"
#include "mcmc_certify/special_functions.hpp"
#include "mcmc_certify/split_chain.hpp"
