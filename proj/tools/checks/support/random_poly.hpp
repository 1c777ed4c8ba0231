#pragma once

#include <random>

#include "qholo/poly.hpp"

namespace qholo::testing {

/// Random Laurent polynomial with up to `max_terms` terms, exponents in [-span, span]
/// for each variable in `vars`, and coefficients in [-9, 9].
LaurentPoly random_poly(std::mt19937_64& rng, VarSet vars, int max_terms = 5, int span = 3);

/// Polynomial with nonnegative exponents (useful when building known factors).
LaurentPoly random_nonneg_poly(std::mt19937_64& rng, VarSet vars, int max_terms = 4, int max_deg = 3);

}  // namespace qholo::testing
