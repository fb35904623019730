#pragma once

#include <random>
#include <vector>

#include "picheck/kernel.hpp"
#include "picheck/vernacular.hpp"

namespace picheck::testsupport {

// Arbitrary raw terms (not necessarily well-typed) for the substitution and
// equality property suites. Variable indices stay small so some are bound
// and some free.
Term random_raw_term(std::mt19937& rng, int depth);

// A checking session preloaded with nat, bool and recursor-defined helpers;
// the signature the well-typed generator draws from.
Session make_arith_session();

// Generates a closed, well-typed term of a randomly chosen simple type over
// {nat, bool} with arrows, by construction. Applications, redexes, defined
// constants and recursor applications all occur.
struct WellTyped {
  Term term;
  Term type;
};
WellTyped random_well_typed(const GlobalEnv& env, std::mt19937& rng,
                            int depth);

}  // namespace picheck::testsupport
