#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "picheck/term.hpp"
#include "picheck/universe.hpp"

namespace picheck {

class GlobalEnv;

struct ReductionFlags {
  bool beta = true;
  bool delta = true;
  bool iota = true;
  std::uint64_t fuel = 1'000'000;  // step budget; must be positive
};

// Mutable step budget shared across one reduction/conversion task. Typing of
// well-formed inputs never exhausts it; running out indicates a kernel bug
// or a reduction request on an unchecked term, and raises FuelExhausted.
struct Fuel {
  std::uint64_t remaining;
  explicit Fuel(std::uint64_t n) : remaining(n) {}
};

// Head normal form: no head beta redex, no unfoldable head constant, no
// eliminator applied to a constructor at the head (per the enabled flags).
Term whnf(const GlobalEnv& env, const Term& t, const ReductionFlags& flags);
Term whnf(const GlobalEnv& env, const Term& t, const ReductionFlags& flags,
          Fuel& fuel);

// Full normal form, leftmost-outermost.
Term normalize(const GlobalEnv& env, const Term& t,
               const ReductionFlags& flags);

enum class ConvMode {
  Equal,      // judgmental equality; Type levels constrained both ways
  Cumulative  // subtyping for check sites; Prop <= Type, levels one way
};

struct ConversionResult {
  bool ok = false;
  std::vector<Constraint> delta;          // when ok
  std::optional<std::pair<Term, Term>> witness;  // head forms when not ok

  static ConversionResult yes(std::vector<Constraint> d) {
    return {true, std::move(d), std::nullopt};
  }
  static ConversionResult no(Term a, Term b) {
    return {false, {}, std::make_pair(std::move(a), std::move(b))};
  }
};

// Convertibility modulo beta/delta/iota with cumulativity. The returned
// delta relates levels already present in the inputs; the caller is
// responsible for testing satisfiability together with the ambient set.
ConversionResult convertible(const GlobalEnv& env, const Term& a,
                             const Term& b, ConvMode mode, const SrcLoc& site,
                             const ReductionFlags& flags);

}  // namespace picheck
