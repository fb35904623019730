#include "doctest.h"

#include <random>

#include "picheck/term.hpp"
#include "support/oracles.hpp"
#include "support/termgen.hpp"

using namespace picheck;
using testsupport::named_lift;
using testsupport::named_subst;
using testsupport::random_raw_term;

TEST_CASE("lift basics") {
  CHECK(struct_eq(lift(mk_var(0), 1, 0), mk_var(1)));

  // A bound variable below the cutoff is untouched.
  Term lam = mk_lam("x", mk_const("c"), mk_var(0));
  CHECK(struct_eq(lift(lam, 5, 0), lam));

  // Free variables shift under binders, bound ones stay.
  Term t = mk_app(mk_var(2), mk_lam("x", mk_const("c"), mk_var(3)));
  Term expected = mk_app(mk_var(4), mk_lam("x", mk_const("c"), mk_var(5)));
  Term lifted = lift(t, 2, 1);
  CHECK(struct_eq(lifted, expected));
  CHECK(struct_eq(lifted, named_lift(t, 2, 1)));
}

TEST_CASE("subst basics") {
  CHECK(struct_eq(subst(mk_var(0), mk_const("c"), 0), mk_const("c")));

  // Substitution under one binder leaves the shifted result.
  Term lam = mk_lam("x", mk_const("A"), mk_var(1));
  CHECK(struct_eq(subst(lam, mk_const("c"), 0),
                  mk_lam("x", mk_const("A"), mk_const("c"))));

  // A two-binder nest, against the named oracle.
  Term nest = mk_lam(
      "x", mk_const("A"),
      mk_lam("y", mk_app(mk_var(1), mk_var(0)),
             mk_app(mk_app(mk_var(2), mk_var(1)), mk_var(0))));
  Term repl = mk_app(mk_const("f"), mk_var(0));
  CHECK(struct_eq(subst(nest, repl, 0), named_subst(nest, repl, 0)));
}

TEST_CASE("struct_eq ignores binder names, levels compare by id") {
  Term p = mk_const("P");
  CHECK(struct_eq(mk_lam("x", p, mk_var(0)), mk_lam("y", p, mk_var(0))));
  CHECK_FALSE(struct_eq(mk_var(0), mk_var(1)));

  Level u{1, {}}, v{2, {}}, u_again{1, {"elsewhere", 9, 9}};
  CHECK_FALSE(struct_eq(mk_type(u), mk_type(v)));
  CHECK(struct_eq(mk_type(u), mk_type(u_again)));  // origin is not identity
  CHECK_FALSE(struct_eq(mk_prop(), mk_type(u)));
}

TEST_CASE("lift and subst properties on random terms") {
  std::mt19937 rng(20240817);
  int checked = 0;
  for (int i = 0; i < 2000; i++) {
    Term t = random_raw_term(rng, 6);
    std::uniform_int_distribution<std::size_t> cut(0, 3);
    std::size_t k = cut(rng);

    // lift by zero is the identity
    CHECK(struct_eq(lift(t, 0, k), t));

    // lifts at the same cutoff compose additively
    CHECK(struct_eq(lift(lift(t, 2, k), 3, k), lift(t, 5, k)));

    // substituting for a freshly lifted index is the identity
    Term r = random_raw_term(rng, 3);
    CHECK(struct_eq(subst(lift(t, 1, k), r, k), t));
    checked++;
  }
  CHECK(checked == 2000);
}

TEST_CASE("closedness is preserved by lift and subst") {
  std::mt19937 rng(7);
  for (int i = 0; i < 500; i++) {
    Term t = random_raw_term(rng, 5);
    std::size_t depth = 8;  // raw vars go up to 5 plus binder nesting
    if (!closed_under(t, depth)) continue;
    CHECK(closed_under(lift(t, 3, 0), depth + 3));
    Term r = random_raw_term(rng, 3);
    if (closed_under(r, depth - 1))
      CHECK(closed_under(subst(t, r, 0), depth - 1 + 1));
  }
}

TEST_CASE("struct_eq is an equivalence relation") {
  std::mt19937 rng(99);
  std::vector<Term> pool;
  for (int i = 0; i < 40; i++) pool.push_back(random_raw_term(rng, 4));
  for (const Term& a : pool) CHECK(struct_eq(a, a));
  for (const Term& a : pool)
    for (const Term& b : pool) CHECK(struct_eq(a, b) == struct_eq(b, a));
  for (const Term& a : pool)
    for (const Term& b : pool)
      for (const Term& c : pool)
        if (struct_eq(a, b) && struct_eq(b, c)) CHECK(struct_eq(a, c));
}

TEST_CASE("telescope lookup lifts by entry distance") {
  Telescope tele;
  tele.push("A", mk_const("TA"));
  tele.push("x", mk_var(0));  // x : A
  CHECK(struct_eq(tele.var_type(0), mk_var(1)));
  CHECK(struct_eq(tele.var_type(1), mk_const("TA")));
}
