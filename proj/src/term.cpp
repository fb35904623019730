#include "picheck/term.hpp"

#include <algorithm>
#include <sstream>

namespace picheck {

std::string to_string(const SrcLoc& loc) {
  std::ostringstream os;
  os << loc.file << ":" << loc.line << ":" << loc.col;
  return os.str();
}

namespace {
Term node(TermNode n) { return std::make_shared<const TermNode>(std::move(n)); }
}  // namespace

Term mk_var(std::size_t index) { return node({VarN{index}}); }
Term mk_sort(Sort s) { return node({SortN{s}}); }
Term mk_prop() { return mk_sort(Sort::prop()); }
Term mk_type(Level l) { return mk_sort(Sort::type(l)); }
Term mk_const(std::string name) { return node({ConstN{std::move(name)}}); }
Term mk_app(Term fn, Term arg) {
  return node({AppN{std::move(fn), std::move(arg)}});
}
Term mk_lam(std::string name, Term domain, Term body) {
  return node({LamN{std::move(name), std::move(domain), std::move(body)}});
}
Term mk_pi(std::string name, Term domain, Term codomain) {
  return node({PiN{std::move(name), std::move(domain), std::move(codomain)}});
}
Term mk_arrow(Term domain, Term codomain) {
  return mk_pi("_", std::move(domain), std::move(codomain));
}
Term mk_ind(std::string name) { return node({IndN{std::move(name)}}); }
Term mk_ctor(std::string ind, std::size_t index) {
  return node({CtorN{std::move(ind), index}});
}
Term mk_elim(std::string ind) { return node({ElimN{std::move(ind)}}); }
Term mk_eq_ref() { return node({EqN{}}); }
Term mk_refl_ref() { return node({ReflN{}}); }
Term mk_eq_elim_ref() { return node({EqElimN{}}); }

Term mk_apps(Term fn, const std::vector<Term>& args) {
  Term t = std::move(fn);
  for (const Term& a : args) t = mk_app(t, a);
  return t;
}

std::pair<Term, std::vector<Term>> unfold_apps(const Term& t) {
  std::vector<Term> args;
  Term head = t;
  while (const auto* app = as<AppN>(head)) {
    args.push_back(app->arg);
    head = app->fn;
  }
  std::reverse(args.begin(), args.end());
  return {head, args};
}

Term subst_map(const Term& t,
               const std::function<Term(std::size_t, std::size_t)>& fn,
               std::size_t cutoff) {
  if (const auto* var = as<VarN>(t)) {
    if (var->index >= cutoff) return fn(var->index - cutoff, cutoff);
    return t;
  }
  if (const auto* app = as<AppN>(t)) {
    Term f = subst_map(app->fn, fn, cutoff);
    Term a = subst_map(app->arg, fn, cutoff);
    if (f == app->fn && a == app->arg) return t;
    return mk_app(std::move(f), std::move(a));
  }
  if (const auto* lam = as<LamN>(t)) {
    Term d = subst_map(lam->domain, fn, cutoff);
    Term b = subst_map(lam->body, fn, cutoff + 1);
    if (d == lam->domain && b == lam->body) return t;
    return mk_lam(lam->name, std::move(d), std::move(b));
  }
  if (const auto* pi = as<PiN>(t)) {
    Term d = subst_map(pi->domain, fn, cutoff);
    Term c = subst_map(pi->codomain, fn, cutoff + 1);
    if (d == pi->domain && c == pi->codomain) return t;
    return mk_pi(pi->name, std::move(d), std::move(c));
  }
  // Sorts, constants and the remaining leaves contain no variables.
  return t;
}

Term lift(const Term& t, std::size_t amount, std::size_t cutoff) {
  if (amount == 0) return t;
  return subst_map(
      t,
      [amount](std::size_t rel, std::size_t depth) {
        return mk_var(rel + depth + amount);
      },
      cutoff);
}

Term subst(const Term& t, const Term& replacement, std::size_t target) {
  return subst_map(
      t,
      [&replacement, target](std::size_t rel, std::size_t depth) -> Term {
        if (rel == target) return lift(replacement, depth);
        if (rel > target) return mk_var(rel - 1 + depth);
        return mk_var(rel + depth);
      },
      0);
}

bool struct_eq(const Term& a, const Term& b) {
  if (a == b) return true;
  if (a->v.index() != b->v.index()) return false;
  if (const auto* va = as<VarN>(a)) return va->index == as<VarN>(b)->index;
  if (const auto* sa = as<SortN>(a)) return sa->sort == as<SortN>(b)->sort;
  if (const auto* ca = as<ConstN>(a)) return ca->name == as<ConstN>(b)->name;
  if (const auto* pa = as<AppN>(a)) {
    const auto* pb = as<AppN>(b);
    return struct_eq(pa->fn, pb->fn) && struct_eq(pa->arg, pb->arg);
  }
  if (const auto* la = as<LamN>(a)) {
    const auto* lb = as<LamN>(b);
    return struct_eq(la->domain, lb->domain) && struct_eq(la->body, lb->body);
  }
  if (const auto* pa = as<PiN>(a)) {
    const auto* pb = as<PiN>(b);
    return struct_eq(pa->domain, pb->domain) &&
           struct_eq(pa->codomain, pb->codomain);
  }
  if (const auto* ia = as<IndN>(a)) return ia->name == as<IndN>(b)->name;
  if (const auto* ca = as<CtorN>(a)) {
    const auto* cb = as<CtorN>(b);
    return ca->ind == cb->ind && ca->index == cb->index;
  }
  if (const auto* ea = as<ElimN>(a)) return ea->ind == as<ElimN>(b)->ind;
  // EqN / ReflN / EqElimN carry no payload.
  return true;
}

bool closed_under(const Term& t, std::size_t depth) {
  if (const auto* var = as<VarN>(t)) return var->index < depth;
  if (const auto* app = as<AppN>(t))
    return closed_under(app->fn, depth) && closed_under(app->arg, depth);
  if (const auto* lam = as<LamN>(t))
    return closed_under(lam->domain, depth) &&
           closed_under(lam->body, depth + 1);
  if (const auto* pi = as<PiN>(t))
    return closed_under(pi->domain, depth) &&
           closed_under(pi->codomain, depth + 1);
  return true;
}

bool occurs_free(const Term& t, std::size_t index) {
  if (const auto* var = as<VarN>(t)) return var->index == index;
  if (const auto* app = as<AppN>(t))
    return occurs_free(app->fn, index) || occurs_free(app->arg, index);
  if (const auto* lam = as<LamN>(t))
    return occurs_free(lam->domain, index) ||
           occurs_free(lam->body, index + 1);
  if (const auto* pi = as<PiN>(t))
    return occurs_free(pi->domain, index) ||
           occurs_free(pi->codomain, index + 1);
  return false;
}

Term Telescope::var_type(std::size_t index) const {
  const Entry& e = entries_[entries_.size() - 1 - index];
  return lift(e.type, index + 1);
}

}  // namespace picheck
