#include "picheck/reduction.hpp"

#include <algorithm>

#include "picheck/kernel.hpp"

namespace picheck {

namespace {

void spend(Fuel& fuel) {
  if (fuel.remaining == 0)
    throw CheckError(ErrKind::FuelExhausted,
                     "reduction step budget exhausted", {});
  fuel.remaining--;
}

// Decomposes a constructor argument type into its binder telescope and head.
struct ArgShape {
  std::vector<Term> binder_domains;
  Term head;
};

ArgShape decompose_arg(const Term& t) {
  ArgShape shape;
  Term cur = t;
  while (const auto* pi = as<PiN>(cur)) {
    shape.binder_domains.push_back(pi->domain);
    cur = pi->codomain;
  }
  shape.head = unfold_apps(cur).first;
  return shape;
}

// Instantiates a term from the constructor-argument context
// [params, a_0..a_{t-1}, x_0..x_{cut-1}] by replacing the parameter and
// argument variables with concrete terms, keeping the x binders.
Term instantiate_ctor_scope(const Term& t, const std::vector<Term>& params,
                            const std::vector<Term>& args, std::size_t nargs,
                            std::size_t cut) {
  return subst_map(
      t,
      [&](std::size_t rel, std::size_t depth) -> Term {
        if (rel < nargs) return lift(args[nargs - 1 - rel], depth);
        std::size_t p = rel - nargs;
        if (p < params.size())
          return lift(params[params.size() - 1 - p], depth);
        // Below the constructor scope: keep (cannot happen for checked decls).
        return mk_var(rel - nargs - params.size() + depth);
      },
      cut);
}

struct WhnfMachine {
  const GlobalEnv& env;
  const ReductionFlags& flags;
  Fuel& fuel;

  Term run(Term t) {
    std::vector<Term> stack;  // first argument at the back
    while (true) {
      spend(fuel);
      if (const auto* app = as<AppN>(t)) {
        stack.push_back(app->arg);
        t = app->fn;
        continue;
      }
      if (const auto* lam = as<LamN>(t)) {
        if (flags.beta && !stack.empty()) {
          t = subst(lam->body, stack.back());
          stack.pop_back();
          continue;
        }
        break;
      }
      if (const auto* c = as<ConstN>(t)) {
        if (flags.delta) {
          if (const Term* body = env.const_body(c->name)) {
            t = *body;
            continue;
          }
        }
        break;
      }
      if (const auto* elim = as<ElimN>(t)) {
        if (flags.iota && try_iota(*elim, t, stack)) continue;
        break;
      }
      if (as<EqElimN>(t)) {
        if (flags.iota && try_eq_iota(t, stack)) continue;
        break;
      }
      break;
    }
    for (std::size_t i = stack.size(); i-- > 0;) t = mk_app(t, stack[i]);
    return t;
  }

  // eq_elim A x P px y (refl _ _)  ~>  px
  bool try_eq_iota(Term& t, std::vector<Term>& stack) {
    if (stack.size() < 6) return false;
    std::size_t target_slot = stack.size() - 6;
    Term target = run(stack[target_slot]);
    stack[target_slot] = target;
    auto [head, args] = unfold_apps(target);
    if (!as<ReflN>(head) || args.size() != 2) return false;
    t = stack[stack.size() - 4];  // px
    stack.erase(stack.end() - 6, stack.end());
    return true;
  }

  bool try_iota(const ElimN& elim, Term& t, std::vector<Term>& stack) {
    const InductiveDescriptor* desc = env.find_inductive(elim.ind);
    if (!desc) return false;
    std::size_t k = desc->params.size();
    std::size_t n = desc->ctors.size();
    std::size_t need = k + 1 + n + 1;
    if (stack.size() < need) return false;

    std::size_t target_slot = stack.size() - need;
    Term target = run(stack[target_slot]);
    stack[target_slot] = target;
    auto [head, cargs] = unfold_apps(target);
    const auto* ctor = as<CtorN>(head);
    if (!ctor || ctor->ind != elim.ind) return false;
    const Term& ctype = desc->ctors[ctor->index].type;
    std::size_t m = 0;
    for (Term c = ctype; as<PiN>(c); c = as<PiN>(c)->codomain) m++;
    if (cargs.size() != k + m) return false;

    std::vector<Term> params(cargs.begin(), cargs.begin() + k);
    std::vector<Term> args(cargs.begin() + k, cargs.end());
    // Eliminator spine below the target: params, motive, branches.
    std::vector<Term> spine;
    spine.reserve(k + 1 + n);
    for (std::size_t q = 0; q < k + 1 + n; q++)
      spine.push_back(stack[stack.size() - 1 - q]);

    Term branch = stack[stack.size() - 1 - (k + 1 + ctor->index)];

    // Branch applied to the constructor arguments, then one induction
    // hypothesis per recursive argument.
    std::vector<Term> applied = args;
    Term ct = ctype;
    for (std::size_t i = 0; i < m; i++) {
      const auto* pi = as<PiN>(ct);
      ArgShape shape = decompose_arg(pi->domain);
      if (as<IndN>(shape.head) && as<IndN>(shape.head)->name == elim.ind) {
        std::size_t q = shape.binder_domains.size();
        Term rec = mk_elim(elim.ind);
        for (std::size_t s = 0; s < spine.size(); s++)
          rec = mk_app(rec, lift(spine[s], q));
        Term call = lift(args[i], q);
        for (std::size_t x = 0; x < q; x++)
          call = mk_app(call, mk_var(q - 1 - x));
        Term ih = mk_app(rec, call);
        for (std::size_t x = q; x-- > 0;) {
          Term dom = instantiate_ctor_scope(shape.binder_domains[x], params,
                                            args, i, x);
          ih = mk_lam("x", dom, ih);
        }
        applied.push_back(ih);
      }
      ct = pi->codomain;
    }

    stack.erase(stack.end() - need, stack.end());
    t = mk_apps(branch, applied);
    return true;
  }
};

struct Converter {
  const GlobalEnv& env;
  const ReductionFlags& flags;
  const SrcLoc& site;
  Fuel& fuel;
  std::vector<Constraint> delta;
  std::optional<std::pair<Term, Term>> witness;

  bool sorts(const Sort& a, const Sort& b, ConvMode mode) {
    if (a.is_prop() && b.is_prop()) return true;
    if (mode == ConvMode::Cumulative && a.is_prop() && !b.is_prop())
      return true;  // Prop sits below every Type level
    if (a.is_prop() || b.is_prop()) return false;
    if (a.level == b.level) return true;
    delta.push_back({a.level, Constraint::Lax, b.level, site});
    if (mode == ConvMode::Equal)
      delta.push_back({b.level, Constraint::Lax, a.level, site});
    return true;
  }

  bool conv(const Term& a, const Term& b, ConvMode mode) {
    if (struct_eq(a, b)) return true;
    WhnfMachine machine{env, flags, fuel};
    Term wa = machine.run(a);
    Term wb = machine.run(b);
    if (const auto* sa = as<SortN>(wa)) {
      const auto* sb = as<SortN>(wb);
      if (sb && sorts(sa->sort, sb->sort, mode)) return true;
      return fail(wa, wb);
    }
    if (const auto* pa = as<PiN>(wa)) {
      const auto* pb = as<PiN>(wb);
      if (pb && conv(pa->domain, pb->domain, ConvMode::Equal) &&
          conv(pa->codomain, pb->codomain, mode))
        return true;
      return fail(wa, wb);
    }
    if (const auto* la = as<LamN>(wa)) {
      const auto* lb = as<LamN>(wb);
      if (lb && conv(la->domain, lb->domain, ConvMode::Equal) &&
          conv(la->body, lb->body, ConvMode::Equal))
        return true;
      return fail(wa, wb);
    }
    auto [ha, argsa] = unfold_apps(wa);
    auto [hb, argsb] = unfold_apps(wb);
    if (!heads_match(ha, hb) || argsa.size() != argsb.size())
      return fail(wa, wb);
    for (std::size_t i = 0; i < argsa.size(); i++)
      if (!conv(argsa[i], argsb[i], ConvMode::Equal)) return fail(wa, wb);
    return true;
  }

  bool fail(const Term& a, const Term& b) {
    if (!witness) witness = std::make_pair(a, b);
    return false;
  }

  static bool heads_match(const Term& a, const Term& b) {
    if (a->v.index() != b->v.index()) return false;
    if (const auto* va = as<VarN>(a)) return va->index == as<VarN>(b)->index;
    if (const auto* ca = as<ConstN>(a)) return ca->name == as<ConstN>(b)->name;
    if (const auto* ia = as<IndN>(a)) return ia->name == as<IndN>(b)->name;
    if (const auto* ka = as<CtorN>(a)) {
      const auto* kb = as<CtorN>(b);
      return ka->ind == kb->ind && ka->index == kb->index;
    }
    if (const auto* ea = as<ElimN>(a)) return ea->ind == as<ElimN>(b)->ind;
    if (as<EqN>(a) || as<ReflN>(a) || as<EqElimN>(a)) return true;
    return false;  // Sort/Pi/Lam handled before; App impossible post-unfold
  }
};

}  // namespace

Term whnf(const GlobalEnv& env, const Term& t, const ReductionFlags& flags,
          Fuel& fuel) {
  WhnfMachine machine{env, flags, fuel};
  return machine.run(t);
}

Term whnf(const GlobalEnv& env, const Term& t, const ReductionFlags& flags) {
  Fuel fuel(flags.fuel);
  return whnf(env, t, flags, fuel);
}

namespace {

Term normalize_rec(const GlobalEnv& env, const Term& t,
                   const ReductionFlags& flags, Fuel& fuel) {
  Term w = whnf(env, t, flags, fuel);
  if (const auto* lam = as<LamN>(w)) {
    return mk_lam(lam->name, normalize_rec(env, lam->domain, flags, fuel),
                  normalize_rec(env, lam->body, flags, fuel));
  }
  if (const auto* pi = as<PiN>(w)) {
    return mk_pi(pi->name, normalize_rec(env, pi->domain, flags, fuel),
                 normalize_rec(env, pi->codomain, flags, fuel));
  }
  auto [head, args] = unfold_apps(w);
  if (args.empty()) return w;
  // Post-whnf a spine head is atomic unless the relevant flag is off, in
  // which case its components still need normalizing.
  if (as<LamN>(head) || as<PiN>(head))
    head = normalize_rec(env, head, flags, fuel);
  std::vector<Term> nargs;
  nargs.reserve(args.size());
  for (const Term& a : args)
    nargs.push_back(normalize_rec(env, a, flags, fuel));
  return mk_apps(head, nargs);
}

}  // namespace

Term normalize(const GlobalEnv& env, const Term& t,
               const ReductionFlags& flags) {
  Fuel fuel(flags.fuel);
  return normalize_rec(env, t, flags, fuel);
}

ConversionResult convertible(const GlobalEnv& env, const Term& a,
                             const Term& b, ConvMode mode, const SrcLoc& site,
                             const ReductionFlags& flags) {
  Fuel fuel(flags.fuel);
  Converter conv{env, flags, site, fuel};
  if (conv.conv(a, b, mode)) return ConversionResult::yes(std::move(conv.delta));
  return ConversionResult::no(conv.witness->first, conv.witness->second);
}

}  // namespace picheck
