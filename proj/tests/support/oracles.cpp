#include "support/oracles.hpp"

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace picheck::testsupport {

namespace {

// --- named representation ---------------------------------------------------

struct NTerm;
using NPtr = std::shared_ptr<const NTerm>;

struct NFree {
  std::size_t index;  // relative to the term's root context
};
struct NBound {
  std::string name;
};
struct NApp {
  NPtr fn, arg;
};
struct NLam {
  std::string name;
  NPtr domain, body;
};
struct NPi {
  std::string name;
  NPtr domain, codomain;
};
struct NLeaf {
  Term original;  // sorts, constants and the other variable-free leaves
};

struct NTerm {
  std::variant<NFree, NBound, NApp, NLam, NPi, NLeaf> v;
};

NPtr nmk(NTerm t) { return std::make_shared<const NTerm>(std::move(t)); }

struct Namer {
  int counter = 0;
  std::string fresh() { return "v" + std::to_string(counter++); }
};

NPtr to_named(const Term& t, std::vector<std::string>& stack, Namer& namer) {
  if (const auto* var = as<VarN>(t)) {
    if (var->index < stack.size())
      return nmk({NBound{stack[stack.size() - 1 - var->index]}});
    return nmk({NFree{var->index - stack.size()}});
  }
  if (const auto* app = as<AppN>(t)) {
    NPtr fn = to_named(app->fn, stack, namer);
    NPtr arg = to_named(app->arg, stack, namer);
    return nmk({NApp{fn, arg}});
  }
  if (const auto* lam = as<LamN>(t)) {
    NPtr dom = to_named(lam->domain, stack, namer);
    std::string name = namer.fresh();
    stack.push_back(name);
    NPtr body = to_named(lam->body, stack, namer);
    stack.pop_back();
    return nmk({NLam{name, dom, body}});
  }
  if (const auto* pi = as<PiN>(t)) {
    NPtr dom = to_named(pi->domain, stack, namer);
    std::string name = namer.fresh();
    stack.push_back(name);
    NPtr cod = to_named(pi->codomain, stack, namer);
    stack.pop_back();
    return nmk({NPi{name, dom, cod}});
  }
  return nmk({NLeaf{t}});
}

Term from_named(const NPtr& t, std::vector<std::string>& stack) {
  if (const auto* f = std::get_if<NFree>(&t->v))
    return mk_var(f->index + stack.size());
  if (const auto* b = std::get_if<NBound>(&t->v)) {
    for (std::size_t i = stack.size(); i-- > 0;)
      if (stack[i] == b->name) return mk_var(stack.size() - 1 - i);
    throw std::logic_error("named oracle: unbound name " + b->name);
  }
  if (const auto* app = std::get_if<NApp>(&t->v)) {
    Term fn = from_named(app->fn, stack);
    Term arg = from_named(app->arg, stack);
    return mk_app(fn, arg);
  }
  if (const auto* lam = std::get_if<NLam>(&t->v)) {
    Term dom = from_named(lam->domain, stack);
    stack.push_back(lam->name);
    Term body = from_named(lam->body, stack);
    stack.pop_back();
    return mk_lam("b", dom, body);
  }
  if (const auto* pi = std::get_if<NPi>(&t->v)) {
    Term dom = from_named(pi->domain, stack);
    stack.push_back(pi->name);
    Term cod = from_named(pi->codomain, stack);
    stack.pop_back();
    return mk_pi("b", dom, cod);
  }
  return std::get<NLeaf>(t->v).original;
}

NPtr map_free(const NPtr& t, const std::function<NPtr(std::size_t)>& fn) {
  if (const auto* f = std::get_if<NFree>(&t->v)) return fn(f->index);
  if (const auto* app = std::get_if<NApp>(&t->v))
    return nmk({NApp{map_free(app->fn, fn), map_free(app->arg, fn)}});
  if (const auto* lam = std::get_if<NLam>(&t->v))
    return nmk(
        {NLam{lam->name, map_free(lam->domain, fn), map_free(lam->body, fn)}});
  if (const auto* pi = std::get_if<NPi>(&t->v))
    return nmk(
        {NPi{pi->name, map_free(pi->domain, fn), map_free(pi->codomain, fn)}});
  return t;
}

}  // namespace

Term named_lift(const Term& t, std::size_t amount, std::size_t cutoff) {
  Namer namer;
  std::vector<std::string> stack;
  NPtr named = to_named(t, stack, namer);
  NPtr shifted = map_free(named, [&](std::size_t index) {
    return nmk({NFree{index >= cutoff ? index + amount : index}});
  });
  return from_named(shifted, stack);
}

Term named_subst(const Term& t, const Term& replacement, std::size_t target) {
  Namer namer;
  std::vector<std::string> stack;
  NPtr named = to_named(t, stack, namer);
  NPtr named_repl = to_named(replacement, stack, namer);
  NPtr replaced = map_free(named, [&](std::size_t index) -> NPtr {
    if (index == target) return named_repl;
    if (index > target) return nmk({NFree{index - 1}});
    return nmk({NFree{index}});
  });
  return from_named(replaced, stack);
}

// --- brute-force universe satisfiability ------------------------------------

namespace {

struct BruteSearch {
  const std::vector<Level>& levels;
  const std::vector<Constraint>& cs;
  const std::map<std::uint32_t, std::size_t>& position;
  const std::vector<std::vector<std::size_t>>& ready_at;
  std::vector<std::uint64_t>& value;
  std::uint64_t max_value;

  bool consistent(std::size_t assigned) const {
    for (std::size_t c : ready_at[assigned]) {
      std::uint64_t lo = value[position.at(cs[c].lo.id)];
      std::uint64_t hi = value[position.at(cs[c].hi.id)];
      if (cs[c].rel == Constraint::Strict ? lo >= hi : lo > hi) return false;
    }
    return true;
  }

  bool run(std::size_t i) {
    if (i == levels.size()) return true;
    for (std::uint64_t v = 0; v <= max_value; v++) {
      value[i] = v;
      if (consistent(i + 1) && run(i + 1)) return true;
    }
    return false;
  }
};

}  // namespace

std::optional<std::map<std::uint32_t, std::uint64_t>> brute_force_sat(
    const ConstraintSet& set, std::uint64_t max_value) {
  const auto& levels = set.levels();
  const auto& cs = set.constraints();
  std::map<std::uint32_t, std::size_t> position;
  for (std::size_t i = 0; i < levels.size(); i++) position[levels[i].id] = i;

  // A constraint becomes checkable once both endpoints are assigned.
  std::vector<std::vector<std::size_t>> ready_at(levels.size() + 1);
  for (std::size_t c = 0; c < cs.size(); c++) {
    std::size_t last =
        std::max(position.at(cs[c].lo.id), position.at(cs[c].hi.id));
    ready_at[last + 1].push_back(c);
  }

  std::vector<std::uint64_t> value(levels.size(), 0);
  BruteSearch search{levels, cs, position, ready_at, value, max_value};
  if (!search.run(0)) return std::nullopt;
  std::map<std::uint32_t, std::uint64_t> out;
  for (std::size_t i = 0; i < levels.size(); i++) out[levels[i].id] = value[i];
  return out;
}

// --- reduction oracles -------------------------------------------------------

Term innermost_normalize(const GlobalEnv& env, const Term& t,
                         const ReductionFlags& flags) {
  struct Inner {
    const GlobalEnv& env;
    const ReductionFlags& flags;
    Fuel fuel;

    Term run(const Term& t) {
      if (fuel.remaining == 0)
        throw CheckError(ErrKind::FuelExhausted, "innermost budget", {});
      fuel.remaining--;
      if (const auto* lam = as<LamN>(t))
        return mk_lam(lam->name, run(lam->domain), run(lam->body));
      if (const auto* pi = as<PiN>(t))
        return mk_pi(pi->name, run(pi->domain), run(pi->codomain));
      if (as<AppN>(t)) {
        auto [head, args] = unfold_apps(t);
        if (as<LamN>(head) || as<PiN>(head)) head = run(head);
        std::vector<Term> nargs;
        for (const Term& a : args) nargs.push_back(run(a));
        Term rebuilt = mk_apps(head, nargs);
        Term contracted = whnf(env, rebuilt, flags, fuel);
        if (struct_eq(contracted, rebuilt)) return rebuilt;
        return run(contracted);
      }
      if (as<ConstN>(t)) {
        Term contracted = whnf(env, t, flags, fuel);
        if (struct_eq(contracted, t)) return t;
        return run(contracted);
      }
      return t;
    }
  };
  Inner inner{env, flags, Fuel(flags.fuel)};
  return inner.run(t);
}

namespace {

// A single head contraction. Eliminator steps fire only when the scrutinee
// is already constructor-headed, so this is one step, not a head run.
std::optional<Term> head_step(const GlobalEnv& env, const Term& t) {
  auto [head, args] = unfold_apps(t);
  if (const auto* lam = as<LamN>(head)) {
    if (args.empty()) return std::nullopt;
    Term contracted = subst(lam->body, args[0]);
    return mk_apps(contracted,
                   std::vector<Term>(args.begin() + 1, args.end()));
  }
  if (const auto* c = as<ConstN>(head)) {
    if (const Term* body = env.const_body(c->name)) return mk_apps(*body, args);
    return std::nullopt;
  }
  std::size_t need = 0;
  if (const auto* e = as<ElimN>(head)) {
    const InductiveDescriptor* d = env.find_inductive(e->ind);
    if (!d) return std::nullopt;
    need = d->params.size() + 1 + d->ctors.size() + 1;
  } else if (as<EqElimN>(head)) {
    need = 6;
  } else {
    return std::nullopt;
  }
  if (args.size() < need) return std::nullopt;
  auto [thead, targs] = unfold_apps(args[need - 1]);
  (void)targs;
  if (!as<CtorN>(thead) && !as<ReflN>(thead)) return std::nullopt;
  // The scrutinee is a value, so one whnf pass performs exactly the
  // eliminator contraction (beta is off to keep it a single step).
  ReductionFlags one{false, false, true, 4096};
  Fuel fuel(one.fuel);
  Term reduced = whnf(env, t, one, fuel);
  if (struct_eq(reduced, t)) return std::nullopt;
  return reduced;
}

}  // namespace

std::optional<Term> reduce_step(const GlobalEnv& env, const Term& t) {
  if (std::optional<Term> contracted = head_step(env, t)) return contracted;
  if (const auto* app = as<AppN>(t)) {
    if (std::optional<Term> fn = reduce_step(env, app->fn))
      return mk_app(*fn, app->arg);
    if (std::optional<Term> arg = reduce_step(env, app->arg))
      return mk_app(app->fn, *arg);
    return std::nullopt;
  }
  if (const auto* lam = as<LamN>(t)) {
    if (std::optional<Term> dom = reduce_step(env, lam->domain))
      return mk_lam(lam->name, *dom, lam->body);
    if (std::optional<Term> body = reduce_step(env, lam->body))
      return mk_lam(lam->name, lam->domain, *body);
    return std::nullopt;
  }
  if (const auto* pi = as<PiN>(t)) {
    if (std::optional<Term> dom = reduce_step(env, pi->domain))
      return mk_pi(pi->name, *dom, pi->codomain);
    if (std::optional<Term> cod = reduce_step(env, pi->codomain))
      return mk_pi(pi->name, pi->domain, *cod);
    return std::nullopt;
  }
  if (const auto* c = as<ConstN>(t)) {
    if (const Term* body = env.const_body(c->name)) return *body;
  }
  return std::nullopt;
}

}  // namespace picheck::testsupport
