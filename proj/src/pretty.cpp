#include "picheck/pretty.hpp"

#include "picheck/kernel.hpp"

namespace picheck {

namespace {

using ast::ExprPtr;

ExprPtr ident(std::string name) {
  return ast::mk({ast::Ident{std::move(name)}, {}});
}

std::string freshen(const std::string& hint,
                    const std::vector<std::string>& ctx,
                    const std::set<std::string>& avoid) {
  std::string base = hint.empty() || hint == "_" ? "x" : hint;
  auto taken = [&](const std::string& n) {
    if (avoid.count(n)) return true;
    for (const auto& c : ctx)
      if (c == n) return true;
    return false;
  };
  if (!taken(base)) return base;
  for (int i = 0;; i++) {
    std::string candidate = base + std::to_string(i);
    if (!taken(candidate)) return candidate;
  }
}

struct Reader {
  const std::set<std::string>& avoid;
  const GlobalEnv* env;

  ExprPtr read(const Term& t, std::vector<std::string>& ctx) {
    if (const auto* var = as<VarN>(t)) {
      if (var->index < ctx.size())
        return ident(ctx[ctx.size() - 1 - var->index]);
      return ident("_ub" + std::to_string(var->index));  // out of scope
    }
    if (const auto* s = as<SortN>(t)) {
      if (s->sort.is_prop()) return ast::mk({ast::PropE{}, {}});
      return ast::mk({ast::TypeE{}, {}});
    }
    if (const auto* c = as<ConstN>(t)) return ident(c->name);
    if (const auto* i = as<IndN>(t)) return ident(i->name);
    if (const auto* k = as<CtorN>(t)) return ident(ctor_display(*k));
    if (const auto* e = as<ElimN>(t)) return ident(e->ind + "_rect");
    if (as<EqN>(t)) return ident("eq");
    if (as<ReflN>(t)) return ident("refl");
    if (as<EqElimN>(t)) return ident("eq_elim");
    if (as<AppN>(t)) {
      auto [head, args] = unfold_apps(t);
      // A fully applied built-in equality displays infix.
      if (as<EqN>(head) && args.size() == 3) {
        ExprPtr lhs = read(args[1], ctx);
        ExprPtr rhs = read(args[2], ctx);
        return ast::mk({ast::EqE{lhs, rhs}, {}});
      }
      ExprPtr out = read(head, ctx);
      for (const Term& a : args)
        out = ast::mk({ast::AppE{out, read(a, ctx)}, {}});
      return out;
    }
    if (const auto* lam = as<LamN>(t)) {
      ExprPtr dom = read(lam->domain, ctx);
      std::string name = freshen(lam->name, ctx, avoid);
      ctx.push_back(name);
      ExprPtr body = read(lam->body, ctx);
      ctx.pop_back();
      return ast::mk({ast::FunE{name, dom, body}, {}});
    }
    const auto* pi = as<PiN>(t);
    ExprPtr dom = read(pi->domain, ctx);
    if (!occurs_free(pi->codomain, 0)) {
      ctx.push_back("_");
      ExprPtr cod = read(pi->codomain, ctx);
      ctx.pop_back();
      return ast::mk({ast::ArrowE{dom, cod}, {}});
    }
    std::string name = freshen(pi->name, ctx, avoid);
    ctx.push_back(name);
    ExprPtr cod = read(pi->codomain, ctx);
    ctx.pop_back();
    return ast::mk({ast::ForallE{name, dom, cod}, {}});
  }

  std::string ctor_display(const CtorN& c) const {
    if (env) {
      if (const InductiveDescriptor* d = env->find_inductive(c.ind)) {
        if (c.index < d->ctors.size()) return d->ctors[c.index].name;
      }
    }
    return c.ind + "_ctor" + std::to_string(c.index);
  }
};

}  // namespace

ast::ExprPtr readback(const Term& t, std::vector<std::string> ctx_names,
                      const std::set<std::string>& avoid,
                      const GlobalEnv* env) {
  Reader reader{avoid, env};
  return reader.read(t, ctx_names);
}

std::string print_term(const Term& t, std::vector<std::string> ctx_names,
                       const std::set<std::string>& avoid,
                       const GlobalEnv* env) {
  return ast::print_expr(readback(t, std::move(ctx_names), avoid, env));
}

}  // namespace picheck
