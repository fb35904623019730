#include "picheck/kernel.hpp"

#include <algorithm>
#include <sstream>

#include "picheck/pretty.hpp"

namespace picheck {

const char* to_string(ErrKind k) {
  switch (k) {
    case ErrKind::ParseError: return "ParseError";
    case ErrKind::UnboundName: return "UnboundName";
    case ErrKind::NotAFunction: return "NotAFunction";
    case ErrKind::DomainNotASort: return "DomainNotASort";
    case ErrKind::TypeMismatch: return "TypeMismatch";
    case ErrKind::PositivityViolation: return "PositivityViolation";
    case ErrKind::ArityMismatch: return "ArityMismatch";
    case ErrKind::NameClash: return "NameClash";
    case ErrKind::FuelExhausted: return "FuelExhausted";
    case ErrKind::UniverseInconsistency: return "UniverseInconsistency";
    case ErrKind::FileNotFound: return "FileNotFound";
    case ErrKind::RequireCycle: return "RequireCycle";
  }
  return "UnknownError";
}

GlobalEnv::GlobalEnv() {
  names_["eq"] = {NameRef::Eq};
  names_["refl"] = {NameRef::Refl};
  names_["eq_elim"] = {NameRef::EqElim};
}

std::optional<NameRef> GlobalEnv::resolve(const std::string& name) const {
  auto it = names_.find(name);
  if (it == names_.end()) return std::nullopt;
  return it->second;
}

bool GlobalEnv::has_name(const std::string& name) const {
  return names_.count(name) != 0;
}

const InductiveDescriptor* GlobalEnv::find_inductive(
    const std::string& name) const {
  auto ref = resolve(name);
  if (!ref || ref->kind != NameRef::Ind) return nullptr;
  return &std::get<IndDecl>(decls_[ref->decl_index].v).desc;
}

const InductiveDescriptor& GlobalEnv::inductive(const std::string& name) const {
  const InductiveDescriptor* d = find_inductive(name);
  if (!d) throw CheckError(ErrKind::UnboundName, "no inductive " + name, {});
  return *d;
}

const Term* GlobalEnv::const_body(const std::string& name) const {
  auto ref = resolve(name);
  if (!ref || ref->kind != NameRef::Def) return nullptr;
  return &std::get<DefDecl>(decls_[ref->decl_index].v).body;
}

Term GlobalEnv::const_type(const std::string& name) const {
  auto ref = resolve(name);
  if (ref) {
    if (ref->kind == NameRef::Param)
      return std::get<ParamDecl>(decls_[ref->decl_index].v).type;
    if (ref->kind == NameRef::Def)
      return std::get<DefDecl>(decls_[ref->decl_index].v).type;
  }
  throw CheckError(ErrKind::UnboundName, "unbound constant " + name, {});
}

void GlobalEnv::push_param(std::string name, Term type, SrcLoc where) {
  names_[name] = {NameRef::Param, decls_.size()};
  decls_.push_back({std::move(name), ParamDecl{std::move(type)}, std::move(where)});
}

void GlobalEnv::push_def(std::string name, Term type, Term body, SrcLoc where) {
  names_[name] = {NameRef::Def, decls_.size()};
  decls_.push_back(
      {std::move(name), DefDecl{std::move(type), std::move(body)}, std::move(where)});
}

void GlobalEnv::push_inductive(InductiveDescriptor desc, SrcLoc where) {
  std::size_t index = decls_.size();
  names_[desc.name] = {NameRef::Ind, index};
  names_[desc.name + "_rect"] = {NameRef::Elim, index};
  for (std::size_t j = 0; j < desc.ctors.size(); j++)
    names_[desc.ctors[j].name] = {NameRef::Ctor, index, j};
  std::string name = desc.name;
  decls_.push_back({std::move(name), IndDecl{std::move(desc)}, std::move(where)});
}

// ---------------------------------------------------------------------------
// Built-in equality

Term eq_type(LevelAlloc& alloc, const SrcLoc& site) {
  Level u = alloc.fresh(site);
  // forall (A : Type u), A -> A -> Prop
  return mk_pi("A", mk_type(u),
               mk_arrow(mk_var(0), mk_arrow(mk_var(1), mk_prop())));
}

Term refl_type(LevelAlloc& alloc, const SrcLoc& site) {
  Level u = alloc.fresh(site);
  // forall (A : Type u) (x : A), eq A x x
  return mk_pi(
      "A", mk_type(u),
      mk_pi("x", mk_var(0),
            mk_apps(mk_eq_ref(), {mk_var(1), mk_var(0), mk_var(0)})));
}

Term eq_elim_type(LevelAlloc& alloc, const SrcLoc& site) {
  Level u = alloc.fresh(site);
  Level w = alloc.fresh(site);
  // forall (A : Type u) (x : A) (P : A -> Type w),
  //   P x -> forall (y : A), eq A x y -> P y
  return mk_pi(
      "A", mk_type(u),
      mk_pi(
          "x", mk_var(0),
          mk_pi(
              "P", mk_arrow(mk_var(1), mk_type(w)),
              mk_pi("h", mk_app(mk_var(0), mk_var(1)),
                    mk_pi("y", mk_var(3),
                          mk_pi("e",
                                mk_apps(mk_eq_ref(),
                                        {mk_var(4), mk_var(3), mk_var(0)}),
                                mk_app(mk_var(3), mk_var(1))))))));
}

// ---------------------------------------------------------------------------
// Inductive schemes

namespace {

// I applied to its parameters, where the innermost parameter binder sits at
// de Bruijn index `shift`.
Term ind_applied(const InductiveDescriptor& d, std::size_t shift) {
  Term t = mk_ind(d.name);
  std::size_t k = d.params.size();
  for (std::size_t i = 0; i < k; i++) t = mk_app(t, mk_var(shift + k - 1 - i));
  return t;
}

Term wrap_params(const InductiveDescriptor& d, Term body) {
  const auto& entries = d.params.entries();
  for (std::size_t i = entries.size(); i-- > 0;)
    body = mk_pi(entries[i].name, entries[i].type, body);
  return body;
}

std::size_t ctor_arg_count(const Term& ctype) {
  std::size_t m = 0;
  for (Term c = ctype; as<PiN>(c); c = as<PiN>(c)->codomain) m++;
  return m;
}

struct ArgView {
  std::string name;
  Term type;          // in [params, a_0..a_{i-1}]
  bool recursive;
  std::vector<Term> binder_domains;  // for recursive args: the B telescope
};

std::vector<ArgView> ctor_args(const InductiveDescriptor& d,
                               const Term& ctype) {
  std::vector<ArgView> out;
  Term c = ctype;
  while (const auto* pi = as<PiN>(c)) {
    ArgView v{pi->name, pi->domain, false, {}};
    Term a = pi->domain;
    std::vector<Term> domains;
    while (const auto* inner = as<PiN>(a)) {
      domains.push_back(inner->domain);
      a = inner->codomain;
    }
    auto [head, args] = unfold_apps(a);
    if (const auto* ind = as<IndN>(head); ind && ind->name == d.name) {
      v.recursive = true;
      v.binder_domains = std::move(domains);
    }
    out.push_back(std::move(v));
    c = pi->codomain;
  }
  return out;
}

// Branch type for constructor j, scoped under [params, P, f_0..f_{j-1}]:
//   forall (a_0 : A_0) ... (a_{m-1} : A_{m-1}),
//     IH for each recursive a_t  ->  P (c_j params args)
Term branch_type(const InductiveDescriptor& d, std::size_t j) {
  std::size_t k = d.params.size();
  const Term& ctype = d.ctors[j].type;
  std::vector<ArgView> args = ctor_args(d, ctype);
  std::size_t m = args.size();

  std::vector<std::size_t> rec_positions;
  for (std::size_t t = 0; t < m; t++)
    if (args[t].recursive) rec_positions.push_back(t);
  std::size_t r = rec_positions.size();

  // Conclusion, scoped under [prefix, a_0..a_{m-1}, ih_0..ih_{r-1}]:
  //   P (c_j p-vars a-vars)
  Term ctor_app = mk_ctor(d.name, j);
  for (std::size_t p = 0; p < k; p++)
    ctor_app = mk_app(ctor_app, mk_var(r + m + j + 1 + (k - 1 - p)));
  for (std::size_t t = 0; t < m; t++)
    ctor_app = mk_app(ctor_app, mk_var(r + m - 1 - t));
  Term out = mk_app(mk_var(r + m + j), ctor_app);

  // Induction hypotheses, innermost last. The IH for argument t of shape
  // forall (x : B...), I params is forall (x : B'...), P (a_t x...).
  for (std::size_t e = r; e-- > 0;) {
    std::size_t t = rec_positions[e];
    std::size_t q = args[t].binder_domains.size();
    Term concl = mk_var(q + e + m + j);  // P
    Term call = mk_var(q + e + (m - 1 - t));
    for (std::size_t x = 0; x < q; x++) call = mk_app(call, mk_var(q - 1 - x));
    concl = mk_app(concl, call);
    for (std::size_t x = q; x-- > 0;) {
      // Rebase B_x from [params, a_0..a_{t-1}, x_0..x_{x-1}] to
      // [prefix, a_0..a_{m-1}, ih_0..ih_{e-1}, x_0..x_{x-1}].
      Term dom = subst_map(
          args[t].binder_domains[x],
          [&](std::size_t rel, std::size_t depth) -> Term {
            if (rel < t) return mk_var(rel + e + (m - t) + depth);
            return mk_var(rel + e + (m - t) + (j + 1) + depth);
          },
          x);
      concl = mk_pi("x", dom, concl);
    }
    out = mk_arrow(concl, out);
  }

  // Argument binders; parameter references skip over P and f_0..f_{j-1}.
  for (std::size_t i = m; i-- > 0;)
    out = mk_pi(args[i].name, lift(args[i].type, j + 1, i), out);
  return out;
}

Term eliminator_scheme(const InductiveDescriptor& d, Sort motive_sort) {
  std::size_t n = d.ctors.size();

  // forall (x : I params), P x   under [params, P, branches]
  Term tail = mk_pi("x", ind_applied(d, n + 1),
                    mk_app(mk_var(n + 1), mk_var(0)));
  for (std::size_t j = n; j-- > 0;)
    tail = mk_pi("f", branch_type(d, j), tail);
  Term motive = mk_pi("x", ind_applied(d, 0), mk_sort(motive_sort));
  tail = mk_pi("P", motive, tail);
  return wrap_params(d, tail);
}

}  // namespace

Term inductive_type(const InductiveDescriptor& desc) {
  return wrap_params(desc, mk_sort(desc.arity));
}

Term ctor_type(const InductiveDescriptor& desc, std::size_t ctor_index) {
  return wrap_params(desc, desc.ctors[ctor_index].type);
}

Term eliminator_type(const GlobalEnv& env, LevelAlloc& alloc,
                     const std::string& ind_name, const SrcLoc& site) {
  const InductiveDescriptor& d = env.inductive(ind_name);
  if (d.arity.is_prop() && !d.ctors.empty())
    return eliminator_scheme(d, Sort::prop());
  return eliminator_scheme(d, Sort::type(alloc.fresh(site)));
}

// ---------------------------------------------------------------------------
// Typing

namespace {

struct Checker {
  const GlobalEnv& env;
  LevelAlloc& alloc;
  const SrcLoc& site;
  const ReductionFlags& flags;
  std::vector<Constraint> delta;

  [[noreturn]] void err(ErrKind k, const std::string& msg) {
    throw CheckError(k, msg, site);
  }

  Sort expect_sort(const Term& type_of, const char* what) {
    Term w = whnf(env, type_of, flags);
    if (const auto* s = as<SortN>(w)) return s->sort;
    std::ostringstream os;
    os << what << " has type " << print_term(w, {}, {}, &env)
       << ", which is not a sort";
    err(ErrKind::DomainNotASort, os.str());
  }

  Term infer(Telescope& ctx, const Term& t) {
    if (const auto* var = as<VarN>(t)) {
      if (var->index >= ctx.size())
        err(ErrKind::UnboundName,
            "variable index " + std::to_string(var->index) + " out of scope");
      return ctx.var_type(var->index);
    }
    if (const auto* s = as<SortN>(t)) {
      Level v = alloc.fresh(site);
      if (!s->sort.is_prop())
        delta.push_back({s->sort.level, Constraint::Strict, v, site});
      return mk_type(v);
    }
    if (const auto* c = as<ConstN>(t)) return env.const_type(c->name);
    if (const auto* i = as<IndN>(t)) return inductive_type(env.inductive(i->name));
    if (const auto* k = as<CtorN>(t)) {
      const InductiveDescriptor& d = env.inductive(k->ind);
      if (k->index >= d.ctors.size())
        err(ErrKind::UnboundName, "no such constructor of " + k->ind);
      return ctor_type(d, k->index);
    }
    if (const auto* e = as<ElimN>(t))
      return eliminator_type(env, alloc, e->ind, site);
    if (as<EqN>(t)) return eq_type(alloc, site);
    if (as<ReflN>(t)) return refl_type(alloc, site);
    if (as<EqElimN>(t)) return eq_elim_type(alloc, site);
    if (const auto* app = as<AppN>(t)) {
      Term tf = infer(ctx, app->fn);
      Term w = whnf(env, tf, flags);
      const auto* pi = as<PiN>(w);
      if (!pi) {
        std::ostringstream os;
        os << "cannot apply a term of type " << print_term(w, {}, {}, &env);
        err(ErrKind::NotAFunction, os.str());
      }
      check(ctx, app->arg, pi->domain);
      return subst(pi->codomain, app->arg);
    }
    if (const auto* lam = as<LamN>(t)) {
      Term ds = infer(ctx, lam->domain);
      expect_sort(ds, "binder domain");
      ctx.push(lam->name, lam->domain);
      Term body_type = infer(ctx, lam->body);
      ctx.pop();
      return mk_pi(lam->name, lam->domain, body_type);
    }
    const auto* pi = as<PiN>(t);
    Term ds = infer(ctx, pi->domain);
    Sort sa = expect_sort(ds, "binder domain");
    ctx.push(pi->name, pi->domain);
    Term cs = infer(ctx, pi->codomain);
    Sort sb = expect_sort(cs, "function codomain");
    ctx.pop();
    if (sb.is_prop()) return mk_prop();  // Prop is impredicative
    Level w = alloc.fresh(site);
    if (!sa.is_prop())
      delta.push_back({sa.level, Constraint::Lax, w, site});
    delta.push_back({sb.level, Constraint::Lax, w, site});
    return mk_type(w);
  }

  // If a term is a sort, or a constant chain that delta-reduces to one,
  // its sort membership is decided directly: Type(u) : Type(v) iff u < v
  // and Prop : Type(v) always. This places a definition that aliases a
  // sort without materializing an intermediate level.
  std::optional<Sort> sort_chain(const Term& t) {
    Term cur = t;
    for (int guard = 0; guard < 4096; guard++) {
      if (const auto* s = as<SortN>(cur)) return s->sort;
      if (const auto* c = as<ConstN>(cur)) {
        const Term* body = env.const_body(c->name);
        if (!body) return std::nullopt;
        cur = *body;
        continue;
      }
      return std::nullopt;
    }
    return std::nullopt;
  }

  void check(Telescope& ctx, const Term& t, const Term& expected) {
    if (std::optional<Sort> s = sort_chain(t)) {
      Term we = whnf(env, expected, flags);
      if (const auto* es = as<SortN>(we)) {
        if (!es->sort.is_prop()) {
          if (s->is_prop()) return;  // Prop lives in every Type level
          delta.push_back({s->level, Constraint::Strict, es->sort.level, site});
          return;
        }
        std::ostringstream os;
        os << "a sort cannot be checked against Prop";
        err(ErrKind::TypeMismatch, os.str());
      }
      std::ostringstream os;
      os << "expected " << print_term(we, {}, {}, &env) << ", found a sort";
      err(ErrKind::TypeMismatch, os.str());
    }
    Term inferred = infer(ctx, t);
    ConversionResult r =
        convertible(env, inferred, expected, ConvMode::Cumulative, site, flags);
    if (!r.ok) {
      std::ostringstream os;
      os << "type mismatch: term has type "
         << print_term(inferred, {}, {}, &env) << " but is expected to have type "
         << print_term(expected, {}, {}, &env);
      if (r.witness) {
        os << " (head forms " << print_term(r.witness->first, {}, {}, &env)
           << " vs " << print_term(r.witness->second, {}, {}, &env) << ")";
      }
      err(ErrKind::TypeMismatch, os.str());
    }
    for (const Constraint& c : r.delta) delta.push_back(c);
  }
};

}  // namespace

TypingResult infer_type(const GlobalEnv& env, LevelAlloc& alloc,
                        const Telescope& ctx, const Term& t,
                        const SrcLoc& site, const ReductionFlags& flags) {
  Checker checker{env, alloc, site, flags};
  Telescope scratch = ctx;
  Term type = checker.infer(scratch, t);
  return {std::move(type), std::move(checker.delta)};
}

std::vector<Constraint> check_type(const GlobalEnv& env, LevelAlloc& alloc,
                                   const Telescope& ctx, const Term& t,
                                   const Term& expected, const SrcLoc& site,
                                   const ReductionFlags& flags) {
  Checker checker{env, alloc, site, flags};
  Telescope scratch = ctx;
  checker.check(scratch, t, expected);
  return std::move(checker.delta);
}

// ---------------------------------------------------------------------------
// Declarations

namespace {

void require_unused(const GlobalEnv& env, const std::string& name,
                    const SrcLoc& site) {
  if (env.has_name(name))
    throw CheckError(ErrKind::NameClash, "name " + name + " is already declared",
                     site);
}

// The declared type of a Parameter or Definition must itself be a type.
void require_is_type(const GlobalEnv& env, LevelAlloc& alloc, const Term& type,
                     const SrcLoc& site, const ReductionFlags& flags,
                     std::vector<Constraint>& delta) {
  TypingResult r = infer_type(env, alloc, {}, type, site, flags);
  Term w = whnf(env, r.type, flags);
  if (!as<SortN>(w)) {
    std::ostringstream os;
    os << "declared type has type " << print_term(w, {}, {}, &env)
       << ", which is not a sort";
    throw CheckError(ErrKind::DomainNotASort, os.str(), site);
  }
  for (const Constraint& c : r.delta) delta.push_back(c);
}

void check_positivity(const GlobalEnv& env, const InductiveDescriptor& d,
                      const SrcLoc& site) {
  std::size_t k = d.params.size();
  auto mentions = [&](const Term& t) {
    struct Scan {
      const std::string& name;
      bool walk(const Term& t) {
        if (const auto* i = as<IndN>(t)) return i->name == name;
        if (const auto* app = as<AppN>(t))
          return walk(app->fn) || walk(app->arg);
        if (const auto* lam = as<LamN>(t))
          return walk(lam->domain) || walk(lam->body);
        if (const auto* pi = as<PiN>(t))
          return walk(pi->domain) || walk(pi->codomain);
        return false;
      }
    };
    return Scan{d.name}.walk(t);
  };

  // The head must be the inductive applied to exactly the parameter
  // variables, where `depth` binders sit between the params and the head.
  auto exact_param_app = [&](const Term& head, const std::vector<Term>& args,
                             std::size_t depth) {
    const auto* ind = as<IndN>(head);
    if (!ind || ind->name != d.name || args.size() != k) return false;
    for (std::size_t p = 0; p < k; p++) {
      const auto* var = as<VarN>(args[p]);
      if (!var || var->index != depth + (k - 1 - p)) return false;
    }
    return true;
  };

  for (std::size_t j = 0; j < d.ctors.size(); j++) {
    const Ctor& ctor = d.ctors[j];
    Term c = ctor.type;
    std::size_t nargs = 0;
    while (const auto* pi = as<PiN>(c)) {
      const Term& arg_type = pi->domain;
      if (mentions(arg_type)) {
        // Allowed occurrence shape: forall (x : B...), I params with the
        // inductive absent from every B.
        Term a = arg_type;
        std::size_t q = 0;
        bool bad = false;
        while (const auto* inner = as<PiN>(a)) {
          if (mentions(inner->domain)) bad = true;
          a = inner->codomain;
          q++;
        }
        auto [head, args] = unfold_apps(a);
        if (bad || !exact_param_app(head, args, q + nargs)) {
          std::ostringstream os;
          os << "constructor " << ctor.name << " of " << d.name
             << ": non-positive occurrence in argument type "
             << print_term(arg_type, {}, {}, &env);
          throw CheckError(ErrKind::PositivityViolation, os.str(), site);
        }
      }
      c = pi->codomain;
      nargs++;
    }
    auto [head, args] = unfold_apps(c);
    if (!exact_param_app(head, args, nargs)) {
      std::ostringstream os;
      os << "constructor " << ctor.name << " must produce " << d.name
         << " applied to exactly its parameters";
      throw CheckError(ErrKind::ArityMismatch, os.str(), site);
    }
  }
}

// Projection for field j of a record: the motive rewrites earlier field
// references into applications of the earlier projections.
void add_record_projections(GlobalEnv& env, LevelAlloc& alloc,
                            const InductiveDescriptor& d, const SrcLoc& site,
                            const ReductionFlags& flags) {
  std::size_t k = d.params.size();
  const Term& ctype = d.ctors[0].type;
  std::vector<ArgView> fields = ctor_args(d, ctype);
  std::size_t n_fields = fields.size();

  for (std::size_t j = 0; j < n_fields; j++) {
    const std::string& fname = d.field_names[j];
    require_unused(env, fname, site);

    // Field type rebased from [params, f_0..f_{j-1}] to [params, m]:
    // field refs become (proj params m), param refs shift past m.
    auto rebase = [&](const Term& t) {
      return subst_map(t, [&](std::size_t rel, std::size_t depth) -> Term {
        if (rel < j) {
          std::size_t field = j - 1 - rel;
          Term proj = mk_const(d.field_names[field]);
          for (std::size_t p = 0; p < k; p++)
            proj = mk_app(proj, mk_var(depth + 1 + (k - 1 - p)));
          return mk_app(proj, mk_var(depth));
        }
        return mk_var(rel - j + 1 + depth);
      });
    };
    Term result_type = rebase(fields[j].type);

    // proj_j := fun params (m : I params) =>
    //   I_rect params (fun m => result_type) (fun fields => f_j) m
    // The motive binds its own target; references to m become references
    // to that binder, so the lift keeps index 0 fixed.
    Term motive = mk_lam("m", ind_applied(d, 1), lift(result_type, 1, 1));
    Term branch = mk_var(n_fields - 1 - j);
    for (std::size_t i = n_fields; i-- > 0;)
      branch = mk_lam(fields[i].name, lift(fields[i].type, 1, i), branch);

    Term spine = mk_elim(d.name);
    for (std::size_t p = 0; p < k; p++)
      spine = mk_app(spine, mk_var(k - p));  // params, shifted past m
    spine = mk_apps(spine, {motive, branch, mk_var(0)});

    Term body = mk_lam("m", ind_applied(d, 0), spine);
    Term type = mk_pi("m", ind_applied(d, 0), result_type);
    const auto& entries = d.params.entries();
    for (std::size_t i = entries.size(); i-- > 0;) {
      body = mk_lam(entries[i].name, entries[i].type, body);
      type = mk_pi(entries[i].name, entries[i].type, type);
    }
    env = add_definition(env, alloc, fname, type, body, site, flags);
  }
}

}  // namespace

GlobalEnv check_inductive(const GlobalEnv& env, LevelAlloc& alloc,
                          const InductiveDescriptor& desc, const SrcLoc& site,
                          const ReductionFlags& flags) {
  require_unused(env, desc.name, site);
  require_unused(env, desc.name + "_rect", site);
  for (const Ctor& c : desc.ctors) require_unused(env, c.name, site);
  if (desc.is_record &&
      (desc.ctors.size() != 1 ||
       desc.field_names.size() != ctor_arg_count(desc.ctors[0].type)))
    throw CheckError(ErrKind::ArityMismatch,
                     "record field list does not match constructor", site);

  GlobalEnv out = env;
  std::vector<Constraint> delta;

  // Parameter telescope: each entry must be a type in the prefix context.
  {
    Telescope ctx;
    for (const auto& entry : desc.params.entries()) {
      TypingResult r = infer_type(out, alloc, ctx, entry.type, site, flags);
      Term w = whnf(out, r.type, flags);
      if (!as<SortN>(w))
        throw CheckError(ErrKind::DomainNotASort,
                         "inductive parameter " + entry.name +
                             " does not have a sort-typed type",
                         site);
      for (const Constraint& c : r.delta) delta.push_back(c);
      ctx.push(entry.name, entry.type);
    }
  }

  // Constructors are checked with the inductive itself in scope.
  out.push_inductive(desc, site);
  Telescope param_ctx = desc.params;
  for (const Ctor& ctor : desc.ctors) {
    TypingResult r = infer_type(out, alloc, param_ctx, ctor.type, site, flags);
    Term w = whnf(out, r.type, flags);
    const auto* s = as<SortN>(w);
    if (!s)
      throw CheckError(ErrKind::DomainNotASort,
                       "constructor " + ctor.name + " is not a type", site);
    for (const Constraint& c : r.delta) delta.push_back(c);
    // Constructor sort fits under the declared arity (cumulatively).
    if (desc.arity.is_prop()) {
      if (!s->sort.is_prop())
        throw CheckError(ErrKind::ArityMismatch,
                         "constructor " + ctor.name +
                             " lives in Type but the inductive is in Prop",
                         site);
    } else if (!s->sort.is_prop()) {
      delta.push_back({s->sort.level, Constraint::Lax, desc.arity.level, site});
    }
  }

  check_positivity(out, desc, site);
  out.constraints.add_all(delta);

  if (desc.is_record)
    add_record_projections(out, alloc, desc, site, flags);
  return out;
}

GlobalEnv add_definition(const GlobalEnv& env, LevelAlloc& alloc,
                         const std::string& name,
                         const std::optional<Term>& type, const Term& body,
                         const SrcLoc& site, const ReductionFlags& flags) {
  require_unused(env, name, site);
  std::vector<Constraint> delta;
  Term stored_type;
  if (type) {
    require_is_type(env, alloc, *type, site, flags, delta);
    for (const Constraint& c :
         check_type(env, alloc, {}, body, *type, site, flags))
      delta.push_back(c);
    stored_type = *type;
  } else {
    TypingResult r = infer_type(env, alloc, {}, body, site, flags);
    delta = std::move(r.delta);
    stored_type = r.type;
  }
  GlobalEnv out = env;
  out.constraints.add_all(delta);
  out.push_def(name, stored_type, body, site);
  return out;
}

GlobalEnv add_parameter(const GlobalEnv& env, LevelAlloc& alloc,
                        const std::string& name, const Term& type,
                        const SrcLoc& site, const ReductionFlags& flags) {
  require_unused(env, name, site);
  std::vector<Constraint> delta;
  require_is_type(env, alloc, type, site, flags, delta);
  GlobalEnv out = env;
  out.constraints.add_all(delta);
  out.push_param(name, type, site);
  return out;
}

}  // namespace picheck
