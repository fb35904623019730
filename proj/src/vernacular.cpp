#include "picheck/vernacular.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "picheck/parser.hpp"
#include "picheck/pretty.hpp"
#include "picheck/reduction.hpp"

namespace picheck {

namespace {

struct Elaborator {
  const GlobalEnv& env;
  LevelAlloc& alloc;
  const ReductionFlags& flags;
  std::vector<std::string>& locals;
  Telescope& ctx;
  const std::map<std::string, Term>* extra;
  std::size_t* user_levels;

  Term elab(const ast::ExprPtr& e) {
    if (const auto* id = ast::as<ast::Ident>(e)) {
      for (std::size_t i = locals.size(); i-- > 0;) {
        if (locals[i] == id->name) return mk_var(locals.size() - 1 - i);
      }
      if (extra) {
        auto it = extra->find(id->name);
        if (it != extra->end()) return it->second;
      }
      if (auto ref = env.resolve(id->name)) {
        switch (ref->kind) {
          case NameRef::Param:
          case NameRef::Def: return mk_const(id->name);
          case NameRef::Ind: return mk_ind(id->name);
          case NameRef::Ctor:
            return mk_ctor(env.decl(ref->decl_index).name, ref->ctor_index);
          case NameRef::Elim:
            return mk_elim(env.decl(ref->decl_index).name);
          case NameRef::Eq: return mk_eq_ref();
          case NameRef::Refl: return mk_refl_ref();
          case NameRef::EqElim: return mk_eq_elim_ref();
        }
      }
      throw CheckError(ErrKind::UnboundName, "unbound name " + id->name,
                       e->loc);
    }
    if (ast::as<ast::PropE>(e)) return mk_prop();
    if (ast::as<ast::TypeE>(e)) {
      if (user_levels) (*user_levels)++;
      return mk_type(alloc.fresh(e->loc));
    }
    if (const auto* app = ast::as<ast::AppE>(e))
      return mk_app(elab(app->fn), elab(app->arg));
    if (const auto* arr = ast::as<ast::ArrowE>(e)) {
      Term dom = elab(arr->lhs);
      locals.push_back("_");
      ctx.push("_", dom);
      Term cod = elab(arr->rhs);
      locals.pop_back();
      ctx.pop();
      return mk_pi("_", dom, cod);
    }
    if (const auto* eq = ast::as<ast::EqE>(e)) {
      Term lhs = elab(eq->lhs);
      // The equality domain is the inferred type of the left operand. The
      // constraints of this inference are regenerated when the surrounding
      // command is checked, so the delta is dropped here.
      Term domain =
          infer_type(env, alloc, ctx, lhs, e->loc, flags).type;
      Term rhs = elab(eq->rhs);
      return mk_apps(mk_eq_ref(), {domain, lhs, rhs});
    }
    if (const auto* fn = ast::as<ast::FunE>(e)) {
      Term dom = elab(fn->type);
      locals.push_back(fn->binder);
      ctx.push(fn->binder, dom);
      Term body = elab(fn->body);
      locals.pop_back();
      ctx.pop();
      return mk_lam(fn->binder, dom, body);
    }
    const auto* q = ast::as<ast::ForallE>(e);
    Term dom = elab(q->type);
    locals.push_back(q->binder);
    ctx.push(q->binder, dom);
    Term cod = elab(q->body);
    locals.pop_back();
    ctx.pop();
    return mk_pi(q->binder, dom, cod);
  }
};

std::set<std::string> global_names(const GlobalEnv& env) {
  std::set<std::string> out = {"eq", "refl", "eq_elim"};
  for (const Decl& d : env.decls()) {
    out.insert(d.name);
    if (const auto* ind = std::get_if<IndDecl>(&d.v)) {
      out.insert(ind->desc.name + "_rect");
      for (const Ctor& c : ind->desc.ctors) out.insert(c.name);
    }
  }
  return out;
}

std::string describe_core(const std::vector<Constraint>& core) {
  std::ostringstream os;
  os << "unsatisfiable cycle:";
  for (const Constraint& c : core) {
    os << "\n  Type at " << to_string(c.lo.origin)
       << (c.rel == Constraint::Strict ? " < " : " <= ") << "Type at "
       << to_string(c.hi.origin) << "  [required by " << to_string(c.at)
       << "]";
  }
  return os.str();
}

}  // namespace

Term elaborate(const GlobalEnv& env, LevelAlloc& alloc,
               const ReductionFlags& flags, std::vector<std::string>& locals,
               Telescope& ctx, const ast::ExprPtr& e,
               const std::map<std::string, Term>* extra_scope,
               std::size_t* user_levels) {
  Elaborator el{env, alloc, flags, locals, ctx, extra_scope, user_levels};
  return el.elab(e);
}

bool FileReport::all_ok() const {
  for (const CommandOutcome& c : commands)
    if (c.status != "ok") return false;
  return true;
}

const CommandOutcome* FileReport::first_error() const {
  for (const CommandOutcome& c : commands)
    if (c.status == "error") return &c;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Command processing

struct Processor {
  Session& session;
  FileReport& report;
  bool failed = false;

  GlobalEnv& env() { return session.env_; }
  LevelAlloc& alloc() { return session.alloc_; }
  ReductionFlags flags() const { return {true, true, true, session.opts_.fuel}; }

  Term elab_closed(const ast::ExprPtr& e,
                   const std::map<std::string, Term>* extra = nullptr) {
    std::vector<std::string> locals;
    Telescope ctx;
    return elaborate(env(), alloc(), flags(), locals, ctx, e, extra,
                     &session.user_levels_);
  }

  // Runs the satisfiability gate for a candidate env; adopts it on success.
  void commit(GlobalEnv candidate, const SrcLoc& span) {
    SatResult sat = satisfiable(candidate.constraints);
    if (const Unsat* unsat = std::get_if<Unsat>(&sat)) {
      CheckError err(ErrKind::UniverseInconsistency, describe_core(unsat->core),
                     span);
      err.core = unsat->core;
      throw err;
    }
    env() = std::move(candidate);
  }

  // Tests a constraint delta without extending the env (Check / Eval).
  void probe(const std::vector<Constraint>& delta, const SrcLoc& span) {
    ConstraintSet probe_set = env().constraints;
    probe_set.add_all(delta);
    SatResult sat = satisfiable(probe_set);
    if (const Unsat* unsat = std::get_if<Unsat>(&sat)) {
      CheckError err(ErrKind::UniverseInconsistency, describe_core(unsat->core),
                     span);
      err.core = unsat->core;
      throw err;
    }
  }

  void process(const ast::Command& cmd) {
    CommandOutcome row;
    row.name = ast::command_name(cmd);
    row.kind = cmd.keyword;
    row.span = cmd.loc;
    if (failed) {
      row.status = "skipped";
      row.message = "not checked: an earlier command in this file failed";
      report.commands.push_back(std::move(row));
      return;
    }
    if (const auto* req = std::get_if<ast::RequireCmd>(&cmd.v)) {
      process_require(req->module, cmd.loc, std::move(row));
      return;
    }
    try {
      dispatch(cmd, row);
      row.status = "ok";
    } catch (const CheckError& e) {
      row.status = "error";
      row.error = e.kind;
      row.message = e.what();
      row.core = e.core;
      failed = true;
    }
    report.commands.push_back(std::move(row));
  }

  // Splices the module's commands in place, once per session. The Require
  // row precedes the spliced rows; resolution and parse failures land on
  // the Require row itself.
  void process_require(const std::string& module, const SrcLoc& span,
                       CommandOutcome row) {
    for (const std::string& pending : session.require_stack_) {
      if (pending == module) {
        row.status = "error";
        row.error = ErrKind::RequireCycle;
        row.message = "cyclic Require chain through module " + module;
        failed = true;
        report.commands.push_back(std::move(row));
        return;
      }
    }
    if (session.loaded_modules_.count(module)) {
      row.status = "ok";
      row.message = "already loaded";
      report.commands.push_back(std::move(row));
      return;
    }
    std::vector<ast::Command> cmds;
    try {
      cmds = load_module(module, span);
    } catch (const CheckError& e) {
      row.status = "error";
      row.error = e.kind;
      row.message = e.what();
      failed = true;
      report.commands.push_back(std::move(row));
      return;
    }
    row.status = "ok";
    report.commands.push_back(std::move(row));
    session.loaded_modules_.insert(module);
    session.require_stack_.push_back(module);
    for (const ast::Command& c : cmds) process(c);
    session.require_stack_.pop_back();
  }

  std::vector<ast::Command> load_module(const std::string& module,
                                        const SrcLoc& span) {
    std::filesystem::path found;
    bool ok = false;
    for (const std::string& dir : session.opts_.include_paths) {
      std::filesystem::path candidate =
          std::filesystem::path(dir) / (module + ".pv");
      if (std::filesystem::exists(candidate)) {
        found = candidate;
        ok = true;
        break;
      }
    }
    if (!ok)
      throw CheckError(ErrKind::FileNotFound,
                       "module " + module + " not found on the include path",
                       span);
    std::ifstream in(found);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str(), found.string());
  }

  void dispatch(const ast::Command& cmd, CommandOutcome& row) {
    const SrcLoc& span = cmd.loc;
    if (const auto* p = std::get_if<ast::ParameterCmd>(&cmd.v)) {
      Term type = elab_closed(p->type);
      commit(add_parameter(env(), alloc(), p->name, type, span, flags()), span);
      return;
    }
    if (const auto* d = std::get_if<ast::DefinitionCmd>(&cmd.v)) {
      std::optional<Term> type;
      if (d->type) type = elab_closed(*d->type);
      Term body = elab_closed(d->body);
      commit(add_definition(env(), alloc(), d->name, type, body, span, flags()),
             span);
      return;
    }
    if (const auto* ind = std::get_if<ast::InductiveCmd>(&cmd.v)) {
      commit(check_inductive(env(), alloc(), make_descriptor(*ind, span), span,
                             flags()),
             span);
      return;
    }
    if (const auto* rec = std::get_if<ast::RecordCmd>(&cmd.v)) {
      commit(check_inductive(env(), alloc(), make_descriptor(*rec, span), span,
                             flags()),
             span);
      return;
    }
    if (const auto* chk = std::get_if<ast::CheckCmd>(&cmd.v)) {
      Term t = elab_closed(chk->expr);
      TypingResult r = infer_type(env(), alloc(), {}, t, span, flags());
      probe(r.delta, span);
      // Inferred types may carry beta redexes from application sites;
      // display them reduced, but keep definitions folded.
      ReductionFlags display = flags();
      display.delta = false;
      Term shown = normalize(env(), r.type, display);
      row.output = print_term(shown, {}, global_names(env()), &env());
      return;
    }
    const auto* ev = std::get_if<ast::EvalCmd>(&cmd.v);
    Term t = elab_closed(ev->expr);
    TypingResult r = infer_type(env(), alloc(), {}, t, span, flags());
    probe(r.delta, span);
    Term nf = normalize(env(), t, flags());
    row.output = print_term(nf, {}, global_names(env()), &env());
  }

  // Builds a descriptor from an Inductive command. Constructor types see the
  // inductive itself through an extra scope entry.
  InductiveDescriptor make_descriptor(const ast::InductiveCmd& ind,
                                      const SrcLoc& span) {
    InductiveDescriptor desc;
    desc.name = ind.name;
    std::vector<std::string> locals;
    Telescope ctx;
    for (const ast::Binder& b : ind.params) {
      Term type = elaborate(env(), alloc(), flags(), locals, ctx, b.type,
                            nullptr, &session.user_levels_);
      desc.params.push(b.name, type);
      locals.push_back(b.name);
      ctx.push(b.name, type);
    }
    desc.arity = elab_arity(ind.arity, locals, ctx, span);
    std::map<std::string, Term> extra{{ind.name, mk_ind(ind.name)}};
    for (const ast::CtorDecl& c : ind.ctors) {
      Term type = elaborate(env(), alloc(), flags(), locals, ctx, c.type,
                            &extra, &session.user_levels_);
      desc.ctors.push_back({c.name, type});
    }
    return desc;
  }

  // Records desugar to a single-constructor inductive; the constructor
  // gathers the fields and the codomain applies the record to its params.
  InductiveDescriptor make_descriptor(const ast::RecordCmd& rec,
                                      const SrcLoc& span) {
    InductiveDescriptor desc;
    desc.name = rec.name;
    desc.is_record = true;
    std::vector<std::string> locals;
    Telescope ctx;
    for (const ast::Binder& b : rec.params) {
      Term type = elaborate(env(), alloc(), flags(), locals, ctx, b.type,
                            nullptr, &session.user_levels_);
      desc.params.push(b.name, type);
      locals.push_back(b.name);
      ctx.push(b.name, type);
    }
    desc.arity = elab_arity(rec.arity, locals, ctx, span);
    std::map<std::string, Term> extra{{rec.name, mk_ind(rec.name)}};
    std::vector<Term> field_types;
    for (const ast::FieldDecl& f : rec.fields) {
      Term type = elaborate(env(), alloc(), flags(), locals, ctx, f.type,
                            &extra, &session.user_levels_);
      field_types.push_back(type);
      desc.field_names.push_back(f.name);
      locals.push_back(f.name);
      ctx.push(f.name, type);
    }
    std::size_t k = desc.params.size();
    std::size_t n = field_types.size();
    Term codomain = mk_ind(rec.name);
    for (std::size_t p = 0; p < k; p++)
      codomain = mk_app(codomain, mk_var(n + k - 1 - p));
    Term ctype = codomain;
    for (std::size_t i = n; i-- > 0;)
      ctype = mk_pi(rec.fields[i].name, field_types[i], ctype);
    desc.ctors.push_back({"mk_" + rec.name, ctype});
    return desc;
  }

  Sort elab_arity(const ast::ExprPtr& arity, std::vector<std::string>& locals,
                  Telescope& ctx, const SrcLoc& span) {
    Term t = elaborate(env(), alloc(), flags(), locals, ctx, arity, nullptr,
                       &session.user_levels_);
    Term w = whnf(env(), t, flags());
    if (const auto* s = as<SortN>(w)) return s->sort;
    throw CheckError(ErrKind::ArityMismatch,
                     "an inductive arity must be Prop or Type", span);
  }

};

FileReport Session::run(const std::vector<ast::Command>& cmds,
                        const std::string& name) {
  auto start = std::chrono::steady_clock::now();
  std::uint32_t levels_before = alloc_.issued();
  std::size_t user_before = user_levels_;

  FileReport report;
  report.file = name;
  Processor proc{*this, report};
  for (const ast::Command& cmd : cmds) proc.process(cmd);

  report.levels = alloc_.issued() - levels_before;
  report.user_levels = user_levels_ - user_before;
  report.constraints = env_.constraints.size();
  report.satisfiable = is_sat(satisfiable(env_.constraints));
  report.ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - start)
                  .count();
  return report;
}

FileReport Session::check_source(const std::string& text,
                                 const std::string& name) {
  try {
    std::vector<ast::Command> cmds = parse(text, name);
    return run(cmds, name);
  } catch (const CheckError& e) {
    FileReport report;
    report.file = name;
    CommandOutcome row;
    row.kind = "parse";
    row.status = "error";
    row.error = e.kind;
    row.message = e.what();
    row.span = e.where;
    report.commands.push_back(std::move(row));
    report.constraints = env_.constraints.size();
    report.satisfiable = is_sat(satisfiable(env_.constraints));
    return report;
  }
}

FileReport Session::check_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    FileReport report;
    report.file = path;
    CommandOutcome row;
    row.kind = "io";
    row.status = "error";
    row.error = ErrKind::FileNotFound;
    row.message = "cannot read " + path;
    report.commands.push_back(std::move(row));
    return report;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return check_source(buffer.str(), path);
}

CheckReport check_files(const std::vector<std::string>& paths,
                        const CheckOptions& opts) {
  CheckReport out;
  Session session(opts);
  for (const std::string& path : paths) {
    FileReport report = session.check_file(path);
    for (const CommandOutcome& row : report.commands) {
      if (row.status != "error") continue;
      if (row.kind == "io")
        out.exit_code = 2;  // unreadable input file
      else if (out.exit_code != 2)
        out.exit_code = 1;
    }
    out.files.push_back(std::move(report));
    if (out.exit_code == 2) break;
  }
  return out;
}

std::string report_text(const CheckReport& report) {
  std::ostringstream os;
  for (const FileReport& f : report.files) {
    os << f.file << ":\n";
    for (const CommandOutcome& c : f.commands) {
      os << "  [" << c.status << "] " << c.kind;
      if (!c.name.empty()) os << " " << c.name;
      if (!c.output.empty()) os << " : " << c.output;
      if (c.status == "error")
        os << "\n    " << to_string(*c.error) << ": " << c.message;
      os << "\n";
    }
    os << "  levels " << f.levels << " (" << f.user_levels
       << " from source), constraints " << f.constraints << ", "
       << (f.satisfiable ? "satisfiable" : "unsatisfiable") << ", "
       << f.ms << " ms\n";
  }
  return os.str();
}

namespace {

nlohmann::json loc_json(const SrcLoc& loc) {
  return {{"file", loc.file}, {"line", loc.line}, {"col", loc.col}};
}

}  // namespace

std::string report_json(const CheckReport& report) {
  std::ostringstream os;
  for (const FileReport& f : report.files) {
    nlohmann::json j;
    j["file"] = f.file;
    j["commands"] = nlohmann::json::array();
    for (const CommandOutcome& c : f.commands) {
      nlohmann::json row;
      row["name"] = c.name;
      row["kind"] = c.kind;
      row["status"] = c.status;
      row["span"] = loc_json(c.span);
      if (!c.output.empty()) row["output"] = c.output;
      if (c.error) {
        nlohmann::json err;
        err["kind"] = to_string(*c.error);
        err["message"] = c.message;
        if (!c.core.empty()) {
          err["core"] = nlohmann::json::array();
          for (const Constraint& edge : c.core) {
            err["core"].push_back(
                {{"lo", loc_json(edge.lo.origin)},
                 {"rel", edge.rel == Constraint::Strict ? "<" : "<="},
                 {"hi", loc_json(edge.hi.origin)},
                 {"at", loc_json(edge.at)}});
          }
        }
        row["error"] = err;
      }
      j["commands"].push_back(row);
    }
    j["levels"] = f.levels;
    j["user_levels"] = f.user_levels;
    j["constraints"] = f.constraints;
    j["satisfiable"] = f.satisfiable;
    j["ms"] = f.ms;
    os << j.dump() << "\n";
  }
  return os.str();
}

}  // namespace picheck
