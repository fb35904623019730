#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "picheck/reduction.hpp"
#include "picheck/term.hpp"
#include "picheck/universe.hpp"

namespace picheck {

enum class ErrKind {
  ParseError,
  UnboundName,
  NotAFunction,
  DomainNotASort,
  TypeMismatch,
  PositivityViolation,
  ArityMismatch,
  NameClash,
  FuelExhausted,
  UniverseInconsistency,
  FileNotFound,
  RequireCycle,
};

const char* to_string(ErrKind k);

// Raised for any failed judgment; the vernacular driver catches per command.
struct CheckError : std::runtime_error {
  ErrKind kind;
  SrcLoc where;
  std::vector<Constraint> core;  // UniverseInconsistency only

  CheckError(ErrKind k, std::string msg, SrcLoc loc)
      : std::runtime_error(std::move(msg)), kind(k), where(std::move(loc)) {}
};

struct Ctor {
  std::string name;
  // Constructor type in the parameter context: a telescope of argument
  // binders ending in the inductive applied to exactly the parameters.
  Term type;
};

struct InductiveDescriptor {
  std::string name;
  Telescope params;
  Sort arity;
  std::vector<Ctor> ctors;
  bool is_record = false;
  std::vector<std::string> field_names;  // records only; one per ctor argument
};

struct ParamDecl {
  Term type;
};
struct DefDecl {
  Term type;
  Term body;
};
struct IndDecl {
  InductiveDescriptor desc;
};

struct Decl {
  std::string name;
  std::variant<ParamDecl, DefDecl, IndDecl> v;
  SrcLoc where;
};

// What a global identifier denotes.
struct NameRef {
  enum Kind { Param, Def, Ind, Ctor, Elim, Eq, Refl, EqElim } kind;
  std::size_t decl_index = 0;  // Param/Def/Ind/Ctor/Elim
  std::size_t ctor_index = 0;  // Ctor
};

// The ordered table of checked declarations plus the accumulated universe
// constraints. A value type: processing a command produces a new env, so
// rolling back a failed command is just keeping the old value.
class GlobalEnv {
 public:
  GlobalEnv();

  ConstraintSet constraints;

  const std::vector<Decl>& decls() const { return decls_; }
  std::optional<NameRef> resolve(const std::string& name) const;
  bool has_name(const std::string& name) const;

  const Decl& decl(std::size_t index) const { return decls_[index]; }
  const InductiveDescriptor& inductive(const std::string& name) const;
  const InductiveDescriptor* find_inductive(const std::string& name) const;

  // Body of a defined constant, if it has one (Parameters do not).
  const Term* const_body(const std::string& name) const;
  // Declared type of a Parameter or Definition.
  Term const_type(const std::string& name) const;

  void push_param(std::string name, Term type, SrcLoc where);
  void push_def(std::string name, Term type, Term body, SrcLoc where);
  void push_inductive(InductiveDescriptor desc, SrcLoc where);

 private:
  std::vector<Decl> decls_;
  std::map<std::string, NameRef> names_;
};

struct TypingResult {
  Term type;
  std::vector<Constraint> delta;  // test env.constraints + delta for sat
};

// Infers the unique type of `t` in context `ctx`, allocating fresh levels as
// the sort rules demand. `site` stamps synthesized levels and constraints.
TypingResult infer_type(const GlobalEnv& env, LevelAlloc& alloc,
                        const Telescope& ctx, const Term& t,
                        const SrcLoc& site, const ReductionFlags& flags);

// Checks `t` against `expected` (which must be well-typed with a sort type)
// using cumulativity. A term that delta-reduces to a sort is placed against
// an expected sort directly, so no intermediate level is introduced.
std::vector<Constraint> check_type(const GlobalEnv& env, LevelAlloc& alloc,
                                   const Telescope& ctx, const Term& t,
                                   const Term& expected, const SrcLoc& site,
                                   const ReductionFlags& flags);

// Validates a declaration and returns the extended env: positivity, arity
// and constructor sorts for inductives; records additionally get one
// projection definition per field. Constraints accumulate into the result;
// the caller re-tests satisfiability.
GlobalEnv check_inductive(const GlobalEnv& env, LevelAlloc& alloc,
                          const InductiveDescriptor& desc, const SrcLoc& site,
                          const ReductionFlags& flags);

GlobalEnv add_definition(const GlobalEnv& env, LevelAlloc& alloc,
                         const std::string& name,
                         const std::optional<Term>& type, const Term& body,
                         const SrcLoc& site, const ReductionFlags& flags);

GlobalEnv add_parameter(const GlobalEnv& env, LevelAlloc& alloc,
                        const std::string& name, const Term& type,
                        const SrcLoc& site, const ReductionFlags& flags);

// Type of the recursor reference for an inductive, with the motive sort
// chosen per use: inductives in Type eliminate anywhere (fresh level);
// inhabited inductives in Prop eliminate only to Prop; empty ones anywhere.
Term eliminator_type(const GlobalEnv& env, LevelAlloc& alloc,
                     const std::string& ind_name, const SrcLoc& site);

// forall params, arity  /  forall params, ctor telescope ending in I params.
Term inductive_type(const InductiveDescriptor& desc);
Term ctor_type(const InductiveDescriptor& desc, std::size_t ctor_index);

// Built-in equality: eq, refl and the transport eliminator. Fresh levels
// are drawn per use.
Term eq_type(LevelAlloc& alloc, const SrcLoc& site);
Term refl_type(LevelAlloc& alloc, const SrcLoc& site);
Term eq_elim_type(LevelAlloc& alloc, const SrcLoc& site);

}  // namespace picheck
