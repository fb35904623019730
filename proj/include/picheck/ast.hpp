#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "picheck/term.hpp"

namespace picheck::ast {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Ident {
  std::string name;
};
struct PropE {};
struct TypeE {};
struct AppE {
  ExprPtr fn, arg;
};
struct ArrowE {  // non-dependent function type sugar
  ExprPtr lhs, rhs;
};
struct EqE {  // infix propositional equality; the domain is inferred
  ExprPtr lhs, rhs;
};
struct FunE {
  std::string binder;
  ExprPtr type;
  ExprPtr body;
};
struct ForallE {
  std::string binder;
  ExprPtr type;
  ExprPtr body;
};

struct Expr {
  std::variant<Ident, PropE, TypeE, AppE, ArrowE, EqE, FunE, ForallE> v;
  SrcLoc loc;
};

ExprPtr mk(Expr e);

template <typename T>
const T* as(const ExprPtr& e) {
  return std::get_if<T>(&e->v);
}

struct Binder {
  std::string name;
  ExprPtr type;
  SrcLoc loc;
};

struct CtorDecl {
  std::string name;
  ExprPtr type;
  SrcLoc loc;
};

struct FieldDecl {
  std::string name;
  ExprPtr type;
  SrcLoc loc;
};

struct ParameterCmd {  // Axiom is a synonym
  std::string name;
  ExprPtr type;
};
struct DefinitionCmd {  // Theorem is a Definition with a required type
  std::string name;
  std::optional<ExprPtr> type;
  ExprPtr body;
  bool is_theorem = false;
};
struct InductiveCmd {
  std::string name;
  std::vector<Binder> params;
  ExprPtr arity;
  std::vector<CtorDecl> ctors;
};
struct RecordCmd {
  std::string name;
  std::vector<Binder> params;
  ExprPtr arity;
  std::vector<FieldDecl> fields;
};
struct RequireCmd {
  std::string module;
};
struct CheckCmd {
  ExprPtr expr;
};
struct EvalCmd {
  ExprPtr expr;
};

struct Command {
  std::variant<ParameterCmd, DefinitionCmd, InductiveCmd, RecordCmd,
               RequireCmd, CheckCmd, EvalCmd>
      v;
  SrcLoc loc;
  std::string keyword;  // surface keyword, for reports ("Parameter", ...)
};

// Structural equality ignoring source locations; used by round-trip tests.
bool expr_eq(const ExprPtr& a, const ExprPtr& b);
bool command_eq(const Command& a, const Command& b);

// Renders in the surface grammar; parsing the output yields an equal tree.
std::string print_expr(const ExprPtr& e);
std::string print_command(const Command& c);

// Display name of the object a command introduces (empty for Check/Eval).
std::string command_name(const Command& c);

}  // namespace picheck::ast
