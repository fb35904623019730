#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace picheck {

// Source position of a token or command. `line`/`col` are 1-based.
struct SrcLoc {
  std::string file;
  int line = 0;
  int col = 0;

  bool operator==(const SrcLoc&) const = default;
};

std::string to_string(const SrcLoc& loc);

// A universe level variable. Levels never carry arithmetic; they are pure
// variables related by the constraint graph. Identity is the id alone; the
// origin is diagnostic payload.
struct Level {
  std::uint32_t id = 0;
  SrcLoc origin;

  friend bool operator==(const Level& a, const Level& b) { return a.id == b.id; }
  friend bool operator<(const Level& a, const Level& b) { return a.id < b.id; }
};

// Prop, or Type at some level variable.
struct Sort {
  enum Kind { Prop, Type } kind = Prop;
  Level level;  // meaningful only when kind == Type

  static Sort prop() { return Sort{Prop, {}}; }
  static Sort type(Level l) { return Sort{Type, l}; }
  bool is_prop() const { return kind == Prop; }

  friend bool operator==(const Sort& a, const Sort& b) {
    if (a.kind != b.kind) return false;
    return a.kind == Prop || a.level == b.level;
  }
};

struct TermNode;

// Terms are immutable; sharing subtrees is always safe.
using Term = std::shared_ptr<const TermNode>;

struct VarN {  // bound variable, de Bruijn index
  std::size_t index;
};
struct SortN {
  Sort sort;
};
struct ConstN {  // reference to a global Parameter or Definition
  std::string name;
};
struct AppN {
  Term fn, arg;
};
struct LamN {  // binder name is display-only; never affects any judgment
  std::string name;
  Term domain, body;
};
struct PiN {
  std::string name;
  Term domain, codomain;
};
struct IndN {  // reference to an inductive type
  std::string name;
};
struct CtorN {  // constructor `index` of inductive `ind`
  std::string ind;
  std::size_t index;
};
struct ElimN {  // the recursor of inductive `ind`
  std::string ind;
};
struct EqN {};      // built-in propositional equality
struct ReflN {};    // its constructor
struct EqElimN {};  // its transport eliminator

struct TermNode {
  std::variant<VarN, SortN, ConstN, AppN, LamN, PiN, IndN, CtorN, ElimN, EqN,
               ReflN, EqElimN>
      v;
};

Term mk_var(std::size_t index);
Term mk_sort(Sort s);
Term mk_prop();
Term mk_type(Level l);
Term mk_const(std::string name);
Term mk_app(Term fn, Term arg);
Term mk_lam(std::string name, Term domain, Term body);
Term mk_pi(std::string name, Term domain, Term codomain);
// Non-dependent function type; the binder is a placeholder.
Term mk_arrow(Term domain, Term codomain);
Term mk_ind(std::string name);
Term mk_ctor(std::string ind, std::size_t index);
Term mk_elim(std::string ind);
Term mk_eq_ref();
Term mk_refl_ref();
Term mk_eq_elim_ref();

template <typename T>
const T* as(const Term& t) {
  return std::get_if<T>(&t->v);
}

// Applies `fn` to each argument in order.
Term mk_apps(Term fn, const std::vector<Term>& args);

// Splits nested applications into head and argument list (left to right).
std::pair<Term, std::vector<Term>> unfold_apps(const Term& t);

// Every Var with index >= cutoff is shifted up by `amount`.
Term lift(const Term& t, std::size_t amount, std::size_t cutoff = 0);

// Replaces Var(target) by `replacement` (lifted appropriately under binders)
// and decrements the indices above `target`. Realizes one beta step when
// applied to a Lam body with target 0.
Term subst(const Term& t, const Term& replacement, std::size_t target = 0);

// Simultaneous substitution: Var(i) with i >= cutoff is replaced by
// fn(i - cutoff, cutoff). Used when rebasing a term into a new context.
Term subst_map(const Term& t,
               const std::function<Term(std::size_t, std::size_t)>& fn,
               std::size_t cutoff = 0);

// Identity up to binder display names; levels compare by id.
bool struct_eq(const Term& a, const Term& b);

// True when every Var index is below `depth`.
bool closed_under(const Term& t, std::size_t depth = 0);

// Whether Var(index) occurs free in t.
bool occurs_free(const Term& t, std::size_t index);

// An ordered typing context; entry k may refer to entries 0..k-1 by index.
class Telescope {
 public:
  struct Entry {
    std::string name;
    Term type;  // well-scoped in the preceding entries
  };

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  void push(std::string name, Term type) {
    entries_.push_back({std::move(name), std::move(type)});
  }
  void pop() { entries_.pop_back(); }
  const Entry& at_depth(std::size_t k) const { return entries_[k]; }

  // Type of Var(index), lifted so it is well-scoped at the telescope's end.
  Term var_type(std::size_t index) const;

  const std::vector<Entry>& entries() const { return entries_; }

 private:
  std::vector<Entry> entries_;
};

}  // namespace picheck
