#include "picheck/ast.hpp"

#include <sstream>

namespace picheck::ast {

ExprPtr mk(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

bool expr_eq(const ExprPtr& a, const ExprPtr& b) {
  if (a->v.index() != b->v.index()) return false;
  if (const auto* ia = as<Ident>(a)) return ia->name == as<Ident>(b)->name;
  if (as<PropE>(a) || as<TypeE>(a)) return true;
  if (const auto* pa = as<AppE>(a)) {
    const auto* pb = as<AppE>(b);
    return expr_eq(pa->fn, pb->fn) && expr_eq(pa->arg, pb->arg);
  }
  if (const auto* ra = as<ArrowE>(a)) {
    const auto* rb = as<ArrowE>(b);
    return expr_eq(ra->lhs, rb->lhs) && expr_eq(ra->rhs, rb->rhs);
  }
  if (const auto* ea = as<EqE>(a)) {
    const auto* eb = as<EqE>(b);
    return expr_eq(ea->lhs, eb->lhs) && expr_eq(ea->rhs, eb->rhs);
  }
  if (const auto* fa = as<FunE>(a)) {
    const auto* fb = as<FunE>(b);
    return fa->binder == fb->binder && expr_eq(fa->type, fb->type) &&
           expr_eq(fa->body, fb->body);
  }
  const auto* qa = as<ForallE>(a);
  const auto* qb = as<ForallE>(b);
  return qa->binder == qb->binder && expr_eq(qa->type, qb->type) &&
         expr_eq(qa->body, qb->body);
}

namespace {

bool binders_eq(const std::vector<Binder>& a, const std::vector<Binder>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); i++)
    if (a[i].name != b[i].name || !expr_eq(a[i].type, b[i].type)) return false;
  return true;
}

// Precedence climbing for the printer: 0 term, 1 arrow operand, 2 eq
// operand, 3 application operand, 4 atom.
void print(std::ostringstream& os, const ExprPtr& e, int prec);

void parens(std::ostringstream& os, const ExprPtr& e, bool need, int inner) {
  if (need) os << "(";
  print(os, e, inner);
  if (need) os << ")";
}

void print(std::ostringstream& os, const ExprPtr& e, int prec) {
  if (const auto* i = as<Ident>(e)) {
    os << i->name;
    return;
  }
  if (as<PropE>(e)) {
    os << "Prop";
    return;
  }
  if (as<TypeE>(e)) {
    os << "Type";
    return;
  }
  if (const auto* a = as<AppE>(e)) {
    if (prec > 3) {
      os << "(";
      print(os, e, 0);
      os << ")";
      return;
    }
    print(os, a->fn, 3);
    os << " ";
    print(os, a->arg, 4);
    return;
  }
  if (const auto* r = as<ArrowE>(e)) {
    if (prec > 1) {
      os << "(";
      print(os, e, 0);
      os << ")";
      return;
    }
    print(os, r->lhs, 2);
    os << " -> ";
    print(os, r->rhs, 0);  // the right side extends to the full term
    return;
  }
  if (const auto* q = as<EqE>(e)) {
    if (prec > 2) {
      os << "(";
      print(os, e, 0);
      os << ")";
      return;
    }
    print(os, q->lhs, 3);
    os << " = ";
    print(os, q->rhs, 3);
    return;
  }
  if (const auto* f = as<FunE>(e)) {
    if (prec > 0) {
      os << "(";
      print(os, e, 0);
      os << ")";
      return;
    }
    os << "fun (" << f->binder << " : ";
    print(os, f->type, 0);
    os << ") => ";
    print(os, f->body, 0);
    return;
  }
  const auto* q = as<ForallE>(e);
  if (prec > 0) {
    os << "(";
    print(os, e, 0);
    os << ")";
    return;
  }
  os << "forall (" << q->binder << " : ";
  print(os, q->type, 0);
  os << "), ";
  print(os, q->body, 0);
}

}  // namespace

bool command_eq(const Command& a, const Command& b) {
  if (a.v.index() != b.v.index()) return false;
  if (const auto* pa = std::get_if<ParameterCmd>(&a.v)) {
    const auto* pb = std::get_if<ParameterCmd>(&b.v);
    return pa->name == pb->name && expr_eq(pa->type, pb->type);
  }
  if (const auto* da = std::get_if<DefinitionCmd>(&a.v)) {
    const auto* db = std::get_if<DefinitionCmd>(&b.v);
    if (da->name != db->name || da->type.has_value() != db->type.has_value())
      return false;
    if (da->type && !expr_eq(*da->type, *db->type)) return false;
    return expr_eq(da->body, db->body);
  }
  if (const auto* ia = std::get_if<InductiveCmd>(&a.v)) {
    const auto* ib = std::get_if<InductiveCmd>(&b.v);
    if (ia->name != ib->name || !binders_eq(ia->params, ib->params) ||
        !expr_eq(ia->arity, ib->arity) || ia->ctors.size() != ib->ctors.size())
      return false;
    for (std::size_t i = 0; i < ia->ctors.size(); i++)
      if (ia->ctors[i].name != ib->ctors[i].name ||
          !expr_eq(ia->ctors[i].type, ib->ctors[i].type))
        return false;
    return true;
  }
  if (const auto* ra = std::get_if<RecordCmd>(&a.v)) {
    const auto* rb = std::get_if<RecordCmd>(&b.v);
    if (ra->name != rb->name || !binders_eq(ra->params, rb->params) ||
        !expr_eq(ra->arity, rb->arity) ||
        ra->fields.size() != rb->fields.size())
      return false;
    for (std::size_t i = 0; i < ra->fields.size(); i++)
      if (ra->fields[i].name != rb->fields[i].name ||
          !expr_eq(ra->fields[i].type, rb->fields[i].type))
        return false;
    return true;
  }
  if (const auto* qa = std::get_if<RequireCmd>(&a.v))
    return qa->module == std::get_if<RequireCmd>(&b.v)->module;
  if (const auto* ca = std::get_if<CheckCmd>(&a.v))
    return expr_eq(ca->expr, std::get_if<CheckCmd>(&b.v)->expr);
  return expr_eq(std::get_if<EvalCmd>(&a.v)->expr,
                 std::get_if<EvalCmd>(&b.v)->expr);
}

std::string print_expr(const ExprPtr& e) {
  std::ostringstream os;
  print(os, e, 0);
  return os.str();
}

namespace {

void print_params(std::ostringstream& os, const std::vector<Binder>& params) {
  for (const Binder& b : params)
    os << " (" << b.name << " : " << print_expr(b.type) << ")";
}

}  // namespace

std::string print_command(const Command& c) {
  std::ostringstream os;
  if (const auto* p = std::get_if<ParameterCmd>(&c.v)) {
    os << (c.keyword == "Axiom" ? "Axiom " : "Parameter ") << p->name << " : "
       << print_expr(p->type) << ".";
  } else if (const auto* d = std::get_if<DefinitionCmd>(&c.v)) {
    os << (d->is_theorem ? "Theorem " : "Definition ") << d->name;
    if (d->type) os << " : " << print_expr(*d->type);
    os << " := " << print_expr(d->body) << ".";
  } else if (const auto* i = std::get_if<InductiveCmd>(&c.v)) {
    os << "Inductive " << i->name;
    print_params(os, i->params);
    os << " : " << print_expr(i->arity) << " :=";
    for (std::size_t j = 0; j < i->ctors.size(); j++) {
      os << (j == 0 ? " " : " | ") << i->ctors[j].name << " : "
         << print_expr(i->ctors[j].type);
    }
    os << ".";
  } else if (const auto* r = std::get_if<RecordCmd>(&c.v)) {
    os << "Record " << r->name;
    print_params(os, r->params);
    os << " : " << print_expr(r->arity) << " := {";
    for (std::size_t j = 0; j < r->fields.size(); j++) {
      os << (j == 0 ? " " : "; ") << r->fields[j].name << " : "
         << print_expr(r->fields[j].type);
    }
    os << " }.";
  } else if (const auto* q = std::get_if<RequireCmd>(&c.v)) {
    os << "Require " << q->module << ".";
  } else if (const auto* k = std::get_if<CheckCmd>(&c.v)) {
    os << "Check " << print_expr(k->expr) << ".";
  } else {
    os << "Eval " << print_expr(std::get_if<EvalCmd>(&c.v)->expr) << ".";
  }
  return os.str();
}

std::string command_name(const Command& c) {
  if (const auto* p = std::get_if<ParameterCmd>(&c.v)) return p->name;
  if (const auto* d = std::get_if<DefinitionCmd>(&c.v)) return d->name;
  if (const auto* i = std::get_if<InductiveCmd>(&c.v)) return i->name;
  if (const auto* r = std::get_if<RecordCmd>(&c.v)) return r->name;
  if (const auto* q = std::get_if<RequireCmd>(&c.v)) return q->module;
  return "";
}

}  // namespace picheck::ast
