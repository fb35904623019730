#pragma once

#include <set>
#include <string>
#include <vector>

#include "picheck/ast.hpp"
#include "picheck/term.hpp"

namespace picheck {

class GlobalEnv;

// Converts a kernel term back to surface syntax. Binder names are freshened
// against `avoid` (typically the global names) and the enclosing binders;
// `ctx_names` are the display names of the ambient context, innermost last.
// `env` supplies constructor display names when available.
ast::ExprPtr readback(const Term& t, std::vector<std::string> ctx_names = {},
                      const std::set<std::string>& avoid = {},
                      const GlobalEnv* env = nullptr);

std::string print_term(const Term& t, std::vector<std::string> ctx_names = {},
                       const std::set<std::string>& avoid = {},
                       const GlobalEnv* env = nullptr);

}  // namespace picheck
