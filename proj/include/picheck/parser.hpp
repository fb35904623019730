#pragma once

#include <string>
#include <vector>

#include "picheck/ast.hpp"

namespace picheck {

// Parses a whole source file. A pure function of the input bytes; throws
// CheckError with kind ParseError at the furthest position reached.
std::vector<ast::Command> parse(const std::string& text,
                                const std::string& filename);

}  // namespace picheck
