#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "nam/ast.hpp"

namespace nam {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line, int column);
  int line;
  int column;
};

FormulaPtr parse_formula(std::string_view text);
TermPtr parse_term(std::string_view text);

// A lone term parses as a Term; anything else must parse as a formula.
std::variant<FormulaPtr, TermPtr> parse_any(std::string_view text);

}  // namespace nam
