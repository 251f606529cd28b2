#pragma once

#include <string>
#include <string_view>

#include "cesaro/model.hpp"

namespace cesaro {

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          pos(position) {}
    std::size_t pos;
};

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*        '/' inverts single-atom factors
//   factor := base ('^' signed_real)?
//   base   := 'z' | real | real 'i' | 'i' | '(' expr ')' | 'log1z'
// Non-integer exponents require a base normalizing to scale*(1 - a z) with
// real positive scale. Numbers are decimal binary64.
FunctionModel parse_expression(std::string_view text);

// Canonical form of an atom-sum model; parse_expression is its left inverse.
std::string print_expression(const FunctionModel& f);

}  // namespace cesaro
