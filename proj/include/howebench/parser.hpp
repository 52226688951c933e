#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "howebench/signature.hpp"

namespace howebench {

struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg),
        line(line_),
        col(col_) {}
};

// Parses a full signature file: sort, subsort, con, op, edge and rule
// declarations plus clause definitions, one per line, '#' comments.
// References must be declared before use. Throws ParseError.
Signature parse_signature(const std::string& text);

// Parses one concrete term (no metavariables). ctx names the free variables,
// innermost last. Supports the generic prefix syntax plus the surface sugar
// (\x. e, juxtaposition, shift x. e, <e>, []) when the signature has the
// matching constructors. Throws ParseError.
Term parse_term(const Signature& sig, const std::string& text,
                const std::vector<std::pair<std::string, SortId>>& ctx = {});

}  // namespace howebench
