#ifndef LOGDIV_PARSER_HPP
#define LOGDIV_PARSER_HPP

#include <string>
#include <vector>

#include "logdiv/poly.hpp"

namespace logdiv {

// Syntax error with 1-based line/column position.
struct ParseError : Error {
  ParseError(const std::string& msg, int line, int column);
  int line;
  int column;
};

// Grammar: identifiers as variables; + - * ^; integer and a/b rational
// literals; parentheses; implicit multiplication disallowed.
// Every variable must exist in `ring`.
Poly parse_expression(const std::string& text, const RingPtr& ring);

// Variables of `text` in order of first appearance; used when the caller
// does not declare a variable list.
std::vector<std::string> collect_variables(const std::string& text);

}  // namespace logdiv

#endif
