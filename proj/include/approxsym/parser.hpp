#ifndef APPROXSYM_PARSER_HPP
#define APPROXSYM_PARSER_HPP

#include <string>

#include "approxsym/expr.hpp"

namespace approxsym {

struct ParseError : Error {
    ParseError(const std::string& what, int line, int column)
        : Error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
          line(line),
          column(column) {}
    int line;
    int column;
};

// Expression grammar shared by the CLI and all emitters:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' rational)?
//   base   := rational | symbol | '(' expr ')' | func '(' expr ')'
//   func   := 'exp' | 'ln' | 'arctan' | 'sqrt'
//   symbol := letter (letter|digit|'_')*
// Jet coordinates are written u_x, u_xx, u_t, u_xt, ...; eps is the
// perturbation symbol. A rational token may carry a sign and an immediately
// following '/digits' part; elsewhere '/' is the division operator. The
// parser additionally accepts a unary minus, which the printer never emits.
Expr parse(const std::string& text);

// Emits exactly the grammar above; parse(print(e)) == e.
std::string print(const Expr& e);

std::string print(const Rat& q);

} // namespace approxsym

#endif
