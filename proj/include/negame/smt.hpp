#pragma once

#include <map>
#include <string>
#include <vector>

#include "negame/rational.hpp"

namespace negame {

// Minimal s-expression tree for SMT-LIB2 documents.
struct SExpr {
  bool is_atom = false;
  std::string atom;          // set when is_atom
  std::vector<SExpr> items;  // set otherwise
};

// Parses a whole document into top-level s-expressions. Line comments (;)
// are skipped. Throws std::invalid_argument on unbalanced parentheses.
std::vector<SExpr> parse_sexprs(const std::string& text);

// Structure of a QF_NRA script: declarations, assertions, trailing check.
struct SmtDocument {
  std::string logic;
  std::vector<std::string> variables;  // declare-fun order
  std::vector<SExpr> asserts;
  bool has_check_sat = false;
};

SmtDocument parse_smt_document(const std::string& text);

// Exact evaluation over an assignment. Terms: numerals, variables, + - * /.
// Formulas: = <= >= < > over terms, and / or / not. Throws
// std::invalid_argument on unknown symbols.
Rational eval_term(const SExpr& e, const std::map<std::string, Rational>& env);
bool eval_formula(const SExpr& e, const std::map<std::string, Rational>& env);

// Renders q as an SMT-LIB2 Real: p, (/ p q), with (- ...) for negatives.
std::string smt_rational(const Rational& q);

// Maps arbitrary names onto SMT-LIB2 simple-symbol characters.
std::string smt_symbol(const std::string& raw);

}  // namespace negame
