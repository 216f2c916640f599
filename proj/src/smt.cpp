#include "negame/smt.hpp"

#include <cctype>
#include <stdexcept>

namespace negame {

namespace {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;

  void skip() {
    while (i < s.size()) {
      if (std::isspace(static_cast<unsigned char>(s[i]))) {
        ++i;
      } else if (s[i] == ';') {
        while (i < s.size() && s[i] != '\n') ++i;
      } else {
        break;
      }
    }
  }

  SExpr next() {
    skip();
    if (i >= s.size()) throw std::invalid_argument("sexpr: unexpected end");
    if (s[i] == ')') throw std::invalid_argument("sexpr: stray ')'");
    SExpr e;
    if (s[i] == '(') {
      ++i;
      for (skip(); i < s.size() && s[i] != ')'; skip()) e.items.push_back(next());
      if (i >= s.size()) throw std::invalid_argument("sexpr: missing ')'");
      ++i;
      return e;
    }
    e.is_atom = true;
    while (i < s.size() && s[i] != '(' && s[i] != ')' && s[i] != ';' &&
           !std::isspace(static_cast<unsigned char>(s[i])))
      e.atom += s[i++];
    return e;
  }
};

bool is_number(const std::string& a) {
  if (a.empty()) return false;
  std::size_t j = 0;
  for (; j < a.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(a[j])) && a[j] != '.')
      return false;
  return true;
}

Rational parse_numeral(const std::string& a) {
  auto dot = a.find('.');
  if (dot == std::string::npos) return Rational::parse(a);
  // decimal numeral p.q
  std::string digits = a.substr(0, dot) + a.substr(dot + 1);
  std::string den = "1" + std::string(a.size() - dot - 1, '0');
  return Rational::parse(digits + "/" + den);
}

}  // namespace

std::vector<SExpr> parse_sexprs(const std::string& text) {
  Cursor c{text};
  std::vector<SExpr> out;
  for (c.skip(); c.i < text.size(); c.skip()) out.push_back(c.next());
  return out;
}

SmtDocument parse_smt_document(const std::string& text) {
  SmtDocument doc;
  for (const auto& e : parse_sexprs(text)) {
    if (e.is_atom || e.items.empty() || !e.items[0].is_atom)
      throw std::invalid_argument("smt: malformed command");
    const std::string& head = e.items[0].atom;
    if (head == "set-logic" && e.items.size() == 2) {
      doc.logic = e.items[1].atom;
    } else if (head == "declare-fun" && e.items.size() == 4) {
      doc.variables.push_back(e.items[1].atom);
    } else if (head == "declare-const" && e.items.size() == 3) {
      doc.variables.push_back(e.items[1].atom);
    } else if (head == "assert" && e.items.size() == 2) {
      doc.asserts.push_back(e.items[1]);
    } else if (head == "check-sat") {
      doc.has_check_sat = true;
    } else {
      throw std::invalid_argument("smt: unsupported command " + head);
    }
  }
  return doc;
}

Rational eval_term(const SExpr& e, const std::map<std::string, Rational>& env) {
  if (e.is_atom) {
    if (is_number(e.atom)) return parse_numeral(e.atom);
    auto it = env.find(e.atom);
    if (it == env.end())
      throw std::invalid_argument("smt: unbound variable " + e.atom);
    return it->second;
  }
  if (e.items.empty() || !e.items[0].is_atom)
    throw std::invalid_argument("smt: malformed term");
  const std::string& op = e.items[0].atom;
  if (op == "-" && e.items.size() == 2) return -eval_term(e.items[1], env);
  if (e.items.size() < 2) throw std::invalid_argument("smt: arity of " + op);
  Rational acc = eval_term(e.items[1], env);
  for (std::size_t j = 2; j < e.items.size(); ++j) {
    Rational rhs = eval_term(e.items[j], env);
    if (op == "+") acc += rhs;
    else if (op == "-") acc -= rhs;
    else if (op == "*") acc *= rhs;
    else if (op == "/") acc /= rhs;
    else throw std::invalid_argument("smt: unknown operator " + op);
  }
  if (e.items.size() == 2 && op != "+" && op != "*" && op != "/")
    throw std::invalid_argument("smt: unknown operator " + op);
  return acc;
}

bool eval_formula(const SExpr& e, const std::map<std::string, Rational>& env) {
  if (e.is_atom) {
    if (e.atom == "true") return true;
    if (e.atom == "false") return false;
    throw std::invalid_argument("smt: not a formula: " + e.atom);
  }
  if (e.items.empty() || !e.items[0].is_atom)
    throw std::invalid_argument("smt: malformed formula");
  const std::string& op = e.items[0].atom;
  if (op == "and" || op == "or") {
    bool acc = (op == "and");
    for (std::size_t j = 1; j < e.items.size(); ++j) {
      bool b = eval_formula(e.items[j], env);
      acc = (op == "and") ? (acc && b) : (acc || b);
    }
    return acc;
  }
  if (op == "not" && e.items.size() == 2) return !eval_formula(e.items[1], env);
  if (e.items.size() != 3)
    throw std::invalid_argument("smt: relation arity for " + op);
  Rational a = eval_term(e.items[1], env), b = eval_term(e.items[2], env);
  if (op == "=") return a == b;
  if (op == "<=") return a <= b;
  if (op == ">=") return a >= b;
  if (op == "<") return a < b;
  if (op == ">") return a > b;
  throw std::invalid_argument("smt: unknown relation " + op);
}

std::string smt_rational(const Rational& q) {
  bool neg = q.sign() < 0;
  Rational a = neg ? -q : q;
  std::string body = a.denominator() == 1
                         ? a.numerator().get_str()
                         : "(/ " + a.numerator().get_str() + " " +
                               a.denominator().get_str() + ")";
  return neg ? "(- " + body + ")" : body;
}

std::string smt_symbol(const std::string& raw) {
  std::string out;
  for (char c : raw) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
        c == '-' || c == '@')
      out += c;
    else
      out += '_';
  }
  return out;
}

}  // namespace negame
