#pragma once

#include <optional>
#include <string>
#include <vector>

#include "negame/rational.hpp"

namespace negame {

enum class Relation { LessEq, Equal, GreaterEq };
enum class Direction { Minimize, Maximize };

struct LpConstraint {
  std::vector<Rational> coefficients;  // one per declared variable
  Relation relation = Relation::LessEq;
  Rational rhs;
};

struct LpObjective {
  std::vector<Rational> coefficients;
  Direction direction = Direction::Minimize;
};

struct LinearProgram {
  std::vector<std::string> variables;
  std::vector<LpConstraint> constraints;
  std::optional<LpObjective> objective;
};

struct LpResult {
  enum class Status { Feasible, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  std::vector<Rational> assignment;         // valid iff Feasible
  std::optional<Rational> objective_value;  // set iff Feasible and objective given
};

// Exact two-phase simplex with Bland's rule. Variables are free unless a
// constraint row of the shape "c*x >= 0" (or "-c*x <= 0") pins them
// nonnegative; such rows are absorbed as variable bounds.
LpResult lp_solve(const LinearProgram& lp);

}  // namespace negame
