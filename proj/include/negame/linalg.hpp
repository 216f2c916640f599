#pragma once

#include <vector>

#include "negame/rational.hpp"

namespace negame {

// One equation: coefficients . x = rhs.
struct LinearRow {
  std::vector<Rational> coefficients;
  Rational rhs;
};

struct LinearSystemResult {
  enum class Status { Unique, Underdetermined, Inconsistent };
  Status status = Status::Inconsistent;
  // Valid unless Inconsistent. For Underdetermined this is a particular
  // solution with all free variables set to 0.
  std::vector<Rational> assignment;
  int free_variables = 0;
};

// Exact Gaussian elimination. All rows must have equal length.
LinearSystemResult solve_linear_system(const std::vector<LinearRow>& rows);

}  // namespace negame
