#include "negame/lp.hpp"

#include <stdexcept>
#include <vector>

namespace negame {

namespace {

// Dense simplex tableau in equality form, rhs >= 0, minimization.
struct Tableau {
  std::vector<std::vector<Rational>> a;  // m x ncols
  std::vector<Rational> rhs;             // m
  std::vector<int> basis;                // m, column index
  std::size_t ncols = 0;

  std::size_t rows() const { return a.size(); }
  std::size_t cols() const { return ncols; }

  void pivot(std::size_t row, std::size_t col) {
    Rational inv = Rational(1) / a[row][col];
    for (auto& x : a[row]) x *= inv;
    rhs[row] *= inv;
    for (std::size_t i = 0; i < rows(); ++i) {
      if (i == row || a[i][col].sign() == 0) continue;
      Rational f = a[i][col];
      for (std::size_t j = 0; j < cols(); ++j) a[i][j] -= f * a[row][j];
      rhs[i] -= f * rhs[row];
    }
    basis[row] = static_cast<int>(col);
  }

  // Minimize cost.x with Bland's rule; `allowed(j)` gates entering columns.
  // Returns false iff unbounded.
  template <class Allowed>
  bool run(const std::vector<Rational>& cost, Allowed allowed) {
    for (;;) {
      // reduced costs d_j = c_j - sum_i c_{B(i)} a[i][j]
      std::size_t enter = cols();
      for (std::size_t j = 0; j < cols(); ++j) {
        if (!allowed(j)) continue;
        Rational d = cost[j];
        for (std::size_t i = 0; i < rows(); ++i)
          if (cost[basis[i]].sign() != 0 && a[i][j].sign() != 0)
            d -= cost[basis[i]] * a[i][j];
        if (d.sign() < 0) { enter = j; break; }
      }
      if (enter == cols()) return true;  // optimal
      std::size_t leave = rows();
      Rational best;
      for (std::size_t i = 0; i < rows(); ++i) {
        if (a[i][enter].sign() <= 0) continue;
        Rational ratio = rhs[i] / a[i][enter];
        if (leave == rows() || ratio < best ||
            (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows()) return false;  // unbounded
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult lp_solve(const LinearProgram& lp) {
  std::size_t n = lp.variables.size();
  for (const auto& c : lp.constraints)
    if (c.coefficients.size() != n)
      throw std::invalid_argument("lp_solve: constraint width mismatch");
  if (lp.objective && lp.objective->coefficients.size() != n)
    throw std::invalid_argument("lp_solve: objective width mismatch");

  // Presolve: rows of the shape c*x >= 0 (c>0) or c*x <= 0 (c<0) become
  // nonnegativity bounds; every other variable is split x = x+ - x-.
  std::vector<bool> nonneg(n, false);
  std::vector<bool> keep(lp.constraints.size(), true);
  for (std::size_t r = 0; r < lp.constraints.size(); ++r) {
    const auto& c = lp.constraints[r];
    if (c.rhs.sign() != 0 || c.relation == Relation::Equal) continue;
    int nz = -1;
    bool single = true;
    for (std::size_t j = 0; j < n; ++j)
      if (c.coefficients[j].sign() != 0) {
        if (nz >= 0) { single = false; break; }
        nz = static_cast<int>(j);
      }
    if (!single || nz < 0) continue;
    int s = c.coefficients[nz].sign();
    if ((c.relation == Relation::GreaterEq && s > 0) ||
        (c.relation == Relation::LessEq && s < 0)) {
      nonneg[nz] = true;
      keep[r] = false;
    }
  }

  // Column layout: per variable one column (nonneg) or a +/- pair, then
  // slack columns, then artificials.
  std::vector<int> pos_col(n), neg_col(n, -1);
  std::size_t ncols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    pos_col[j] = static_cast<int>(ncols++);
    if (!nonneg[j]) neg_col[j] = static_cast<int>(ncols++);
  }
  std::size_t struct_cols = ncols;

  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  std::vector<Relation> rel;
  for (std::size_t r = 0; r < lp.constraints.size(); ++r) {
    if (!keep[r]) continue;
    const auto& c = lp.constraints[r];
    std::vector<Rational> row(struct_cols, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
      if (c.coefficients[j].sign() == 0) continue;
      row[pos_col[j]] = c.coefficients[j];
      if (neg_col[j] >= 0) row[neg_col[j]] = -c.coefficients[j];
    }
    rows.push_back(std::move(row));
    rhs.push_back(c.rhs);
    rel.push_back(c.relation);
  }
  std::size_t m = rows.size();

  // Slack / surplus columns, then flip rows to rhs >= 0.
  std::vector<int> slack_col(m, -1);
  for (std::size_t i = 0; i < m; ++i)
    if (rel[i] != Relation::Equal) slack_col[i] = static_cast<int>(ncols++);
  std::size_t slack_end = ncols;
  for (std::size_t i = 0; i < m; ++i) {
    rows[i].resize(slack_end, Rational(0));
    if (slack_col[i] >= 0)
      rows[i][slack_col[i]] = rel[i] == Relation::LessEq ? Rational(1) : Rational(-1);
    if (rhs[i].sign() < 0) {
      for (auto& x : rows[i]) x = -x;
      rhs[i] = -rhs[i];
    }
  }

  // Initial basis: a slack with coefficient +1 where available, otherwise a
  // fresh artificial.
  Tableau t;
  t.basis.assign(m, -1);
  std::vector<int> art_col(m, -1);
  for (std::size_t i = 0; i < m; ++i) {
    if (slack_col[i] >= 0 && rows[i][slack_col[i]] == Rational(1))
      t.basis[i] = slack_col[i];
    else
      art_col[i] = static_cast<int>(ncols++);
  }
  for (std::size_t i = 0; i < m; ++i) {
    rows[i].resize(ncols, Rational(0));
    if (art_col[i] >= 0) {
      rows[i][art_col[i]] = Rational(1);
      t.basis[i] = art_col[i];
    }
  }
  t.a = std::move(rows);
  t.rhs = std::move(rhs);
  t.ncols = ncols;

  std::size_t art_begin = slack_end;
  bool need_phase1 = ncols > art_begin;
  if (need_phase1) {
    std::vector<Rational> cost(ncols, Rational(0));
    for (std::size_t j = art_begin; j < ncols; ++j) cost[j] = Rational(1);
    t.run(cost, [](std::size_t) { return true; });
    Rational phase1(0);
    for (std::size_t i = 0; i < m; ++i)
      if (static_cast<std::size_t>(t.basis[i]) >= art_begin) phase1 += t.rhs[i];
    if (phase1.sign() != 0) return {LpResult::Status::Infeasible, {}, {}};
    // Drive leftover artificials out of the basis; rows with no
    // non-artificial pivot are redundant and dropped.
    for (std::size_t i = 0; i < t.rows();) {
      if (static_cast<std::size_t>(t.basis[i]) < art_begin) { ++i; continue; }
      std::size_t j = 0;
      while (j < art_begin && t.a[i][j].sign() == 0) ++j;
      if (j < art_begin) {
        t.pivot(i, j);
        ++i;
      } else {
        t.a.erase(t.a.begin() + i);
        t.rhs.erase(t.rhs.begin() + i);
        t.basis.erase(t.basis.begin() + i);
      }
    }
  }

  LpResult res;
  res.status = LpResult::Status::Feasible;
  if (lp.objective) {
    std::vector<Rational> cost(ncols, Rational(0));
    bool maximize = lp.objective->direction == Direction::Maximize;
    for (std::size_t j = 0; j < n; ++j) {
      Rational c = lp.objective->coefficients[j];
      if (maximize) c = -c;
      cost[pos_col[j]] = c;
      if (neg_col[j] >= 0) cost[neg_col[j]] = -c;
    }
    bool bounded =
        t.run(cost, [&](std::size_t j) { return j < art_begin; });
    if (!bounded) return {LpResult::Status::Unbounded, {}, {}};
  }

  std::vector<Rational> value(ncols, Rational(0));
  for (std::size_t i = 0; i < t.rows(); ++i) value[t.basis[i]] = t.rhs[i];
  res.assignment.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    Rational v = value[pos_col[j]];
    if (neg_col[j] >= 0) v -= value[neg_col[j]];
    res.assignment.push_back(v);
  }
  if (lp.objective) {
    Rational obj(0);
    for (std::size_t j = 0; j < n; ++j)
      obj += lp.objective->coefficients[j] * res.assignment[j];
    res.objective_value = obj;
  }
  return res;
}

}  // namespace negame
