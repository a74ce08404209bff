#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rendezvous/rational.hpp"

namespace rendezvous {

enum class Sense { Maximize, Minimize };
enum class Rel { Le, Ge, Eq };
enum class VarBound { NonNeg, Free };

struct LpRow {
  std::vector<Rational> a;
  Rel rel = Rel::Le;
  Rational rhs;
};

struct LpProblem {
  Sense sense = Sense::Maximize;
  std::vector<Rational> c;
  std::vector<LpRow> rows;
  std::vector<VarBound> bounds;  // one entry per variable
  std::string name;

  std::size_t varCount() const { return c.size(); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  // Optimal: an optimal point. Unbounded: a feasible point from which the
  // ray improves without limit. Empty when infeasible.
  std::vector<Rational> x;
  Rational objective;  // in the problem's own sense; meaningful when optimal
  // Row multipliers at optimality, one per input row, maximization-form
  // Lagrangian signs.
  std::vector<Rational> duals;
  // Infeasible: multipliers y, one per input row, with y_i >= 0 on <= rows,
  // y_i <= 0 on >= rows, sum_i y_i a_i zero on free variables and
  // nonnegative on nonnegative variables, and sum_i y_i rhs_i < 0.
  std::vector<Rational> farkas;
  // Unbounded: direction d with c.d improving, a.d conforming to every
  // relation, and d >= 0 on nonnegative variables.
  std::vector<Rational> ray;
  // Final basic columns in standard-form indexing (structural split
  // columns, then slacks/surplus, then artificials).
  std::vector<int> basis;
  std::int64_t pivots = 0;
};

// Exact two-phase primal simplex on dense rational data. Entering variable
// by Bland's rule (smallest eligible index with positive reduced cost),
// leaving row by minimum ratio with smallest-basis-index tie break, so no
// cycle is possible. Every returned answer is re-checked against the
// original problem before it leaves the solver: optimal points and
// unbounded base points must satisfy every constraint exactly, Farkas
// multipliers must refute feasibility, rays must improve.
LpSolution solveLpExact(const LpProblem& prob);

// Exact feasibility / certificate checks against the original problem.
bool lpPointFeasible(const LpProblem& prob, const std::vector<Rational>& x);
bool lpFarkasValid(const LpProblem& prob, const std::vector<Rational>& y);
bool lpRayValid(const LpProblem& prob, const std::vector<Rational>& ray);

}  // namespace rendezvous
