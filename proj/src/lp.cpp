#include "rendezvous/lp.hpp"

#include <stdexcept>
#include <utility>

namespace rendezvous {

namespace {

void validate(const LpProblem& prob) {
  const std::size_t n = prob.c.size();
  if (n == 0) throw std::invalid_argument("solveLpExact: problem has no variables");
  if (prob.bounds.size() != n)
    throw std::invalid_argument("solveLpExact: bounds size does not match variable count");
  for (const auto& row : prob.rows)
    if (row.a.size() != n)
      throw std::invalid_argument("solveLpExact: row width does not match variable count");
}

// Standard form: maximize cMax.x over A x = b, x >= 0, b >= 0. Columns are
// the structural split columns, then one slack/surplus per inequality row,
// then one artificial per row that needs one.
struct StdForm {
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  std::vector<Rational> cMax;
  int nCols = 0;
  int firstArt = 0;                           // structural + slack column count
  std::vector<std::pair<int, int>> colVar;    // structural col -> (variable, sign)
  std::vector<int> rowSlackCol;               // +e_i slack column per row, or -1
  std::vector<int> rowArtCol;                 // artificial column per row, or -1
  std::vector<bool> rowFlipped;               // input row negated to make rhs >= 0
};

StdForm standardize(const LpProblem& prob) {
  const int nVars = static_cast<int>(prob.varCount());
  const int m = static_cast<int>(prob.rows.size());
  StdForm sf;

  for (int v = 0; v < nVars; ++v) {
    sf.colVar.emplace_back(v, 1);
    if (prob.bounds[static_cast<std::size_t>(v)] == VarBound::Free) sf.colVar.emplace_back(v, -1);
  }
  const int nStruct = static_cast<int>(sf.colVar.size());

  int nSlack = 0;
  for (const auto& row : prob.rows)
    if (row.rel != Rel::Eq) ++nSlack;

  sf.firstArt = nStruct + nSlack;
  sf.rowSlackCol.assign(static_cast<std::size_t>(m), -1);
  sf.rowArtCol.assign(static_cast<std::size_t>(m), -1);
  sf.rowFlipped.assign(static_cast<std::size_t>(m), false);
  sf.b.resize(static_cast<std::size_t>(m));

  // First pass decides column indices; artificials are appended on demand.
  int slackAt = nStruct;
  int artAt = sf.firstArt;
  std::vector<Rel> effRel(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const auto& row = prob.rows[static_cast<std::size_t>(i)];
    bool flip = row.rhs.sign() < 0;
    sf.rowFlipped[static_cast<std::size_t>(i)] = flip;
    Rel rel = row.rel;
    if (flip && rel == Rel::Le) rel = Rel::Ge;
    else if (flip && rel == Rel::Ge) rel = Rel::Le;
    effRel[static_cast<std::size_t>(i)] = rel;
    if (row.rel != Rel::Eq) {
      if (rel == Rel::Le)
        sf.rowSlackCol[static_cast<std::size_t>(i)] = slackAt++;
      else
        ++slackAt;  // surplus column, recorded in the matrix below
    }
    if (rel != Rel::Le) sf.rowArtCol[static_cast<std::size_t>(i)] = artAt++;
  }
  sf.nCols = artAt;

  sf.a.assign(static_cast<std::size_t>(m),
              std::vector<Rational>(static_cast<std::size_t>(sf.nCols)));
  slackAt = nStruct;
  for (int i = 0; i < m; ++i) {
    const auto& row = prob.rows[static_cast<std::size_t>(i)];
    const bool flip = sf.rowFlipped[static_cast<std::size_t>(i)];
    auto& out = sf.a[static_cast<std::size_t>(i)];
    for (int j = 0; j < nStruct; ++j) {
      const auto [v, sign] = sf.colVar[static_cast<std::size_t>(j)];
      Rational e = row.a[static_cast<std::size_t>(v)];
      if (sign < 0) e = -e;
      if (flip) e = -e;
      out[static_cast<std::size_t>(j)] = std::move(e);
    }
    sf.b[static_cast<std::size_t>(i)] = flip ? -row.rhs : row.rhs;
    if (row.rel != Rel::Eq) {
      const Rel rel = effRel[static_cast<std::size_t>(i)];
      out[static_cast<std::size_t>(slackAt)] = rel == Rel::Le ? 1 : -1;
      ++slackAt;
    }
    const int art = sf.rowArtCol[static_cast<std::size_t>(i)];
    if (art >= 0) out[static_cast<std::size_t>(art)] = 1;
  }

  sf.cMax.assign(static_cast<std::size_t>(sf.nCols), Rational(0));
  for (int j = 0; j < nStruct; ++j) {
    const auto [v, sign] = sf.colVar[static_cast<std::size_t>(j)];
    Rational e = prob.c[static_cast<std::size_t>(v)];
    if (sign < 0) e = -e;
    if (prob.sense == Sense::Minimize) e = -e;
    sf.cMax[static_cast<std::size_t>(j)] = std::move(e);
  }
  return sf;
}

class Tableau {
 public:
  Tableau(const StdForm& sf, std::int64_t pivotCap)
      : m_(static_cast<int>(sf.b.size())), n_(sf.nCols), cap_(pivotCap) {
    t_.assign(static_cast<std::size_t>(m_),
              std::vector<Rational>(static_cast<std::size_t>(n_ + 1)));
    basis_.resize(static_cast<std::size_t>(m_));
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j)
        t_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            sf.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      t_[static_cast<std::size_t>(i)][static_cast<std::size_t>(n_)] =
          sf.b[static_cast<std::size_t>(i)];
      const int art = sf.rowArtCol[static_cast<std::size_t>(i)];
      basis_[static_cast<std::size_t>(i)] =
          art >= 0 ? art : sf.rowSlackCol[static_cast<std::size_t>(i)];
    }
  }

  // Sets the reduced-cost row for objective c over the current basis.
  void loadObjective(const std::vector<Rational>& c) {
    cbar_ = c;
    z_ = 0;
    for (int i = 0; i < m_; ++i) {
      const Rational& cb = c[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])];
      if (cb.isZero()) continue;
      const auto& row = t_[static_cast<std::size_t>(i)];
      for (int j = 0; j <= n_; ++j) {
        if (row[static_cast<std::size_t>(j)].isZero()) continue;
        if (j == n_)
          z_ += cb * row[static_cast<std::size_t>(j)];
        else
          cbar_[static_cast<std::size_t>(j)] -= cb * row[static_cast<std::size_t>(j)];
      }
    }
  }

  // Runs Bland pivots until no eligible entering column (returns -1) or an
  // unbounded entering column is found (returns its index). Columns at or
  // beyond enterLimit never enter.
  int iterate(int enterLimit) {
    for (;;) {
      int pc = -1;
      for (int j = 0; j < enterLimit; ++j)
        if (cbar_[static_cast<std::size_t>(j)].sign() > 0) {
          pc = j;
          break;
        }
      if (pc < 0) return -1;
      const int pr = leavingRow(pc);
      if (pr < 0) return pc;
      pivot(pr, pc);
    }
  }

  int leavingRow(int pc) const {
    int pr = -1;
    Rational best;
    for (int i = 0; i < m_; ++i) {
      const Rational& e = t_[static_cast<std::size_t>(i)][static_cast<std::size_t>(pc)];
      if (e.sign() <= 0) continue;
      Rational ratio = t_[static_cast<std::size_t>(i)][static_cast<std::size_t>(n_)] / e;
      if (pr < 0 || ratio < best ||
          (ratio == best &&
           basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(pr)])) {
        pr = i;
        best = std::move(ratio);
      }
    }
    return pr;
  }

  void pivot(int pr, int pc) {
    if (++pivots_ > cap_) throw std::runtime_error("solveLpExact: pivot limit exceeded");
    auto& prow = t_[static_cast<std::size_t>(pr)];
    const Rational piv = prow[static_cast<std::size_t>(pc)];
    for (auto& e : prow)
      if (!e.isZero()) e /= piv;
    for (int i = 0; i < m_; ++i) {
      if (i == pr) continue;
      auto& row = t_[static_cast<std::size_t>(i)];
      const Rational f = row[static_cast<std::size_t>(pc)];
      if (f.isZero()) continue;
      for (int j = 0; j <= n_; ++j)
        if (!prow[static_cast<std::size_t>(j)].isZero())
          row[static_cast<std::size_t>(j)] -= f * prow[static_cast<std::size_t>(j)];
    }
    const Rational f = cbar_[static_cast<std::size_t>(pc)];
    if (!f.isZero()) {
      z_ += f * prow[static_cast<std::size_t>(n_)];
      for (int j = 0; j <= n_; ++j)
        if (!prow[static_cast<std::size_t>(j)].isZero()) {
          if (j == n_) continue;
          cbar_[static_cast<std::size_t>(j)] -= f * prow[static_cast<std::size_t>(j)];
        }
    }
    basis_[static_cast<std::size_t>(pr)] = pc;
  }

  const Rational& entry(int i, int j) const {
    return t_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  const Rational& rhs(int i) const { return entry(i, n_); }
  const Rational& reducedCost(int j) const { return cbar_[static_cast<std::size_t>(j)]; }
  const Rational& objective() const { return z_; }
  const std::vector<int>& basis() const { return basis_; }
  int rows() const { return m_; }
  int basisAt(int i) const { return basis_[static_cast<std::size_t>(i)]; }
  std::int64_t pivots() const { return pivots_; }

 private:
  int m_, n_;
  std::int64_t cap_;
  std::vector<std::vector<Rational>> t_;
  std::vector<Rational> cbar_;
  Rational z_;
  std::vector<int> basis_;
  std::int64_t pivots_ = 0;
};

std::vector<Rational> extractPoint(const StdForm& sf, const Tableau& tab, std::size_t nVars) {
  std::vector<Rational> xStd(static_cast<std::size_t>(sf.nCols));
  for (int i = 0; i < tab.rows(); ++i) xStd[static_cast<std::size_t>(tab.basisAt(i))] = tab.rhs(i);
  std::vector<Rational> x(nVars);
  for (std::size_t j = 0; j < sf.colVar.size(); ++j) {
    const auto [v, sign] = sf.colVar[j];
    if (sign > 0)
      x[static_cast<std::size_t>(v)] += xStd[j];
    else
      x[static_cast<std::size_t>(v)] -= xStd[j];
  }
  return x;
}

// Row multipliers y = c_B B^{-1}, read off the columns that started as e_i
// (the slack or artificial of row i): the current reduced cost there is
// cCol - y_i.
std::vector<Rational> rowMultipliers(const StdForm& sf, const Tableau& tab,
                                     const Rational& artCost) {
  const int m = static_cast<int>(sf.b.size());
  std::vector<Rational> y(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    Rational yi;
    if (sf.rowArtCol[static_cast<std::size_t>(i)] >= 0)
      yi = artCost - tab.reducedCost(sf.rowArtCol[static_cast<std::size_t>(i)]);
    else
      yi = -tab.reducedCost(sf.rowSlackCol[static_cast<std::size_t>(i)]);
    if (sf.rowFlipped[static_cast<std::size_t>(i)]) yi = -yi;
    y[static_cast<std::size_t>(i)] = std::move(yi);
  }
  return y;
}

}  // namespace

bool lpPointFeasible(const LpProblem& prob, const std::vector<Rational>& x) {
  if (x.size() != prob.varCount()) return false;
  for (std::size_t v = 0; v < x.size(); ++v)
    if (prob.bounds[v] == VarBound::NonNeg && x[v].sign() < 0) return false;
  for (const auto& row : prob.rows) {
    Rational lhs;
    for (std::size_t v = 0; v < x.size(); ++v) {
      if (row.a[v].isZero() || x[v].isZero()) continue;
      lhs += row.a[v] * x[v];
    }
    if (row.rel == Rel::Le && lhs > row.rhs) return false;
    if (row.rel == Rel::Ge && lhs < row.rhs) return false;
    if (row.rel == Rel::Eq && !(lhs == row.rhs)) return false;
  }
  return true;
}

bool lpFarkasValid(const LpProblem& prob, const std::vector<Rational>& y) {
  if (y.size() != prob.rows.size()) return false;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (prob.rows[i].rel == Rel::Le && y[i].sign() < 0) return false;
    if (prob.rows[i].rel == Rel::Ge && y[i].sign() > 0) return false;
  }
  Rational rhsComb;
  for (std::size_t i = 0; i < y.size(); ++i) rhsComb += y[i] * prob.rows[i].rhs;
  if (!(rhsComb.sign() < 0)) return false;
  for (std::size_t v = 0; v < prob.varCount(); ++v) {
    Rational col;
    for (std::size_t i = 0; i < y.size(); ++i) col += y[i] * prob.rows[i].a[v];
    if (prob.bounds[v] == VarBound::Free && !col.isZero()) return false;
    if (prob.bounds[v] == VarBound::NonNeg && col.sign() < 0) return false;
  }
  return true;
}

bool lpRayValid(const LpProblem& prob, const std::vector<Rational>& ray) {
  if (ray.size() != prob.varCount()) return false;
  bool nonzero = false;
  for (std::size_t v = 0; v < ray.size(); ++v) {
    if (!ray[v].isZero()) nonzero = true;
    if (prob.bounds[v] == VarBound::NonNeg && ray[v].sign() < 0) return false;
  }
  if (!nonzero) return false;
  for (const auto& row : prob.rows) {
    Rational d;
    for (std::size_t v = 0; v < ray.size(); ++v) d += row.a[v] * ray[v];
    if (row.rel == Rel::Le && d.sign() > 0) return false;
    if (row.rel == Rel::Ge && d.sign() < 0) return false;
    if (row.rel == Rel::Eq && !d.isZero()) return false;
  }
  Rational gain;
  for (std::size_t v = 0; v < ray.size(); ++v) gain += prob.c[v] * ray[v];
  return prob.sense == Sense::Maximize ? gain.sign() > 0 : gain.sign() < 0;
}

LpSolution solveLpExact(const LpProblem& prob) {
  validate(prob);
  const StdForm sf = standardize(prob);
  const int m = static_cast<int>(sf.b.size());
  const std::int64_t cap = 200000 + 200LL * (m + sf.nCols);
  Tableau tab(sf, cap);
  LpSolution sol;

  // Phase 1: maximize minus the artificial sum.
  bool anyArt = false;
  std::vector<Rational> c1(static_cast<std::size_t>(sf.nCols));
  for (int i = 0; i < m; ++i)
    if (sf.rowArtCol[static_cast<std::size_t>(i)] >= 0) {
      c1[static_cast<std::size_t>(sf.rowArtCol[static_cast<std::size_t>(i)])] = -1;
      anyArt = true;
    }
  if (anyArt) {
    tab.loadObjective(c1);
    if (tab.iterate(sf.nCols) >= 0)
      throw std::logic_error("solveLpExact: phase 1 reported unbounded");
    if (tab.objective().sign() < 0) {
      sol.status = LpStatus::Infeasible;
      sol.farkas = rowMultipliers(sf, tab, Rational(-1));
      sol.pivots = tab.pivots();
      if (!lpFarkasValid(prob, sol.farkas))
        throw std::logic_error("solveLpExact: infeasibility certificate failed re-check");
      return sol;
    }
    // Drive leftover artificials out of the basis where possible; rows with
    // no structural pivot are redundant and stay inert at level zero.
    for (int i = 0; i < m; ++i) {
      if (tab.basisAt(i) < sf.firstArt) continue;
      for (int j = 0; j < sf.firstArt; ++j)
        if (!tab.entry(i, j).isZero()) {
          tab.pivot(i, j);
          break;
        }
    }
  }

  // Phase 2 over the real objective; artificial columns never re-enter.
  tab.loadObjective(sf.cMax);
  const int unboundedCol = tab.iterate(sf.firstArt);
  sol.pivots = tab.pivots();
  sol.basis = tab.basis();

  if (unboundedCol >= 0) {
    sol.status = LpStatus::Unbounded;
    sol.x = extractPoint(sf, tab, prob.varCount());
    std::vector<Rational> dStd(static_cast<std::size_t>(sf.nCols));
    dStd[static_cast<std::size_t>(unboundedCol)] = 1;
    for (int i = 0; i < m; ++i)
      dStd[static_cast<std::size_t>(tab.basisAt(i))] = -tab.entry(i, unboundedCol);
    sol.ray.assign(prob.varCount(), Rational(0));
    for (std::size_t j = 0; j < sf.colVar.size(); ++j) {
      const auto [v, sign] = sf.colVar[j];
      if (sign > 0)
        sol.ray[static_cast<std::size_t>(v)] += dStd[j];
      else
        sol.ray[static_cast<std::size_t>(v)] -= dStd[j];
    }
    if (!lpPointFeasible(prob, sol.x) || !lpRayValid(prob, sol.ray))
      throw std::logic_error("solveLpExact: unbounded certificate failed re-check");
    return sol;
  }

  sol.status = LpStatus::Optimal;
  sol.x = extractPoint(sf, tab, prob.varCount());
  for (std::size_t v = 0; v < prob.varCount(); ++v)
    if (!prob.c[v].isZero() && !sol.x[v].isZero()) sol.objective += prob.c[v] * sol.x[v];
  sol.duals = rowMultipliers(sf, tab, Rational(0));
  if (!lpPointFeasible(prob, sol.x))
    throw std::logic_error("solveLpExact: optimal point failed re-check");
  return sol;
}

}  // namespace rendezvous
