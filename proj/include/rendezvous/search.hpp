#pragma once

#include <cstdint>
#include <vector>

#include "rendezvous/game.hpp"

namespace rendezvous {

struct SearchConfig {
  int k = 4;
  int restarts = 100;
  std::uint64_t seed = 1;
  int maxIters = 400;          // projected-descent iterations per restart
  long snapDenominatorBound = 1000;
};

struct SearchResult {
  SimplexStrategy bestStrategy;  // exact, post-snap, re-verified
  double floatValue = 0;         // display-only float rendering of exactValue's point
  Rational exactValue;           // tailProb of bestStrategy, recomputed exactly
  int restartsUsed = 0;
};

struct QuadEval {
  double value = 0;
  std::vector<double> gradient;
};

// Float mirror of the exact no-meet quadratic: value p.(B_k p) and gradient
// (B_k + B_k^T) p, via the same Kronecker matvec recursion as the exact
// path. Defined for any vector; callers keep p on the simplex.
QuadEval localQuadValue(int k, const std::vector<double>& p);

// Euclidean projection onto the probability simplex.
std::vector<double> projectToSimplex(std::vector<double> v);

// Best rational approximation to v with denominator at most maxDen, by
// continued fractions (including the best semiconvergent).
Rational bestRationalApprox(double v, long maxDen);

// Random-restart projected gradient descent on the k-step no-meet
// probability over the simplex, k <= 6. The restart pool starts with the
// 2-step block strategy and the uniform strategy, then random points of
// varying support. The best float candidates are snapped onto small
// denominators and re-verified exactly; only exact values are trusted.
// Deterministic for a fixed config.
SearchResult searchTail(const SearchConfig& config);

}  // namespace rendezvous
