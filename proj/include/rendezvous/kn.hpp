#pragma once

#include <optional>
#include <vector>

#include "rendezvous/rational.hpp"

namespace rendezvous {

// Block strategies on the complete graph with n locations: at each block of
// n-1 steps a player stays put with probability q or visits their other n-1
// locations in uniformly random order. Blocks are i.i.d., so the expected
// meeting time follows from the within-block meeting distribution by a
// renewal identity.

struct KnAwResult {
  int n = 0;
  double stayProb = 0.0;
  double expectedTime = 0.0;
  bool neverMeets = false;               // q = 1: both players sit forever
  std::vector<double> perBlockMeetDist;  // P(first meeting in a block at step t), t = 1..n-1
};

// Exact per-step first-meeting weights inside one block, as polynomials in
// the stay probability: P(meet at t) = qt[t-1]*q*(1-q) + tt[t-1]*(1-q)^2.
// (Both players staying never meets, so there is no q^2 term.)
struct KnBlockCoeffs {
  int n = 0;
  std::vector<Rational> qt;
  std::vector<Rational> tt;
};

KnBlockCoeffs knBlockCoeffs(int n);  // 3 <= n <= 6, exhaustive tour-pair enumeration

// Exact expected meeting time for rational q; nullopt when q = 1.
std::optional<Rational> knAwValueExact(int n, const Rational& q);

KnAwResult knAwEvaluate(int n, double stayProb);

// Golden-section minimization of the expected time over q in [0,1], to 1e-6.
KnAwResult knAwOptimize(int n);

}  // namespace rendezvous
