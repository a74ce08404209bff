#include "rendezvous/kn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace rendezvous {

namespace {

void requireN(int n) {
  if (n < 3 || n > 6) throw std::invalid_argument("K_n block strategies: need 3 <= n <= 6");
}

std::vector<std::vector<int>> allPermutations(std::vector<int> items) {
  std::sort(items.begin(), items.end());
  std::vector<std::vector<int>> out;
  do {
    out.push_back(items);
  } while (std::next_permutation(items.begin(), items.end()));
  return out;
}

long factorial(int n) {
  long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

namespace {

KnBlockCoeffs computeBlockCoeffs(int n) {
  const int steps = n - 1;
  KnBlockCoeffs c;
  c.n = n;
  c.qt.assign(static_cast<std::size_t>(steps), 0);
  c.tt.assign(static_cast<std::size_t>(steps), 0);

  // Player I sits at location 0; player II starts at a uniformly random
  // other location s. Tours visit the tourist's other n-1 locations.
  std::vector<int> othersOfI(static_cast<std::size_t>(steps));
  std::iota(othersOfI.begin(), othersOfI.end(), 1);
  const auto toursI = allPermutations(othersOfI);
  const Rational offsetWeight(1, steps);
  const Rational tourWeight(1, factorial(steps));

  for (int s = 1; s < n; ++s) {
    std::vector<int> othersOfII;
    for (int loc = 0; loc < n; ++loc)
      if (loc != s) othersOfII.push_back(loc);
    const auto toursII = allPermutations(othersOfII);

    // I stays, II tours: they meet at the step where II reaches location 0.
    for (const auto& tau : toursII)
      for (int t = 0; t < steps; ++t)
        if (tau[static_cast<std::size_t>(t)] == 0) {
          c.qt[static_cast<std::size_t>(t)] += offsetWeight * tourWeight;
          break;
        }
    // II stays, I tours: meet where I reaches s.
    for (const auto& sigma : toursI)
      for (int t = 0; t < steps; ++t)
        if (sigma[static_cast<std::size_t>(t)] == s) {
          c.qt[static_cast<std::size_t>(t)] += offsetWeight * tourWeight;
          break;
        }
    // Both tour: first step where the tours coincide, if any.
    const Rational pairWeight = offsetWeight * tourWeight * tourWeight;
    for (const auto& sigma : toursI)
      for (const auto& tau : toursII)
        for (int t = 0; t < steps; ++t)
          if (sigma[static_cast<std::size_t>(t)] == tau[static_cast<std::size_t>(t)]) {
            c.tt[static_cast<std::size_t>(t)] += pairWeight;
            break;
          }
    // Both stay: locations 0 and s never coincide; no contribution.
  }
  return c;
}

}  // namespace

KnBlockCoeffs knBlockCoeffs(int n) {
  requireN(n);
  static const KnBlockCoeffs cache[4] = {computeBlockCoeffs(3), computeBlockCoeffs(4),
                                         computeBlockCoeffs(5), computeBlockCoeffs(6)};
  return cache[n - 3];
}

std::optional<Rational> knAwValueExact(int n, const Rational& q) {
  if (q.sign() < 0 || q.cmp(1) > 0)
    throw std::invalid_argument("knAwValueExact: need 0 <= q <= 1");
  if (q.cmp(1) == 0) return std::nullopt;
  const KnBlockCoeffs c = knBlockCoeffs(n);
  const int steps = n - 1;
  const Rational p = Rational(1) - q;
  Rational meet = 0, weighted = 0;
  for (int t = 0; t < steps; ++t) {
    const Rational dt = c.qt[static_cast<std::size_t>(t)] * q * p +
                        c.tt[static_cast<std::size_t>(t)] * p * p;
    meet += dt;
    weighted += Rational(t + 1) * dt;
  }
  // With survival probability s per block and block length L = n-1:
  // ET = s*(L + ET) + sum_t t*d_t, hence ET = (L*s + sum_t t*d_t)/(1-s).
  const Rational survive = Rational(1) - meet;
  return (Rational(steps) * survive + weighted) / meet;
}

KnAwResult knAwEvaluate(int n, double stayProb) {
  requireN(n);
  if (stayProb < 0.0 || stayProb > 1.0)
    throw std::invalid_argument("knAwEvaluate: need 0 <= stayProb <= 1");
  const KnBlockCoeffs c = knBlockCoeffs(n);
  const int steps = n - 1;
  KnAwResult r;
  r.n = n;
  r.stayProb = stayProb;
  const double q = stayProb, p = 1.0 - stayProb;
  double meet = 0.0, weighted = 0.0;
  r.perBlockMeetDist.resize(static_cast<std::size_t>(steps));
  for (int t = 0; t < steps; ++t) {
    const double dt = c.qt[static_cast<std::size_t>(t)].toDouble() * q * p +
                      c.tt[static_cast<std::size_t>(t)].toDouble() * p * p;
    r.perBlockMeetDist[static_cast<std::size_t>(t)] = dt;
    meet += dt;
    weighted += (t + 1) * dt;
  }
  if (meet <= 0.0) {
    r.neverMeets = true;
    r.expectedTime = std::numeric_limits<double>::infinity();
    return r;
  }
  r.expectedTime = (steps * (1.0 - meet) + weighted) / meet;
  return r;
}

KnAwResult knAwOptimize(int n) {
  requireN(n);
  // Coarse grid to bracket the minimum, then golden-section refinement.
  double bestQ = 0.0, bestV = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 200; ++i) {
    const double q = i / 200.0;
    const double v = knAwEvaluate(n, q).expectedTime;
    if (v < bestV) {
      bestV = v;
      bestQ = q;
    }
  }
  double lo = std::max(0.0, bestQ - 0.01), hi = std::min(1.0, bestQ + 0.01);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
  double fa = knAwEvaluate(n, a).expectedTime, fb = knAwEvaluate(n, b).expectedTime;
  while (hi - lo > 1e-9) {
    if (fa < fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - gr * (hi - lo);
      fa = knAwEvaluate(n, a).expectedTime;
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + gr * (hi - lo);
      fb = knAwEvaluate(n, b).expectedTime;
    }
  }
  return knAwEvaluate(n, (lo + hi) / 2.0);
}

}  // namespace rendezvous
