#include "rendezvous/search.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <utility>

#include "rendezvous/block_matvec.hpp"
#include "rendezvous/errors.hpp"

namespace rendezvous {

namespace {

constexpr int kSearchCap = 6;

double uniformDouble(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double exponentialDouble(std::mt19937_64& rng) {
  return -std::log1p(-uniformDouble(rng));
}

std::mt19937_64 restartRng(std::uint64_t seed, int restart) {
  return std::mt19937_64(seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(restart) + 1)));
}

std::vector<double> toDoubles(const PathVector& v) {
  std::vector<double> out(static_cast<std::size_t>(v.size()));
  for (std::int64_t i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(i)] = v[i].toDouble();
  return out;
}

// Monotone projected gradient descent with halving step sizes.
std::pair<double, std::vector<double>> descend(int k, std::vector<double> p, int maxIters) {
  QuadEval ev = localQuadValue(k, p);
  for (int it = 0; it < maxIters; ++it) {
    double eta = 1.0;
    bool improved = false;
    while (eta > 1e-13) {
      std::vector<double> q(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) q[i] = p[i] - eta * ev.gradient[i];
      q = projectToSimplex(std::move(q));
      const QuadEval evq = localQuadValue(k, q);
      if (evq.value < ev.value - 1e-15) {
        p = std::move(q);
        ev = evq;
        improved = true;
        break;
      }
      eta *= 0.5;
    }
    if (!improved) break;
  }
  return {ev.value, std::move(p)};
}

std::vector<double> randomStart(std::size_t n, std::mt19937_64& rng) {
  std::vector<double> p(n, 0.0);
  const std::uint64_t kind = rng() % 3;
  std::size_t support = n;
  if (kind != 0) {
    const std::size_t hi = kind == 1 ? std::min<std::size_t>(n, 12) : std::min<std::size_t>(n, 40);
    support = 2 + static_cast<std::size_t>(rng() % (hi - 1));
  }
  if (support >= n) {
    for (auto& e : p) e = exponentialDouble(rng);
  } else {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = 0; i < support; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng() % (n - i));
      std::swap(idx[i], idx[j]);
      p[idx[i]] = exponentialDouble(rng);
    }
  }
  double sum = 0;
  for (const double e : p) sum += e;
  for (auto& e : p) e /= sum;
  return p;
}

constexpr long kSnapLadder[] = {2,   3,   4,   5,   6,   7,   8,   9,   10,  12,  15,  16,
                                18,  20,  24,  27,  30,  36,  40,  45,  48,  54,  60,  72,
                                81,  90,  100, 128, 144, 200, 243, 256, 500, 729, 1000};

}  // namespace

QuadEval localQuadValue(int k, const std::vector<double>& p) {
  requireLevel(k, "localQuadValue");
  if (k > kSearchCap)
    throw std::invalid_argument("localQuadValue: k exceeds the float search cap");
  if (static_cast<std::int64_t>(p.size()) != pow3(k))
    throw std::invalid_argument("localQuadValue: vector size does not match level");
  const std::vector<double> bp = BlockMatvec<double>(0.0, false, false).apply(k, p);
  const std::vector<double> btp = BlockMatvec<double>(0.0, false, true).apply(k, p);
  QuadEval ev;
  ev.gradient.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    ev.value += p[i] * bp[i];
    ev.gradient[i] = bp[i] + btp[i];
  }
  return ev;
}

std::vector<double> projectToSimplex(std::vector<double> v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0, theta = 0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cum += u[j];
    const double t = (cum - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0) theta = t;
  }
  for (auto& e : v) e = std::max(e - theta, 0.0);
  return v;
}

Rational bestRationalApprox(double v, long maxDen) {
  if (maxDen < 1) throw std::invalid_argument("bestRationalApprox: denominator bound must be >= 1");
  if (!std::isfinite(v)) throw std::invalid_argument("bestRationalApprox: value is not finite");
  const bool neg = v < 0;
  const double x = std::abs(v);

  long h = 0, k = 1;        // h_{-2}/k_{-2}
  long hPrev = 1, kPrev = 0;  // h_{-1}/k_{-1}
  double frac = x;
  bool truncated = false;
  long tSemi = 0;
  for (int it = 0; it < 64; ++it) {
    const double fa = std::floor(frac);
    if (fa > 4e18 / std::max(kPrev, 1L)) break;
    const long a = static_cast<long>(fa);
    const long hNext = a * hPrev + h;
    const long kNext = a * kPrev + k;
    if (kNext > maxDen) {
      truncated = kPrev > 0;
      if (truncated) tSemi = (maxDen - k) / kPrev;
      break;
    }
    h = hPrev;
    k = kPrev;
    hPrev = hNext;
    kPrev = kNext;
    const double rem = frac - fa;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  // hPrev/kPrev is the last convergent within the bound; a semiconvergent
  // may sit closer.
  double bestErr = std::abs(x - static_cast<double>(hPrev) / static_cast<double>(kPrev));
  long bestH = hPrev, bestK = kPrev;
  if (truncated && tSemi >= 1) {
    const long hs = tSemi * hPrev + h;
    const long ks = tSemi * kPrev + k;
    const double err = std::abs(x - static_cast<double>(hs) / static_cast<double>(ks));
    if (err < bestErr) {
      bestErr = err;
      bestH = hs;
      bestK = ks;
    }
  }
  return {neg ? -bestH : bestH, bestK};
}

SearchResult searchTail(const SearchConfig& config) {
  requireLevel(config.k, "searchTail");
  if (config.k > kSearchCap)
    throw std::invalid_argument("searchTail: k exceeds the float search cap");
  if (config.restarts < 1) throw std::invalid_argument("searchTail: restarts must be >= 1");
  if (config.maxIters < 1) throw std::invalid_argument("searchTail: maxIters must be >= 1");
  if (config.snapDenominatorBound < 1)
    throw std::invalid_argument("searchTail: snap denominator bound must be >= 1");

  const int k = config.k;
  const std::size_t n = static_cast<std::size_t>(pow3(k));

  struct Candidate {
    double value;
    int restart;
    std::vector<double> p;
  };
  std::vector<Candidate> pool;
  pool.reserve(static_cast<std::size_t>(config.restarts));

  for (int r = 0; r < config.restarts; ++r) {
    std::vector<double> start;
    if (r == 0) {
      start = toDoubles(awDistribution(k).dist);
    } else if (r == 1) {
      start = std::vector<double>(n, 1.0 / static_cast<double>(n));
    } else {
      auto rng = restartRng(config.seed, r);
      start = randomStart(n, rng);
    }
    auto [value, p] = descend(k, std::move(start), config.maxIters);
    pool.push_back({value, r, std::move(p)});
  }
  std::sort(pool.begin(), pool.end(), [](const Candidate& a, const Candidate& b) {
    return a.value != b.value ? a.value < b.value : a.restart < b.restart;
  });

  // Exact incumbent: the block strategy itself, so the result is always a
  // verified strategy even if every snap is discarded.
  SimplexStrategy best = awDistribution(k);
  Rational bestExact = tailProb(best);

  const std::size_t snapCount = std::min<std::size_t>(pool.size(), 16);
  for (std::size_t ci = 0; ci < snapCount; ++ci) {
    const Candidate& cand = pool[ci];
    for (const long den : kSnapLadder) {
      if (den > config.snapDenominatorBound) break;
      std::vector<Rational> q(n);
      Rational sum;
      for (std::size_t i = 0; i < n; ++i) {
        if (cand.p[i] < 1e-12) continue;
        Rational e = bestRationalApprox(cand.p[i], den);
        if (e.sign() < 0) continue;
        sum += e;
        q[i] = std::move(e);
      }
      if (sum.isZero()) continue;
      for (auto& e : q) e /= sum;
      SimplexStrategy snapped{PathVector(k, std::move(q))};
      const Rational exact = tailProb(snapped);
      // Discard snaps that round away from the float candidate.
      if (exact.toDouble() > cand.value + 1e-9) continue;
      if (exact < bestExact) {
        bestExact = exact;
        best = std::move(snapped);
      }
    }
  }

  SearchResult result{std::move(best), 0.0, std::move(bestExact), config.restarts};
  result.floatValue = localQuadValue(k, toDoubles(result.bestStrategy.dist)).value;
  return result;
}

}  // namespace rendezvous
