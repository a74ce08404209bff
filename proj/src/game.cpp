#include "rendezvous/game.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rendezvous/block_matvec.hpp"
#include "rendezvous/errors.hpp"

namespace rendezvous {

namespace {

void requireDense(int k, const char* what) {
  requireLevel(k, what);
  if (k > kDenseMatvecCap)
    throw ResourceLimitError(std::string(what) + ": k=" + std::to_string(k) +
                             " exceeds the dense cap " + std::to_string(kDenseMatvecCap));
}

// Truncated meeting time at a difference path, eps = 0. Walks digits least
// significant first, unrolling m_j = 1 + [top digit != 2] * m_(j-1).
int mDiffInt(int k, std::int64_t x, std::int64_t y) {
  int v = 1;
  for (int j = 0; j < k; ++j) {
    const int dd = static_cast<int>(((y % 3) - (x % 3) + 3) % 3);
    v = 1 + (dd == 2 ? 0 : v);
    x /= 3;
    y /= 3;
  }
  return v;
}

// Digits of every support index, least significant first, for the sparse
// quadratic-form paths (so the hot pair loop touches bytes, not bignums).
std::vector<std::uint8_t> decodeDigits(const std::vector<std::int64_t>& idx, int k) {
  std::vector<std::uint8_t> d(idx.size() * static_cast<std::size_t>(k));
  for (std::size_t s = 0; s < idx.size(); ++s) {
    std::int64_t v = idx[s];
    for (int j = 0; j < k; ++j) {
      d[s * static_cast<std::size_t>(k) + static_cast<std::size_t>(j)] =
          static_cast<std::uint8_t>(v % 3);
      v /= 3;
    }
  }
  return d;
}

struct SparseSupport {
  std::vector<std::int64_t> idx;
  Rational mass;  // common probability of every support path
};

// Extracts the support of p, requiring every nonzero entry to be equal;
// this is what makes the k > kDenseMatvecCap quadratic forms tractable.
SparseSupport equalWeightSupport(const SimplexStrategy& p, const char* what) {
  SparseSupport s;
  for (std::int64_t i = 0; i < p.dist.size(); ++i) {
    const Rational& e = p.dist[i];
    if (e.isZero()) continue;
    if (s.idx.empty())
      s.mass = e;
    else if (!(e == s.mass))
      throw ResourceLimitError(std::string(what) +
                               ": k above the dense cap needs an equal-weight support");
    s.idx.push_back(i);
  }
  return s;
}

}  // namespace

SimplexStrategy::SimplexStrategy(PathVector p) : dist(std::move(p)) {
  Rational sum = 0;
  for (std::int64_t i = 0; i < dist.size(); ++i) {
    if (dist[i].sign() < 0)
      throw std::invalid_argument("SimplexStrategy: negative probability at index " +
                                  std::to_string(i));
    sum += dist[i];
  }
  if (sum.cmp(1) != 0) throw std::invalid_argument("SimplexStrategy: probabilities must sum to 1");
}

PathVector bVector(int k, const MeetingModel& model) {
  requireDense(k, "bVector");
  std::vector<Rational> g{1};
  for (int j = 0; j < k; ++j) {
    std::vector<Rational> next;
    next.reserve(g.size() * 3);
    for (const auto& e : g) next.push_back(e);
    for (const auto& e : g) next.push_back(e);
    for (const auto& e : g) next.push_back(model.overlook * e);
    g = std::move(next);
  }
  return PathVector(k, std::move(g));
}

PathVector mVector(int k, const MeetingModel& model) {
  requireDense(k, "mVector");
  std::vector<Rational> g{1};
  for (int j = 0; j < k; ++j) {
    std::vector<Rational> next;
    next.reserve(g.size() * 3);
    for (const auto& e : g) next.push_back(e + 1);
    for (const auto& e : g) next.push_back(e + 1);
    for (const auto& e : g) next.push_back(model.overlook * e + 1);
    g = std::move(next);
  }
  return PathVector(k, std::move(g));
}

Rational bEntry(int k, std::int64_t diff, const MeetingModel& model) {
  requireLevel(k, "bEntry");
  Rational v = 1;
  for (int j = 0; j < k; ++j) {
    if (diff % 3 == 2) {
      if (model.overlook.isZero()) return 0;
      v *= model.overlook;
    }
    diff /= 3;
  }
  return v;
}

Rational mEntry(int k, std::int64_t diff, const MeetingModel& model) {
  requireLevel(k, "mEntry");
  if (model.overlook.isZero()) return mDiffInt(k, 0, diff);
  Rational v = 1;
  std::int64_t d = diff;
  for (int j = 0; j < k; ++j) {
    v = (d % 3 == 2) ? model.overlook * v + 1 : v + 1;
    d /= 3;
  }
  return v;
}

PathVector matvecB(const PathVector& v, const MeetingModel& model, bool transpose) {
  requireDense(v.level, "matvecB");
  BlockMatvec<Rational> mv(model.overlook, /*withJ=*/false, transpose);
  return PathVector(v.level, mv.apply(v.level, v.v));
}

PathVector matvecM(const PathVector& v, const MeetingModel& model, bool transpose) {
  requireDense(v.level, "matvecM");
  BlockMatvec<Rational> mv(model.overlook, /*withJ=*/true, transpose);
  return PathVector(v.level, mv.apply(v.level, v.v));
}

Rational quadFormM(const SimplexStrategy& p, const MeetingModel& model) {
  const int k = p.level();
  requireLevel(k, "quadFormM");
  if (k <= kDenseMatvecCap) return dot(p.dist, matvecM(p.dist, model));
  if (!model.overlook.isZero())
    throw ResourceLimitError("quadFormM: overlook variant is dense-only (k <= 13)");
  const SparseSupport s = equalWeightSupport(p, "quadFormM");
  const auto digits = decodeDigits(s.idx, k);
  const std::size_t n = s.idx.size(), kk = static_cast<std::size_t>(k);
  std::int64_t total = 0;
  for (std::size_t a = 0; a < n; ++a) {
    const std::uint8_t* da = digits.data() + a * kk;
    for (std::size_t b = 0; b < n; ++b) {
      const std::uint8_t* db = digits.data() + b * kk;
      int v = 1;
      for (std::size_t j = 0; j < kk; ++j) v = (db[j] - da[j] + 3) % 3 == 2 ? 1 : v + 1;
      total += v;
    }
  }
  return s.mass * s.mass * Rational(total);
}

Rational tailProb(const SimplexStrategy& p, const MeetingModel& model) {
  const int k = p.level();
  requireLevel(k, "tailProb");
  if (k <= kDenseMatvecCap) return dot(p.dist, matvecB(p.dist, model));
  if (!model.overlook.isZero())
    throw ResourceLimitError("tailProb: overlook variant is dense-only (k <= 13)");
  const SparseSupport s = equalWeightSupport(p, "tailProb");
  const auto digits = decodeDigits(s.idx, k);
  const std::size_t n = s.idx.size(), kk = static_cast<std::size_t>(k);
  std::int64_t survivors = 0;
  for (std::size_t a = 0; a < n; ++a) {
    const std::uint8_t* da = digits.data() + a * kk;
    for (std::size_t b = 0; b < n; ++b) {
      const std::uint8_t* db = digits.data() + b * kk;
      bool met = false;
      for (std::size_t j = 0; j < kk && !met; ++j) met = (db[j] - da[j] + 3) % 3 == 2;
      if (!met) ++survivors;
    }
  }
  return s.mass * s.mass * Rational(survivors);
}

SimplexStrategy marginalStrategy(const SimplexStrategy& p, int j) {
  const int k = p.level();
  if (j < 0 || j > k) throw std::invalid_argument("marginalStrategy: need 0 <= j <= k");
  const std::int64_t block = pow3(k - j);
  PathVector out(j);
  for (std::int64_t i = 0; i < out.size(); ++i) {
    Rational s = 0;
    for (std::int64_t t = 0; t < block; ++t) s += p.dist[i * block + t];
    out[i] = std::move(s);
  }
  return SimplexStrategy(std::move(out));
}

SimplexStrategy uniformStrategy(int k) {
  requireDense(k, "uniformStrategy");
  PathVector p(k);
  const Rational mass(1, pow3(k));
  for (auto& e : p.v) e = mass;
  return SimplexStrategy(std::move(p));
}

namespace {

// Support paths of the block family: one base-9 value per 2-step block
// drawn from {00, 12, 21}, plus a free final digit when k is odd.
constexpr int kBlockPair[3] = {0, 5, 7};  // 0*3+0, 1*3+2, 2*3+1

template <class Emit>
void forEachBlockPath(int k, Emit&& emit) {
  const int blocks = k / 2;
  const bool odd = (k % 2) != 0;
  const std::int64_t combos = pow3(blocks);
  for (std::int64_t c = 0; c < combos; ++c) {
    std::int64_t idx = 0;
    std::int64_t rest = c;
    int tours = 0;
    for (int b = 0; b < blocks; ++b) {
      const int choice = static_cast<int>(rest % 3);
      rest /= 3;
      if (choice != 0) ++tours;
      idx = idx * 9 + kBlockPair[choice];
    }
    if (odd)
      for (int d = 0; d < 3; ++d) emit(idx * 3 + d, tours);
    else
      emit(idx, tours);
  }
}

}  // namespace

SimplexStrategy awDistribution(int k) {
  requireLevel(k, "awDistribution");
  PathVector p(k);
  const Rational mass(1, pow3(k / 2 + k % 2));
  forEachBlockPath(k, [&](std::int64_t idx, int) { p[idx] = mass; });
  return SimplexStrategy(std::move(p));
}

SimplexStrategy parametricAwDistribution(int k, const Rational& q) {
  requireDense(k, "parametricAwDistribution");
  if (q.sign() < 0 || q.cmp(1) > 0)
    throw std::invalid_argument("parametricAwDistribution: need 0 <= q <= 1");
  const int blocks = k / 2;
  const Rational half = Rational(1, 2) * (Rational(1) - q);
  // Per-combo mass q^stays * ((1-q)/2)^tours (* 1/3 for an odd last digit).
  std::vector<Rational> tourPow(static_cast<std::size_t>(blocks) + 1);
  tourPow[0] = 1;
  for (int t = 1; t <= blocks; ++t) tourPow[static_cast<std::size_t>(t)] = tourPow[t - 1] * half;
  std::vector<Rational> stayPow(static_cast<std::size_t>(blocks) + 1);
  stayPow[0] = 1;
  for (int t = 1; t <= blocks; ++t) stayPow[static_cast<std::size_t>(t)] = stayPow[t - 1] * q;
  const Rational oddMass = (k % 2) ? Rational(1, 3) : Rational(1);
  PathVector p(k);
  forEachBlockPath(k, [&](std::int64_t idx, int tours) {
    p[idx] = stayPow[static_cast<std::size_t>(blocks - tours)] *
             tourPow[static_cast<std::size_t>(tours)] * oddMass;
  });
  return SimplexStrategy(std::move(p));
}

Rational parametricAwValue(int k, const Rational& q, const MeetingModel& model) {
  return quadFormM(parametricAwDistribution(k, q), model);
}

}  // namespace rendezvous
