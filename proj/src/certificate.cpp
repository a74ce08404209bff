#include "rendezvous/certificate.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

#include "rendezvous/errors.hpp"
#include "rendezvous/game.hpp"
#include "rendezvous/transform.hpp"

namespace rendezvous {

namespace {

void requireDenseLevel(int k, const char* what) {
  requireLevel(k, what);
  if (k > kDenseMatvecCap)
    throw ResourceLimitError(std::string(what) + ": k=" + std::to_string(k) +
                             " exceeds the dense cap " + std::to_string(kDenseMatvecCap));
}

constexpr int kX1Base[3] = {2, 2, 1};
constexpr int kX2Base[9] = {3, 3, 2, 3, 3, 2, 1, 1, 0};

// g(a) = (a, a, 2, 2, a, 2, 1, 1, 1): which of {a, 2, 1} sits at offset q.
enum class GKind { A, Two, One };
constexpr GKind kGKind[9] = {GKind::A,   GKind::A,   GKind::Two, GKind::Two, GKind::A,
                             GKind::Two, GKind::One, GKind::One, GKind::One};

Rational gValue(const Rational& a, int q) {
  switch (kGKind[q]) {
    case GKind::A:
      return a;
    case GKind::Two:
      return 2;
    default:
      return 1;
  }
}

}  // namespace

Rational aValue(int j) {
  if (j < 3) throw std::invalid_argument("aValue: defined for j >= 3 only");
  if (j % 2 == 1) return Rational(3) - Rational(1, pow3((j - 3) / 2));
  return Rational(3) - Rational(2, pow3((j - 2) / 2));
}

std::vector<Rational> scheduleValues(int k) {
  std::vector<Rational> a;
  for (int j = 3; j <= k; ++j) a.push_back(aValue(j));
  return a;
}

Rational wValue(int k) {
  if (k < 0) throw std::invalid_argument("wValue: k must be >= 0");
  if (k == 0) return 1;
  const Rational fiveHalves(5, 2);
  if (k % 2 == 1) return fiveHalves - Rational(5, 2 * pow3((k + 1) / 2));
  return fiveHalves - Rational(3, 2 * pow3(k / 2));
}

PathVector xVector(int k) {
  requireDenseLevel(k, "xVector");
  if (k == 1) return PathVector(1, {2, 2, 1});
  std::vector<Rational> x(kX2Base, kX2Base + 9);
  for (int j = 3; j <= k; ++j) {
    const Rational a = aValue(j);
    const std::int64_t third = pow3(j - 1), ninth = pow3(j - 3);
    std::vector<Rational> next(static_cast<std::size_t>(3 * third));
    for (std::int64_t i = 0; i < third; ++i) next[i] = x[static_cast<std::size_t>(i)] + 1;
    for (int q = 0; q < 9; ++q) {
      const Rational v = gValue(a, q) + 1;
      for (std::int64_t t = 0; t < ninth; ++t) next[static_cast<std::size_t>(third + q * ninth + t)] = v;
    }
    for (std::int64_t i = 2 * third; i < 3 * third; ++i) next[static_cast<std::size_t>(i)] = 1;
    x = std::move(next);
  }
  return PathVector(k, std::move(x));
}

Rational xEntry(int k, std::int64_t i) {
  requireLevel(k, "xEntry");
  if (i < 0 || i >= pow3(k)) throw std::out_of_range("xEntry: index out of range");
  long acc = 0;
  int j = k;
  while (j >= 3) {
    const std::int64_t third = pow3(j - 1);
    const int d = static_cast<int>(i / third);
    i %= third;
    ++acc;
    if (d == 2) return acc;
    if (d == 1) {
      const int q = static_cast<int>(i / pow3(j - 3));
      return gValue(aValue(j), q) + acc;
    }
    --j;
  }
  if (j == 2) return acc + kX2Base[i];
  return acc + kX1Base[i];
}

Rational xSum(int k) {
  requireLevel(k, "xSum");
  if (k == 1) return 5;
  Rational s = 18;
  for (int j = 3; j <= k; ++j)
    s += pow3Rational(j) + pow3Rational(j - 2) * (Rational(3) + aValue(j));
  return s;
}

std::vector<std::pair<Rational, std::int64_t>> xRuns(int k) {
  requireLevel(k, "xRuns");
  std::vector<std::pair<Rational, std::int64_t>> runs;
  const auto emit = [&runs](const Rational& v, std::int64_t n) {
    if (!runs.empty() && runs.back().first == v)
      runs.back().second += n;
    else
      runs.emplace_back(v, n);
  };
  // Descends the leading-zeros spine; everything off the spine is constant
  // over whole subtrees, so the run list stays O(k) long.
  const std::function<void(int, long)> walk = [&](int j, long acc) {
    if (j == 1) {
      for (int e = 0; e < 3; ++e) emit(acc + kX1Base[e], 1);
      return;
    }
    if (j == 2) {
      for (int e = 0; e < 9; ++e) emit(acc + kX2Base[e], 1);
      return;
    }
    const Rational a = aValue(j);
    walk(j - 1, acc + 1);
    for (int q = 0; q < 9; ++q) emit(gValue(a, q) + (acc + 1), pow3(j - 3));
    emit(acc + 1, pow3(j - 1));
  };
  walk(k, 0);
  return runs;
}

std::array<Rational, 27> rVector(const Rational& a) {
  const Rational th(3, 2);
  const Rational z = 0;
  std::array<Rational, 27> r = {
      // first block: indices (0, e1, e2)
      th * (6 + 2 * a), z, z, th * (a - 1), z, th * (a - 2), th * (a - 1), th * (a - 2), z,
      // middle block: indices (1, e1, e2)
      th * (-3 - a), th * (2 - a), th * (a - 2), th * (-a), z, z, th, th * (2 - a), z,
      // last block: indices (2, e1, e2), the 1<->2 swap image of the middle
      th * (-3 - a), th * (a - 2), th * (2 - a), th, z, th * (2 - a), th * (-a), z, z};
  return r;
}

namespace {

// U_2 x_2 computed by a literal dense multiply (independent of the fast
// butterfly passes, so the streaming recursion never leans on them).
const std::array<Rational, 9>& spectrumBase2() {
  static const std::array<Rational, 9> base = [] {
    const auto v2 = denseCharacterMatrix(2);
    std::array<Rational, 9> out;
    for (int r = 0; r < 9; ++r) {
      Eisenstein acc;
      for (int c = 0; c < 9; ++c) acc += scale(Rational(kX2Base[c]), v2[r][c]);
      out[static_cast<std::size_t>(r)] = acc.realPart();
    }
    return out;
  }();
  return base;
}

const std::array<Rational, 3>& spectrumBase1() {
  static const std::array<Rational, 3> base = [] {
    const auto v1 = denseCharacterMatrix(1);
    std::array<Rational, 3> out;
    for (int r = 0; r < 3; ++r) {
      Eisenstein acc;
      for (int c = 0; c < 3; ++c) acc += scale(Rational(kX1Base[c]), v1[r][c]);
      out[static_cast<std::size_t>(r)] = acc.realPart();
    }
    return out;
  }();
  return base;
}

int trailingZeroDigits(std::int64_t i, int k) {
  if (i == 0) return k;
  int tz = 0;
  while (i % 3 == 0) {
    ++tz;
    i /= 3;
  }
  return tz;
}

}  // namespace

void scanSpectrumRange(int k, std::int64_t lo, std::int64_t hi,
                       const std::function<void(std::int64_t, const Rational&)>& visit) {
  requireLevel(k, "scanSpectrum");
  const std::int64_t n = pow3(k);
  if (lo < 0 || hi > n || lo > hi) throw std::out_of_range("scanSpectrum: bad range");
  if (k == 1) {
    const auto& b = spectrumBase1();
    for (std::int64_t i = lo; i < hi; ++i) visit(i, b[static_cast<std::size_t>(i)]);
    return;
  }
  if (k == 2) {
    const auto& b = spectrumBase2();
    for (std::int64_t i = lo; i < hi; ++i) visit(i, b[static_cast<std::size_t>(i)]);
    return;
  }
  // Unrolling the level recursion down to level 2 gives, for each index i:
  //   value(i) = (U_2 x_2)(i mod 9)
  //            + sum over levels j = 3..min(tz(i)+3, k) of 3^(j-3) r_j(q_j)
  //            + sum over levels j = 3..tz(i) of 3^j           [f_j hits]
  // where tz(i) counts trailing zero digits and q_j = (i / 3^(j-3)) mod 27.
  // The r_j term at level j requires the trailing j-3 digits to vanish, the
  // f_j term requires all trailing j digits to vanish.
  const auto& base2 = spectrumBase2();
  std::vector<std::array<Rational, 27>> rScaled(static_cast<std::size_t>(k - 2));
  std::vector<Rational> f3(static_cast<std::size_t>(k - 2));
  for (int j = 3; j <= k; ++j) {
    const auto r = rVector(aValue(j));
    auto& row = rScaled[static_cast<std::size_t>(j - 3)];
    const Rational scale3 = pow3Rational(j - 3);
    for (int q = 0; q < 27; ++q) row[static_cast<std::size_t>(q)] = r[static_cast<std::size_t>(q)] * scale3;
    f3[static_cast<std::size_t>(j - 3)] = pow3Rational(j);
  }
  std::vector<std::int64_t> p3(static_cast<std::size_t>(k + 1));
  for (int j = 0; j <= k; ++j) p3[static_cast<std::size_t>(j)] = pow3(j);
  Rational v;
  for (std::int64_t i = lo; i < hi; ++i) {
    v = base2[static_cast<std::size_t>(i % 9)];
    const int tz = trailingZeroDigits(i, k);
    const int jmax = std::min(tz + 3, k);
    for (int j = 3; j <= jmax; ++j) {
      const auto& e = rScaled[static_cast<std::size_t>(j - 3)][static_cast<std::size_t>(
          (i / p3[static_cast<std::size_t>(j - 3)]) % 27)];
      if (!e.isZero()) v += e;
    }
    for (int j = 3; j <= std::min(tz, k); ++j) v += f3[static_cast<std::size_t>(j - 3)];
    visit(i, v);
  }
}

void scanSpectrum(int k, const std::function<void(std::int64_t, const Rational&)>& visit) {
  scanSpectrumRange(k, 0, pow3(k), visit);
}

Rational spectrumEntry(int k, std::int64_t i) {
  requireLevel(k, "spectrumEntry");
  if (i < 0 || i >= pow3(k)) throw std::out_of_range("spectrumEntry: index out of range");
  if (k == 1) return spectrumBase1()[static_cast<std::size_t>(i)];
  if (k == 2) return spectrumBase2()[static_cast<std::size_t>(i)];
  Rational v = spectrumBase2()[static_cast<std::size_t>(i % 9)];
  const int tz = trailingZeroDigits(i, k);
  const int jmax = std::min(tz + 3, k);
  for (int j = 3; j <= jmax; ++j) {
    const int q = static_cast<int>((i / pow3(j - 3)) % 27);
    const auto r = rVector(aValue(j));
    v += r[static_cast<std::size_t>(q)] * pow3Rational(j - 3);
  }
  for (int j = 3; j <= std::min(tz, k); ++j) v += pow3Rational(j);
  return v;
}

PathVector spectrumRecursive(int k) {
  requireDenseLevel(k, "spectrumRecursive");
  if (k < 3) throw std::invalid_argument("spectrumRecursive: k must be >= 3");
  const auto& base = spectrumBase2();
  std::vector<Rational> cur(base.begin(), base.end());
  for (int j = 3; j <= k; ++j) {
    const std::int64_t third = pow3(j - 1), ninth = pow3(j - 3);
    std::vector<Rational> next(static_cast<std::size_t>(3 * third));
    for (int b = 0; b < 3; ++b)
      for (std::int64_t t = 0; t < third; ++t)
        next[static_cast<std::size_t>(b * third + t)] = cur[static_cast<std::size_t>(t)];
    next[0] += pow3Rational(j);
    const auto r = rVector(aValue(j));
    const Rational scale3 = pow3Rational(j - 3);
    for (int q = 0; q < 27; ++q) {
      const auto& e = r[static_cast<std::size_t>(q)];
      if (!e.isZero()) next[static_cast<std::size_t>(q * ninth)] += e * scale3;
    }
    cur = std::move(next);
  }
  return PathVector(k, std::move(cur));
}

namespace {

// Streaming walk comparing m_k against x_k leaf by leaf. The x value is
// constant on every subtree hanging off the leading-zeros spine, while the
// truncated meeting time at a leaf is determined by the position of the
// first digit 2 (m = that position, or k+1 if none). All comparisons are
// machine integers except where x involves a_j.
class DominationWalker {
 public:
  explicit DominationWalker(int k) : k_(k), p3_(static_cast<std::size_t>(k + 1)) {
    for (int j = 0; j <= k; ++j) p3_[static_cast<std::size_t>(j)] = pow3(j);
    aByLevel_.resize(static_cast<std::size_t>(k + 1));
    for (int j = 3; j <= k; ++j) aByLevel_[static_cast<std::size_t>(j)] = aValue(j);
  }

  DominationReport run() {
    spine(k_, 0);
    DominationReport rep;
    rep.firstViolation = firstViolation_;
    rep.entries = entries_;
    rep.ok = firstViolation_ < 0 && entries_ == pow3(k_);
    return rep;
  }

 private:
  // Visits every leaf of a subtree whose x value is fixed: x = xInt, or
  // x = xInt + *xa when xa is set. first2 is the 1-based position of the
  // first digit 2 on the path so far (0 = none yet).
  void walkFixed(int j, std::int64_t base, int first2, long xInt, const Rational* xa) {
    if (stop_) return;
    if (j == 0) {
      const long m = first2 ? first2 : k_ + 1;
      ++entries_;
      const bool okLeaf = xa ? mpq_cmp_si(xa->raw().get_mpq_t(), m - xInt, 1) <= 0 : m >= xInt;
      if (!okLeaf) {
        firstViolation_ = base;
        stop_ = true;
      }
      return;
    }
    const std::int64_t h = p3_[static_cast<std::size_t>(j - 1)];
    const int pos = k_ - j + 1;
    walkFixed(j - 1, base, first2, xInt, xa);
    walkFixed(j - 1, base + h, first2, xInt, xa);
    walkFixed(j - 1, base + 2 * h, first2 ? first2 : pos, xInt, xa);
  }

  // Descends the all-zeros prefix, where x is still accumulating; j >= 3.
  void spine(int j, std::int64_t base) {
    if (stop_) return;
    const long acc = k_ - j;  // +1 contributions collected so far
    const std::int64_t h1 = p3_[static_cast<std::size_t>(j - 1)];
    const std::int64_t h2 = p3_[static_cast<std::size_t>(j - 2)];
    const std::int64_t h3 = p3_[static_cast<std::size_t>(j - 3)];

    if (j - 1 >= 3) {
      spine(j - 1, base);
    } else {
      // Level-2 base under one more zero digit: nine explicit leaves.
      for (int e = 0; e < 9 && !stop_; ++e) {
        const int e1 = e / 3, e2 = e % 3;
        const int first2 = e1 == 2 ? k_ - 1 : (e2 == 2 ? k_ : 0);
        const long m = first2 ? first2 : k_ + 1;
        const long x = acc + 1 + kX2Base[e];
        ++entries_;
        if (m < x) {
          firstViolation_ = base + e;
          stop_ = true;
        }
      }
    }
    for (int q = 0; q < 9 && !stop_; ++q) {
      const int e1 = q / 3, e2 = q % 3;
      const int first2 = e1 == 2 ? k_ - j + 2 : (e2 == 2 ? k_ - j + 3 : 0);
      const std::int64_t sub = base + h1 + e1 * h2 + e2 * h3;
      if (kGKind[q] == GKind::A)
        walkFixed(j - 3, sub, first2, acc + 1, &aByLevel_[static_cast<std::size_t>(j)]);
      else
        walkFixed(j - 3, sub, first2, acc + 1 + (kGKind[q] == GKind::Two ? 2 : 1), nullptr);
    }
    walkFixed(j - 1, base + 2 * h1, k_ - j + 1, acc + 1, nullptr);
  }

  int k_;
  std::vector<std::int64_t> p3_;
  std::vector<Rational> aByLevel_;
  std::int64_t entries_ = 0;
  std::int64_t firstViolation_ = -1;
  bool stop_ = false;
};

}  // namespace

DominationReport verifyDomination(int k) {
  requireLevel(k, "verifyDomination");
  if (k <= 2) {
    const PathVector m = mVector(k), x = xVector(k);
    DominationReport rep;
    rep.entries = m.size();
    rep.ok = true;
    for (std::int64_t i = 0; i < m.size(); ++i)
      if (m[i] < x[i]) {
        rep.ok = false;
        rep.firstViolation = i;
        break;
      }
    return rep;
  }
  return DominationWalker(k).run();
}

namespace {

struct SpectrumStats {
  Rational minValue;
  std::int64_t minIndex = -1;
  std::int64_t firstNegative = -1;
  std::int64_t zeros = 0;
  std::int64_t halves = 0;
  bool doubledIntegral = true;
  std::int64_t count = 0;

  void absorb(std::int64_t i, const Rational& v) {
    ++count;
    if (minIndex < 0 || v < minValue) {
      minValue = v;
      minIndex = i;
    }
    if (firstNegative < 0 && v.sign() < 0) firstNegative = i;
    if (v.isZero())
      ++zeros;
    else if (mpq_cmp_si(v.raw().get_mpq_t(), 3, 2) == 0)
      ++halves;
    const auto den = v.denominator();
    if (den != 1 && den != 2) doubledIntegral = false;
  }

  // Merge a stats block covering the index range to the right of this one.
  void append(const SpectrumStats& rhs) {
    if (rhs.minIndex >= 0 && (minIndex < 0 || rhs.minValue < minValue)) {
      minValue = rhs.minValue;
      minIndex = rhs.minIndex;
    }
    if (firstNegative < 0) firstNegative = rhs.firstNegative;
    zeros += rhs.zeros;
    halves += rhs.halves;
    doubledIntegral = doubledIntegral && rhs.doubledIntegral;
    count += rhs.count;
  }
};

}  // namespace

SpectrumReport verifySpectrum(int k, int threads, int crossCheckCap) {
  requireLevel(k, "verifySpectrum");
  const std::int64_t n = pow3(k);
  threads = std::clamp(threads, 1, 16);
  if (n < 100000) threads = 1;

  SpectrumStats total;
  if (threads == 1) {
    scanSpectrum(k, [&](std::int64_t i, const Rational& v) { total.absorb(i, v); });
  } else {
    std::vector<SpectrumStats> parts(static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    const std::int64_t chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const std::int64_t lo = t * chunk, hi = std::min(n, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back([k, lo, hi, &part = parts[static_cast<std::size_t>(t)]] {
        scanSpectrumRange(k, lo, hi,
                          [&part](std::int64_t i, const Rational& v) { part.absorb(i, v); });
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& p : parts) total.append(p);
  }

  SpectrumReport rep;
  rep.minValue = total.minValue;
  rep.minIndex = total.minIndex;
  rep.firstNegative = total.firstNegative;
  rep.zeroCount = total.zeros;
  rep.threeHalvesCount = total.halves;
  rep.doubledIntegral = total.doubledIntegral;
  rep.entries = total.count;
  rep.ok = total.firstNegative < 0 && total.count == n;

  if (k <= crossCheckCap && k <= kDenseMatvecCap) {
    const PathVector dense = realSpectrum(xVector(k));
    scanSpectrum(k, [&](std::int64_t i, const Rational& v) {
      if (!(v == dense[i]))
        throw std::logic_error("verifySpectrum: streaming scan disagrees with transform at index " +
                               std::to_string(i));
    });
    rep.crossChecked = true;
  }
  return rep;
}

TValues tValues(int k) {
  requireLevel(k, "tValues", 3);
  const std::int64_t big = pow3(k - 1), small = pow3(k - 3);
  TValues t;
  t.direct[0] = spectrumEntry(k, big);
  t.direct[1] = spectrumEntry(k, big + small);
  t.direct[2] = spectrumEntry(k, big + 3 * small);
  t.direct[3] = spectrumEntry(k, big + 7 * small);

  const Rational half(1, 2);
  const auto tailSum = [](int from, int to) {  // sum of 3^(i-2) a_i
    Rational s = 0;
    for (int i = from; i <= to; ++i) s += pow3Rational(i - 2) * aValue(i);
    return s;
  };
  t.closed[0] = half * pow3Rational(k) + tailSum(3, k - 1) - half * pow3Rational(k - 2) * aValue(k);
  if (k >= 4)
    t.closed[2] = half * pow3Rational(k - 1) + tailSum(3, k - 2) -
                  half * pow3Rational(k - 3) * aValue(k - 1) -
                  half * pow3Rational(k - 2) * aValue(k);
  if (k >= 5) {
    const Rational common = tailSum(3, k - 3) - half * pow3Rational(k - 4) * aValue(k - 2) -
                            half * pow3Rational(k - 2) * aValue(k);
    t.closed[1] = Rational(4) * pow3Rational(k - 3) + common + half * pow3Rational(k - 3) * aValue(k - 1);
    t.closed[3] = Rational(5) * pow3Rational(k - 3) + common;
  }
  t.consistent = true;
  for (int i = 0; i < 4; ++i)
    if (t.closed[static_cast<std::size_t>(i)] &&
        !(*t.closed[static_cast<std::size_t>(i)] == t.direct[static_cast<std::size_t>(i)]))
      t.consistent = false;
  return t;
}

Certificate certify(int k, int threads) {
  requireLevel(k, "certify");
  Certificate c;
  c.k = k;
  c.schedule = scheduleValues(k);
  c.domination = verifyDomination(k);
  c.spectrum = verifySpectrum(k, threads);
  c.bound = xSum(k) / pow3Rational(k);
  c.w = wValue(k);
  c.boundMatches = c.bound == c.w;
  if (k >= 3) c.t = tValues(k);
  c.pass = c.domination.ok && c.spectrum.ok && c.boundMatches;
  return c;
}

Certificate certifyVector(const PathVector& x) {
  const int k = x.level;
  requireDenseLevel(k, "certifyVector");
  Certificate c;
  c.k = k;

  const PathVector m = mVector(k);
  c.domination.ok = true;
  c.domination.entries = x.size();
  for (std::int64_t i = 0; i < x.size(); ++i)
    if (m[i] < x[i]) {
      c.domination.ok = false;
      c.domination.firstViolation = i;
      break;
    }

  const PathVector spec = realSpectrum(x);
  SpectrumStats stats;
  for (std::int64_t i = 0; i < spec.size(); ++i) stats.absorb(i, spec[i]);
  c.spectrum.minValue = stats.minValue;
  c.spectrum.minIndex = stats.minIndex;
  c.spectrum.firstNegative = stats.firstNegative;
  c.spectrum.zeroCount = stats.zeros;
  c.spectrum.threeHalvesCount = stats.halves;
  c.spectrum.doubledIntegral = stats.doubledIntegral;
  c.spectrum.entries = stats.count;
  c.spectrum.ok = stats.firstNegative < 0;
  c.spectrum.crossChecked = true;

  c.bound = sumEntries(x) / pow3Rational(k);
  c.w = wValue(k);
  c.boundMatches = c.bound == c.w;
  c.pass = c.domination.ok && c.spectrum.ok && c.boundMatches;
  return c;
}

std::vector<std::vector<Rational>> denseCertificateMatrix(int k) {
  requireLevel(k, "denseCertificateMatrix");
  if (k > 4) throw std::invalid_argument("denseCertificateMatrix: only k <= 4 is supported");
  const PathVector x = xVector(k);
  const std::int64_t n = x.size();
  std::vector<std::vector<Rational>> h(static_cast<std::size_t>(n),
                                       std::vector<Rational>(static_cast<std::size_t>(n)));
  for (std::int64_t r = 0; r < n; ++r)
    for (std::int64_t c = 0; c < n; ++c)
      h[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = x[digitSub(c, r, k)];
  return h;
}

}  // namespace rendezvous
