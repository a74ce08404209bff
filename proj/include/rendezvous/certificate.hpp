#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "rendezvous/path_vector.hpp"

namespace rendezvous {

// Schedule driving the certificate construction: for j >= 3,
//   a_j = 3 - 3^(-(j-3)/2)   (j odd),
//   a_j = 3 - 2*3^(-(j-2)/2) (j even).
// Monotone increasing from 2 towards 3. There is no a_2; formulas that
// would consult it are out of their validity range by construction.
Rational aValue(int j);
std::vector<Rational> scheduleValues(int k);  // a_3..a_k, empty when k < 3

// Optimal truncated value at horizon k:
//   w_k = 5/2 - (5/2)*3^(-(k+1)/2) (k odd),  5/2 - (3/2)*3^(-k/2) (k even).
Rational wValue(int k);

// Certificate generator x_k. Bases x_1 = (2,2,1), x_2 = (3,3,2,3,3,2,1,1,0);
// for k >= 3, with g(a) = (a,a,2,2,a,2,1,1,1),
//   x_k = 1_k + (1,0,0) (x) x_(k-1) + (0,1,0) (x) g(a_k) (x) 1_(k-3).
PathVector xVector(int k);                     // dense, k <= kDenseMatvecCap
Rational xEntry(int k, std::int64_t i);        // O(k), any k
Rational xSum(int k);                          // 1^T x_k by level recursion
std::vector<std::pair<Rational, std::int64_t>> xRuns(int k);  // run-length form, index order

// The 27-entry level-3 spectrum contribution as a function of a_k; equals
// the transform of (0,1,0) (x) g(a_k) and is fixed by the 1<->2 digit swap.
std::array<Rational, 27> rVector(const Rational& aK);

// U_k x_k, three ways.
// Streaming scan: visits every entry in index order with O(k) memory,
// using the level recursion
//   U_k x_k = 3^k f_k + (1,1,1) (x) U_(k-1) x_(k-1) + 3^(k-3) r_k (x) f_(k-3)
// unrolled down to the level-2 base. visit(i, value).
void scanSpectrum(int k, const std::function<void(std::int64_t, const Rational&)>& visit);
void scanSpectrumRange(int k, std::int64_t lo, std::int64_t hi,
                       const std::function<void(std::int64_t, const Rational&)>& visit);
Rational spectrumEntry(int k, std::int64_t i);  // single entry, O(k)

// Literal dense build of the same recursion (no transform, no streaming);
// k <= kDenseMatvecCap.
PathVector spectrumRecursive(int k);

struct DominationReport {
  bool ok = false;
  std::int64_t firstViolation = -1;  // smallest index with m_k(i) < x_k(i)
  std::int64_t entries = 0;          // leaves compared
};

// Entrywise m_k >= x_k over all 3^k paths, streamed with O(k) memory.
DominationReport verifyDomination(int k);

struct SpectrumReport {
  bool ok = false;
  std::int64_t firstNegative = -1;
  Rational minValue;
  std::int64_t minIndex = -1;
  std::int64_t zeroCount = 0;
  std::int64_t threeHalvesCount = 0;
  bool doubledIntegral = false;  // 2*U_k x_k integral everywhere
  bool crossChecked = false;     // scan compared against the fast transform
  std::int64_t entries = 0;
};

// Entrywise U_k x_k >= 0 with census (zeros, 3/2 entries, integrality of the
// doubled vector). Streams the recursion; for k <= crossCheckCap also runs
// the character transform on the dense x_k and requires bit-exact agreement.
// threads > 1 splits the scan into deterministic index ranges.
SpectrumReport verifySpectrum(int k, int threads = 1, int crossCheckCap = 12);

// The four potentially negative middle-third components, at digit indices
// (1,0,0,...), (1,0,1,0,...), (1,1,0,...), (1,2,1,0,...).
struct TValues {
  std::array<Rational, 4> direct;                 // extracted from U_k x_k
  std::array<std::optional<Rational>, 4> closed;  // closed forms where valid
  bool consistent = false;                        // every valid closed form matches
};
TValues tValues(int k);  // k >= 3

struct Certificate {
  int k = 0;
  std::vector<Rational> schedule;  // a_3..a_k
  DominationReport domination;
  SpectrumReport spectrum;
  Rational bound;  // (1^T x_k) / 3^k
  Rational w;      // wValue(k)
  bool boundMatches = false;
  std::optional<TValues> t;  // present for k >= 3
  bool pass = false;         // domination && spectrum && boundMatches
};

Certificate certify(int k, int threads = 1);

// Runs the same checks against a caller-supplied vector (e.g. an alternative
// level-2 base): domination against m_k, spectrum via the transform,
// bound = (sum x)/3^k compared to wValue. Dense path, k <= kDenseMatvecCap.
Certificate certifyVector(const PathVector& x);

// H_k materialized: H_k(r,c) = x_k at digit difference c (-) r. k <= 4.
std::vector<std::vector<Rational>> denseCertificateMatrix(int k);

}  // namespace rendezvous
