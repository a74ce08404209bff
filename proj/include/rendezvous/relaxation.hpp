#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rendezvous/lp.hpp"
#include "rendezvous/path_vector.hpp"

namespace rendezvous {

// Dense real part of the character matrix, materialized for the small-k LP
// builders only: direct for k <= 3, one-level Kronecker assembly at k = 4.
std::vector<std::vector<Rational>> uMatrix(int k);

// maximize sum_i x(i) over free x with x <= m_k entrywise and U_k x >= 0.
// The optimum is 3^k times the level-k game bound.
LpProblem buildPrimalLp(int k);  // k <= 4

// minimize y^T m_k over distributions y (y >= 0, sum y = 1) that are
// invariant under the 1<->2 digit swap and whose circulant has nonnegative
// spectrum (U_k y >= 0). The swap rows make the circulant genuinely
// symmetric, so the spectral condition is positive semidefiniteness. The
// optimum matches the primal optimum / 3^k at k <= 2; beyond that the two
// values are reported side by side and compared, not asserted equal.
LpProblem buildDualLp(int k);  // k <= 4

struct FeasibilityReport {
  bool feasible = false;
  Rational bound;                         // (sum x)/3^k, always filled
  std::int64_t dominationViolation = -1;  // first i with x(i) > m_k(i)
  std::int64_t spectrumViolation = -1;    // first i with (U_k x)(i) < 0
};

// Streaming certificate check for an arbitrary candidate x at level k:
// domination entry by entry against the circulant generator, spectrum via
// the fast transform. No dense matrix is ever formed, so this is the path
// that scales where LP solving cannot.
FeasibilityReport checkFeasibleBound(int k, const PathVector& x);

// Same check; returns the certified bound (sum x)/3^k on success and throws
// std::domain_error naming the witness index on rejection.
Rational verifyFeasibleBound(int k, const PathVector& x);

// Semidefinite form of the level-k problem, in SDPA sparse terms: one
// variable per matrix entry H(p,q), a PSD block enforcing (H+H^T)/2 >= 0,
// and a diagonal block of slacks enforcing H <= M_k entrywise. The
// objective c is -3^(-k) per variable, so an external solver's minimum is
// minus the level-k game bound scaled by 3^k (about -18 at k = 2).
struct SdpaEntry {
  int matrix = 0;  // 0 = constant matrix, 1..nVars = per-variable matrices
  int block = 1;
  int row = 1;  // 1-based, row <= col (upper triangle)
  int col = 1;
  Rational value;
};

struct SdpaProblem {
  int nVars = 0;
  std::vector<int> blockStruct;  // negative size = diagonal block
  std::vector<Rational> c;
  std::vector<SdpaEntry> entries;
};

SdpaProblem buildSdpa(int k);  // k <= 3

// Writes the .dat-s file at path plus an exact-rational sidecar at
// path + ".exact.json". File values are decimal (17 significant digits
// where not exact); the sidecar is lossless.
void exportSdpa(int k, const std::string& path);

// Reference reader for round-trip checks: parses comments, dimensions,
// block structure, objective and entry lines; decimal values are converted
// to exact rationals.
SdpaProblem parseSdpa(const std::string& path);

// The .dat-s value rendering: 17 significant digits, enough for a decimal
// to survive a parse and re-render unchanged.
std::string sdpaDecimal(const Rational& value);

// Round-trip comparison: identical structure and identical decimal
// renderings. Parsed values may pick up sub-double dust relative to the
// exact originals; their renderings may not.
bool sdpaSameDecimal(const SdpaProblem& a, const SdpaProblem& b);

}  // namespace rendezvous
