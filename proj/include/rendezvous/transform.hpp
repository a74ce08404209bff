#pragma once

#include <vector>

#include "rendezvous/path_vector.hpp"

namespace rendezvous {

// Character transform of a path vector: multiplication by the k-fold
// Kronecker power of the 3x3 character table
//   V1 = [[1, 1,      1     ],
//         [1, omega,  omega2],
//         [1, omega2, omega ]].
// Implemented as k axis-wise 3-point butterfly passes using only
// additions and subtractions in the {1, omega} basis, O(k 3^k) exact ops.
EisVector charTransform(const PathVector& x);
EisVector charTransform(EisVector x);

// Same factorization with conj(V1) per axis. Composing the two scales by
// 3^k: conjCharTransform(charTransform(x)) == 3^k * x.
EisVector conjCharTransform(EisVector x);

// Real parts of the character transform (exact rationals).
PathVector realSpectrum(const PathVector& x);

// Fully materialized V_k for cross-checking the fast passes; 3^k x 3^k
// entries, so deliberately capped at k <= 3.
std::vector<std::vector<Eisenstein>> denseCharacterMatrix(int k);

}  // namespace rendezvous
