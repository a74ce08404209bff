#pragma once

#include <cstdint>

#include "rendezvous/path_vector.hpp"

namespace rendezvous {

// Two players walk on three locations for k steps. Relative to player I's
// frame, a path digit records player II's step as a move drawn from
// {0: same as I, 1: one ahead, 2: two ahead}; the pair meets at the first
// step whose relative position lands on 0, i.e. at the first digit equal
// to 2 of the difference path (digitwise II minus I).
//
// The overlook weight eps replaces the 0 entries of the one-step no-meet
// kernel: with eps > 0 a coincidence still fails to end the game with
// weight eps. eps = 0 is the standard game.
struct MeetingModel {
  Rational overlook = 0;
};

// A mixed strategy over k-step paths: exact probabilities, validated to be
// nonnegative and to sum to exactly 1.
struct SimplexStrategy {
  PathVector dist;

  explicit SimplexStrategy(PathVector p);
  int level() const { return dist.level; }
};

// Circulant generators: row r of B_k / M_k is the generator at digitwise
// difference c (-) r.
PathVector bVector(int k, const MeetingModel& model = {});
PathVector mVector(int k, const MeetingModel& model = {});

// Single circulant entries at a given difference path, O(k) each.
Rational bEntry(int k, std::int64_t diff, const MeetingModel& model = {});
Rational mEntry(int k, std::int64_t diff, const MeetingModel& model = {});

// Exact matrix-vector products, O(k 3^k), never forming the matrix.
PathVector matvecB(const PathVector& v, const MeetingModel& model = {}, bool transpose = false);
PathVector matvecM(const PathVector& v, const MeetingModel& model = {}, bool transpose = false);

// p^T M_k p: expected meeting time truncated at k+1 when both players draw
// from p. Dense matvec path for k <= 13; above that an equal-weight sparse
// support path (eps = 0) covers the block strategies that reach k = 15.
Rational quadFormM(const SimplexStrategy& p, const MeetingModel& model = {});

// p^T B_k p: probability the pair has not met within k steps.
Rational tailProb(const SimplexStrategy& p, const MeetingModel& model = {});

// Distribution of the first j digits (sums out the trailing k-j steps).
SimplexStrategy marginalStrategy(const SimplexStrategy& p, int j);

SimplexStrategy uniformStrategy(int k);

// The block strategy: each 2-step block is 00, 12 or 21 with probability
// 1/3 each; an odd final step is uniform over the three moves.
SimplexStrategy awDistribution(int k);

// Same family with the stay-block probability as a parameter: block 00 with
// probability q, blocks 12 and 21 with probability (1-q)/2 each.
SimplexStrategy parametricAwDistribution(int k, const Rational& q);
Rational parametricAwValue(int k, const Rational& q, const MeetingModel& model = {});

// Largest k the dense matvec paths accept (memory bound).
inline constexpr int kDenseMatvecCap = 13;

}  // namespace rendezvous
