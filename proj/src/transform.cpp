#include "rendezvous/transform.hpp"

#include "rendezvous/errors.hpp"

namespace rendezvous {

namespace {

// One in-place 3-point butterfly on entries (i0, i0+stride, i0+2*stride).
// Scratch rationals are owned by the caller so inner loops never allocate
// fresh limbs. conjugate=false applies V1; true applies conj(V1), which
// swaps the roles of omega and omega^2 (i.e. swaps rows 1 and 2 outputs).
struct ButterflyScratch {
  mpq_class a0, b0, a1, b1, a2, b2;
};

inline void butterfly(Eisenstein& e0, Eisenstein& e1, Eisenstein& e2, bool conjugate,
                      ButterflyScratch& s) {
  mpq_set(s.a0.get_mpq_t(), e0.a.raw().get_mpq_t());
  mpq_set(s.b0.get_mpq_t(), e0.b.raw().get_mpq_t());
  mpq_set(s.a1.get_mpq_t(), e1.a.raw().get_mpq_t());
  mpq_set(s.b1.get_mpq_t(), e1.b.raw().get_mpq_t());
  mpq_set(s.a2.get_mpq_t(), e2.a.raw().get_mpq_t());
  mpq_set(s.b2.get_mpq_t(), e2.b.raw().get_mpq_t());

  mpq_ptr a0 = s.a0.get_mpq_t(), b0 = s.b0.get_mpq_t();
  mpq_ptr a1 = s.a1.get_mpq_t(), b1 = s.b1.get_mpq_t();
  mpq_ptr a2 = s.a2.get_mpq_t(), b2 = s.b2.get_mpq_t();

  // y0 = x0 + x1 + x2
  mpq_ptr ya = e0.a.raw().get_mpq_t(), yb = e0.b.raw().get_mpq_t();
  mpq_add(ya, a0, a1);
  mpq_add(ya, ya, a2);
  mpq_add(yb, b0, b1);
  mpq_add(yb, yb, b2);

  // y1 = x0 + w*x1 + w^2*x2: (a0 - b1 + b2 - a2, b0 + a1 - b1 - a2)
  Eisenstein& p1 = conjugate ? e2 : e1;
  ya = p1.a.raw().get_mpq_t();
  yb = p1.b.raw().get_mpq_t();
  mpq_sub(ya, a0, b1);
  mpq_add(ya, ya, b2);
  mpq_sub(ya, ya, a2);
  mpq_add(yb, b0, a1);
  mpq_sub(yb, yb, b1);
  mpq_sub(yb, yb, a2);

  // y2 = x0 + w^2*x1 + w*x2: (a0 - a1 + b1 - b2, b0 - a1 + a2 - b2)
  Eisenstein& p2 = conjugate ? e1 : e2;
  ya = p2.a.raw().get_mpq_t();
  yb = p2.b.raw().get_mpq_t();
  mpq_sub(ya, a0, a1);
  mpq_add(ya, ya, b1);
  mpq_sub(ya, ya, b2);
  mpq_sub(yb, b0, a1);
  mpq_add(yb, yb, a2);
  mpq_sub(yb, yb, b2);
}

EisVector transformImpl(EisVector x, bool conjugate) {
  const int k = x.level;
  requireLevel(k, "charTransform", 0);
  const std::int64_t n = x.size();
  ButterflyScratch scratch;
  for (int axis = 1; axis <= k; ++axis) {
    const std::int64_t stride = pow3(k - axis);
    for (std::int64_t block = 0; block < n; block += 3 * stride)
      for (std::int64_t lo = 0; lo < stride; ++lo) {
        const std::int64_t i = block + lo;
        butterfly(x[i], x[i + stride], x[i + 2 * stride], conjugate, scratch);
      }
  }
  return x;
}

}  // namespace

EisVector charTransform(EisVector x) { return transformImpl(std::move(x), false); }

EisVector charTransform(const PathVector& x) {
  EisVector e(x.level);
  for (std::int64_t i = 0; i < x.size(); ++i) e[i].a = x[i];
  return transformImpl(std::move(e), false);
}

EisVector conjCharTransform(EisVector x) { return transformImpl(std::move(x), true); }

PathVector realSpectrum(const PathVector& x) {
  const EisVector t = charTransform(x);
  PathVector out(x.level);
  for (std::int64_t i = 0; i < t.size(); ++i) out[i] = t[i].realPart();
  return out;
}

std::vector<std::vector<Eisenstein>> denseCharacterMatrix(int k) {
  if (k < 1 || k > 3)
    throw std::invalid_argument("denseCharacterMatrix: only 1 <= k <= 3 is supported");
  const Eisenstein one = Eisenstein::one(), w = Eisenstein::omega(), w2 = Eisenstein::omegaSq();
  std::vector<std::vector<Eisenstein>> m = {{one, one, one}, {one, w, w2}, {one, w2, w}};
  for (int level = 2; level <= k; ++level) {
    const std::int64_t half = pow3(level - 1);
    std::vector<std::vector<Eisenstein>> big(
        static_cast<std::size_t>(3 * half),
        std::vector<Eisenstein>(static_cast<std::size_t>(3 * half)));
    for (std::int64_t r = 0; r < 3 * half; ++r)
      for (std::int64_t c = 0; c < 3 * half; ++c) {
        const Eisenstein& hi = (r / half == 0 || c / half == 0)
                                   ? one
                                   : (((r / half) * (c / half)) % 3 == 1 ? w : w2);
        big[r][c] = hi * m[static_cast<std::size_t>(r % half)][static_cast<std::size_t>(c % half)];
      }
    m = std::move(big);
  }
  return m;
}

}  // namespace rendezvous
