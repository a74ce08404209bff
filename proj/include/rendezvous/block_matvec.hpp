#pragma once

#include <cstdint>
#include <vector>

namespace rendezvous {

// Multiplies a length-3^k vector by the no-meet kernel B_k or the truncated
// meeting-time kernel M_k without forming either matrix:
//   B_k = B1 (x) B_(k-1),   M_k = J + B1 (x) M_(k-1),   B_0 = M_0 = (1),
// where B1 has ones everywhere except a single eps per row:
//   B1 = [[1,1,e],[e,1,1],[1,e,1]].
// Generic over the scalar so the exact (rational) and float paths share one
// recursion. Cost O(k 3^k) scalar ops; peak extra memory ~1.5 * 3^k scalars.
template <class S>
class BlockMatvec {
 public:
  BlockMatvec(S eps, bool withJ, bool transpose)
      : eps_(std::move(eps)), epsZero_(eps_ == S(0)), withJ_(withJ), transpose_(transpose) {}

  std::vector<S> apply(int k, const std::vector<S>& v) const {
    std::vector<S> out(v.size());
    run(k, v.data(), out.data(), static_cast<std::int64_t>(v.size()));
    return out;
  }

 private:
  void run(int k, const S* v, S* out, std::int64_t n) const {
    if (k == 0) {
      out[0] = v[0];
      return;
    }
    const std::int64_t h = n / 3;
    std::vector<S> u(static_cast<std::size_t>(h));
    for (int r = 0; r < 3; ++r) {
      // Row r of B1 is all ones except eps at column (r+2)%3 ((r+1)%3 when
      // transposed).
      const int epsCol = transpose_ ? (r + 1) % 3 : (r + 2) % 3;
      const S* c0 = v + ((epsCol + 1) % 3) * h;
      const S* c1 = v + ((epsCol + 2) % 3) * h;
      const S* ce = v + epsCol * h;
      for (std::int64_t i = 0; i < h; ++i) {
        u[static_cast<std::size_t>(i)] = c0[i] + c1[i];
        if (!epsZero_) u[static_cast<std::size_t>(i)] += eps_ * ce[i];
      }
      run(k - 1, u.data(), out + r * h, h);
    }
    if (withJ_) {
      S s = S(0);
      for (std::int64_t i = 0; i < n; ++i) s += v[i];
      for (std::int64_t i = 0; i < n; ++i) out[i] += s;
    }
  }

  S eps_;
  bool epsZero_;
  bool withJ_;
  bool transpose_;
};

}  // namespace rendezvous
