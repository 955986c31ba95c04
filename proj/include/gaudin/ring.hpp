#pragma once

// Small generic algebra over commutative rings. The same code runs on
// complex scalars, jets and power-sum polynomials; each ring type provides
// zero_like/one_like overloads found by ADL.

#include <bit>
#include <cassert>
#include <cstddef>
#include <vector>

#include "gaudin/types.hpp"

namespace gaudin {

inline Complex zero_like(const Complex&) { return 0.0; }
inline Complex one_like(const Complex&) { return 1.0; }
inline Complex reciprocal(Complex v) {
  if (v == Complex{}) throw PoleError("reciprocal of zero");
  return 1.0 / v;
}

/// Dense row-major square matrix over an arbitrary commutative ring.
template <class R>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  SquareMatrix(int size, const R& fill) : size_(size), a_(static_cast<std::size_t>(size) * size, fill) {}

  int size() const { return size_; }
  R& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * size_ + c]; }
  const R& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * size_ + c]; }

  R trace() const {
    R t = zero_like(a_.front());
    for (int i = 0; i < size_; ++i) t += (*this)(i, i);
    return t;
  }

  friend SquareMatrix operator*(const SquareMatrix& x, const SquareMatrix& y) {
    assert(x.size_ == y.size_);
    SquareMatrix out(x.size_, zero_like(x.a_.front()));
    for (int i = 0; i < x.size_; ++i)
      for (int k = 0; k < x.size_; ++k) {
        const R& xik = x(i, k);
        for (int j = 0; j < x.size_; ++j) out(i, j) += xik * y(k, j);
      }
    return out;
  }

 private:
  int size_ = 0;
  std::vector<R> a_;
};

/// Power traces tr g^k for k = 1..kmax (entry k-1).
template <class R>
std::vector<R> power_traces(const SquareMatrix<R>& g, int kmax) {
  std::vector<R> out;
  out.reserve(kmax > 0 ? kmax : 0);
  if (kmax <= 0) return out;
  SquareMatrix<R> power = g;
  out.push_back(power.trace());
  for (int k = 2; k <= kmax; ++k) {
    power = power * g;
    out.push_back(power.trace());
  }
  return out;
}

/// Division-free determinant by Laplace expansion over column subsets,
/// O(2^n n) ring operations. Works in any commutative ring.
template <class R>
R determinant(const std::vector<std::vector<R>>& m, const R& one) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return one;
  const unsigned full = (1u << n) - 1u;
  std::vector<R> dp(full + 1u, zero_like(one));
  dp[0] = one;
  for (unsigned mask = 1; mask <= full; ++mask) {
    const int row = std::popcount(mask) - 1;
    R acc = zero_like(one);
    for (int c = 0; c < n; ++c) {
      if (!(mask & (1u << c))) continue;
      const unsigned rest = mask & ~(1u << c);
      const int above = std::popcount(rest >> (c + 1));
      R term = m[row][c] * dp[rest];
      if (above % 2 == 0)
        acc += term;
      else
        acc -= term;
    }
    dp[mask] = acc;
  }
  return dp[full];
}

}  // namespace gaudin
