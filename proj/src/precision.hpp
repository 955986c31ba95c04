#pragma once

// Quad-precision helpers for spectra of Jordan-like matrices, where an input
// error eps moves eigenvalues by eps^(1/size).

#include <boost/multiprecision/complex128.hpp>
#include <vector>

#include "gaudin/types.hpp"

namespace gaudin::quad {

using Real = boost::multiprecision::float128;
using Cplx = boost::multiprecision::complex128;
using Matrix = std::vector<std::vector<Cplx>>;

inline Cplx lift(Complex z) { return Cplx(Real(z.real()), Real(z.imag())); }
inline Complex drop(const Cplx& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}
inline Real mag(const Cplx& z) { return boost::multiprecision::abs(z); }

inline Matrix zeros(std::size_t n) { return Matrix(n, std::vector<Cplx>(n, Cplx(0))); }

/// Solves A x = b by Gaussian elimination with partial pivoting (A, b copied).
inline std::vector<Cplx> solve(Matrix A, std::vector<Cplx> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (mag(A[r][c]) > mag(A[piv][c])) piv = r;
    std::swap(A[c], A[piv]);
    std::swap(b[c], b[piv]);
    // an exactly singular pivot means the shift hit an eigenvalue; any tiny value works
    if (mag(A[c][c]) == 0) A[c][c] = Cplx(Real(1e-30));
    for (std::size_t r = c + 1; r < n; ++r) {
      const Cplx f = A[r][c] / A[c][c];
      if (f == Cplx(0)) continue;
      for (std::size_t k = c; k < n; ++k) A[r][k] -= f * A[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<Cplx> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Cplx acc = b[i];
    for (std::size_t k = i + 1; k < n; ++k) acc -= A[i][k] * x[k];
    x[i] = acc / A[i][i];
  }
  return x;
}

inline std::vector<Cplx> apply(const Matrix& A, const std::vector<Cplx>& v) {
  std::vector<Cplx> out(A.size(), Cplx(0));
  for (std::size_t r = 0; r < A.size(); ++r)
    for (std::size_t c = 0; c < v.size(); ++c) out[r] += A[r][c] * v[c];
  return out;
}

/// sum conj(a_i) b_i
inline Cplx dot(const std::vector<Cplx>& a, const std::vector<Cplx>& b) {
  Cplx acc(0);
  for (std::size_t i = 0; i < a.size(); ++i) acc += boost::multiprecision::conj(a[i]) * b[i];
  return acc;
}

inline void normalize(std::vector<Cplx>& v) {
  Real s = 0;
  for (const auto& c : v) s += boost::multiprecision::norm(c);
  s = boost::multiprecision::sqrt(s);
  for (auto& c : v) c /= s;
}

/// det(zI - A) = sum_k c_k z^k ascending, by Faddeev-LeVerrier.
inline std::vector<Cplx> char_poly(const Matrix& A) {
  const std::size_t n = A.size();
  std::vector<Cplx> c(n + 1, Cplx(0));
  c[n] = Cplx(1);
  Matrix M = zeros(n);
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I
    Matrix next = zeros(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Cplx acc(0);
        for (std::size_t l = 0; l < n; ++l) acc += A[i][l] * M[l][j];
        next[i][j] = acc;
      }
    for (std::size_t i = 0; i < n; ++i) next[i][i] += c[n - k + 1];
    M = std::move(next);
    Cplx tr(0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) tr += A[i][l] * M[l][i];
    c[n - k] = -tr / Real(static_cast<int>(k));
  }
  return c;
}

/// Roots of a monic-or-not ascending polynomial by Aberth-Ehrlich iteration from `guess`.
inline std::vector<Cplx> roots(const std::vector<Cplx>& p, std::vector<Cplx> z, int max_iter = 500) {
  const std::size_t n = z.size();
  auto eval = [&](const Cplx& x, Cplx& d) {
    Cplx v(0);
    d = Cplx(0);
    for (std::size_t k = p.size(); k-- > 0;) {
      d = d * x + v;
      v = v * x + p[k];
    }
    return v;
  };
  const Real eps = Real(1e-32);
  for (int it = 0; it < max_iter; ++it) {
    Real worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
      Cplx d;
      const Cplx v = eval(z[i], d);
      if (v == Cplx(0)) continue;
      const Cplx ratio = v / d;
      Cplx s(0);
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) s += Cplx(1) / (z[i] - z[j]);
      const Cplx w = ratio / (Cplx(1) - ratio * s);
      z[i] -= w;
      worst = std::max(worst, mag(w) / std::max(Real(1), mag(z[i])));
    }
    if (worst < eps) break;
  }
  return z;
}

}  // namespace gaudin::quad
