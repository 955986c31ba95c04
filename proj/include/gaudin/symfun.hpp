#pragma once

// Symmetric functions expressed through power sums y_k = tr(g^k)/k:
// complete homogeneous h_k, Schur functions by Jacobi-Trudi, characters,
// and the time-vector operations (Miwa shifts, xi) built on them.

#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "gaudin/ring.hpp"
#include "gaudin/types.hpp"

namespace gaudin {

/// Partition with weakly decreasing positive parts. Construction sorts the
/// parts and drops zeros; negative parts are rejected.
class YoungDiagram {
 public:
  YoungDiagram() = default;
  YoungDiagram(std::initializer_list<int> parts);
  explicit YoungDiagram(std::vector<int> parts);

  static YoungDiagram row(int s);
  static YoungDiagram column(int a);

  const std::vector<int>& parts() const { return parts_; }
  int length() const { return static_cast<int>(parts_.size()); }
  int weight() const;
  bool empty() const { return parts_.empty(); }
  int operator[](int i) const { return parts_[i]; }
  /// Largest h-index the Jacobi-Trudi matrix touches: lambda_1 + l - 1.
  int jacobi_trudi_order() const { return empty() ? 0 : parts_[0] + length() - 1; }

  std::string to_string() const;
  auto operator<=>(const YoungDiagram&) const = default;

 private:
  std::vector<int> parts_;
};

/// All partitions of `weight`, in reverse lexicographic order.
std::vector<YoungDiagram> partitions(int weight);
/// All partitions of weight 0..max_weight.
std::vector<YoungDiagram> partitions_up_to(int max_weight);

/// Truncated power-sum vector (y_1..y_K) over a ring R.
template <class R>
class PowerSums {
 public:
  explicit PowerSums(std::vector<R> y) : y_(std::move(y)) {}
  int order() const { return static_cast<int>(y_.size()); }
  /// y_k, 1-based.
  const R& operator()(int k) const {
    if (k < 1 || k > order())
      throw TruncationError("power sum y_" + std::to_string(k) + " beyond truncation order " +
                            std::to_string(order()));
    return y_[k - 1];
  }
  const std::vector<R>& values() const { return y_; }

 private:
  std::vector<R> y_;
};

/// y_k = tr(g^k)/k for k = 1..order from raw traces p_k = tr(g^k).
template <class R>
PowerSums<R> power_sums_from_traces(const std::vector<R>& traces) {
  std::vector<R> y;
  y.reserve(traces.size());
  for (std::size_t k = 0; k < traces.size(); ++k) y.push_back(traces[k] * (1.0 / static_cast<double>(k + 1)));
  return PowerSums<R>(std::move(y));
}

/// h_0..h_kmax via m h_m = sum_{j=1..m} j y_j h_{m-j}. Needs y up to kmax.
/// `one` fixes the ring element used for h_0 (needed when y is empty).
template <class R>
std::vector<R> complete_homogeneous_all(const PowerSums<R>& y, int kmax, const R& one) {
  std::vector<R> h;
  if (kmax < 0) return h;
  h.reserve(kmax + 1);
  h.push_back(one);
  for (int m = 1; m <= kmax; ++m) {
    R acc = zero_like(one);
    for (int j = 1; j <= m; ++j) acc += y(j) * h[m - j] * static_cast<double>(j);
    h.push_back(acc * (1.0 / m));
  }
  return h;
}

template <class R>
std::vector<R> complete_homogeneous_all(const PowerSums<R>& y, int kmax) {
  if (y.order() == 0) {
    if (kmax > 0) (void)y(kmax);  // throws TruncationError
  }
  return complete_homogeneous_all(y, kmax, one_like(y(1)));
}

/// h_k(y): coefficient of z^k in exp(sum_k y_k z^k); zero for k < 0.
template <class R>
R complete_homogeneous(const PowerSums<R>& y, int k, const R& one) {
  if (k < 0) return zero_like(one);
  return complete_homogeneous_all(y, k, one)[k];
}

Complex complete_homogeneous(const PowerSums<Complex>& y, int k);

/// Elementary symmetric e_0..e_kmax, e_j = (-1)^j h_j(-y).
template <class R>
std::vector<R> elementary_all(const PowerSums<R>& y, int kmax, const R& one) {
  std::vector<R> neg;
  neg.reserve(y.order());
  for (const auto& v : y.values()) neg.push_back(v * (-1.0));
  auto e = complete_homogeneous_all(PowerSums<R>(std::move(neg)), kmax, one);
  for (std::size_t j = 1; j < e.size(); j += 2) e[j] = e[j] * (-1.0);
  return e;
}

/// Jacobi-Trudi: s_lambda(y) = det h_{lambda_i - i + j}(y).
template <class R>
R schur(const PowerSums<R>& y, const YoungDiagram& lam, const R& one) {
  const int l = lam.length();
  if (l == 0) return one;
  const int order = lam.jacobi_trudi_order();
  if (order > y.order())
    throw TruncationError("schur " + lam.to_string() + " needs power sums up to y_" + std::to_string(order) +
                          ", have " + std::to_string(y.order()));
  const auto h = complete_homogeneous_all(y, order, one);
  std::vector<std::vector<R>> m(l, std::vector<R>(l, zero_like(one)));
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) {
      const int idx = lam[i] - i + j;
      if (idx >= 0) m[i][j] = h[idx];
    }
  return determinant(m, one);
}

Complex schur(const PowerSums<Complex>& y, const YoungDiagram& lam);

/// chi_lambda(g) = s_lambda(y) with y_k = tr(g^k)/k.
Complex character(const Eigen::MatrixXcd& g, const YoungDiagram& lam);

/// chi_lambda over any ring, from a generic square matrix.
template <class R>
R character(const SquareMatrix<R>& g, const YoungDiagram& lam, const R& one) {
  if (lam.empty()) return one;
  return schur(power_sums_from_traces(power_traces(g, lam.jacobi_trudi_order())), lam, one);
}

/// Time vector t = (t_1..t_K) together with the Planck constant it is paired with.
class TimeVector {
 public:
  TimeVector(Complex hbar, std::vector<Complex> entries);
  static TimeVector zero(Complex hbar, int order);

  Complex hbar() const { return hbar_; }
  int order() const { return static_cast<int>(t_.size()); }
  /// t_k, 1-based; zero beyond the truncation order.
  Complex time(int k) const { return (k >= 1 && k <= order()) ? t_[k - 1] : Complex{}; }
  const std::vector<Complex>& entries() const { return t_; }

  TimeVector with_time(int k, Complex value) const;
  TimeVector extended(int order) const;
  friend TimeVector operator-(const TimeVector& a, const TimeVector& b);

 private:
  Complex hbar_;
  std::vector<Complex> t_;
};

/// t +- hbar [z^{-1}]: entry k becomes t_k +- (hbar/k) z^{-k}.
TimeVector miwa_shift(const TimeVector& t, Complex z, int sign);

/// xi(t, z) = sum_k t_k z^k.
Complex xi(const TimeVector& t, Complex z);

/// Power sums y_k = t_k/hbar, the argument of s_lambda(t/hbar).
PowerSums<Complex> scaled_times(const TimeVector& t);

/// Polynomial in power sums: exponent vector (a_1, a_2, ..) -> coefficient,
/// representing sum c_a prod_k y_k^{a_k}.
class PowerSumPolynomial {
 public:
  using Exponents = std::vector<int>;
  PowerSumPolynomial() = default;
  explicit PowerSumPolynomial(double constant);
  static PowerSumPolynomial variable(int k);

  const std::map<Exponents, double>& terms() const { return terms_; }
  PowerSumPolynomial& operator+=(const PowerSumPolynomial& o);
  PowerSumPolynomial& operator-=(const PowerSumPolynomial& o);
  PowerSumPolynomial& operator*=(double s);
  friend PowerSumPolynomial operator+(PowerSumPolynomial a, const PowerSumPolynomial& b) { return a += b; }
  friend PowerSumPolynomial operator-(PowerSumPolynomial a, const PowerSumPolynomial& b) { return a -= b; }
  friend PowerSumPolynomial operator*(const PowerSumPolynomial& a, const PowerSumPolynomial& b);
  friend PowerSumPolynomial operator*(PowerSumPolynomial a, double s) { return a *= s; }

  Complex evaluate(const PowerSums<Complex>& y) const;

 private:
  void prune();
  std::map<Exponents, double> terms_;
};

inline PowerSumPolynomial zero_like(const PowerSumPolynomial&) { return PowerSumPolynomial(); }
inline PowerSumPolynomial one_like(const PowerSumPolynomial&) { return PowerSumPolynomial(1.0); }

/// s_lambda expanded as a polynomial in y_1..y_|lambda|.
PowerSumPolynomial schur_polynomial(const YoungDiagram& lam);

}  // namespace gaudin
