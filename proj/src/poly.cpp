#include "gaudin/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace gaudin::poly {

Complex evaluate(std::span<const Complex> p, Complex x) {
  Complex acc{};
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly derivative(std::span<const Complex> p) {
  Poly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<double>(k));
  if (d.empty()) d.push_back(0.0);
  return d;
}

Poly multiply(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, Complex{});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Poly add(std::span<const Complex> a, std::span<const Complex> b) {
  Poly out(std::max(a.size(), b.size()), Complex{});
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

Poly from_roots(std::span<const Complex> roots) {
  Poly p{1.0};
  for (const auto& r : roots) {
    const Poly factor{-r, 1.0};
    p = multiply(p, factor);
  }
  return p;
}

Poly taylor_shift(std::span<const Complex> p, Complex shift) {
  Poly q(p.begin(), p.end());
  const std::size_t n = q.size();
  // repeated synthetic division
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j > i; --j) q[j - 1] += shift * q[j];
  return q;
}

std::vector<Complex> roots(std::span<const Complex> p) {
  std::size_t deg = p.size();
  while (deg > 0 && p[deg - 1] == Complex{}) --deg;
  if (deg == 0) throw std::invalid_argument("poly::roots: zero polynomial");
  deg -= 1;
  if (deg == 0) return {};
  const Complex lead = p[deg];
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(deg), static_cast<Eigen::Index>(deg));
  for (std::size_t i = 1; i < deg; ++i) companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  for (std::size_t j = 0; j < deg; ++j)
    companion(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(deg - 1)) = -p[j] / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<Complex> out(deg);
  for (std::size_t i = 0; i < deg; ++i) out[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
  return out;
}

std::vector<Complex> circle_points(Complex center, double radius, int count) {
  std::vector<Complex> pts;
  pts.reserve(count);
  for (int m = 0; m < count; ++m)
    pts.push_back(center + radius * std::polar(1.0, 2.0 * std::numbers::pi * m / count));
  return pts;
}

Poly interpolate_on_circle(std::span<const Complex> values) {
  const int count = static_cast<int>(values.size());
  Poly q(count, Complex{});
  for (int j = 0; j < count; ++j) {
    Complex acc{};
    for (int m = 0; m < count; ++m) acc += values[m] * std::polar(1.0, -2.0 * std::numbers::pi * m * j / count);
    q[j] = acc / static_cast<double>(count);
  }
  return q;
}

Poly unscale(std::span<const Complex> q, Complex center, double radius) {
  // sum_j q_j ((x - c)/r)^j
  Poly out{0.0};
  Poly power{1.0};
  const Poly linear{-center / radius, 1.0 / radius};
  for (std::size_t j = 0; j < q.size(); ++j) {
    if (j > 0) power = multiply(power, linear);
    Poly term = power;
    for (auto& v : term) v *= q[j];
    out = add(out, term);
  }
  return out;
}

std::vector<int> match_min_cost(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw std::invalid_argument("match_min_cost: size mismatch");
  if (a.size() > 8) throw std::invalid_argument("match_min_cost: exhaustive matching limited to 8 items");
  std::vector<int> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best = perm;
  double best_max = std::numeric_limits<double>::infinity();
  double best_sum = best_max;
  do {
    double mx = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double d = std::abs(a[i] - b[perm[i]]);
      mx = std::max(mx, d);
      sum += d;
    }
    if (mx < best_max || (mx == best_max && sum < best_sum)) {
      best_max = mx;
      best_sum = sum;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace gaudin::poly
