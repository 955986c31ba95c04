#pragma once

// Univariate complex polynomials as ascending coefficient vectors.

#include <span>
#include <vector>

#include "gaudin/types.hpp"

namespace gaudin::poly {

using Poly = std::vector<Complex>;

Complex evaluate(std::span<const Complex> p, Complex x);
Poly derivative(std::span<const Complex> p);
Poly multiply(std::span<const Complex> a, std::span<const Complex> b);
Poly add(std::span<const Complex> a, std::span<const Complex> b);
/// prod_i (x - r_i)
Poly from_roots(std::span<const Complex> roots);
/// Coefficients of p(x + shift) in powers of x.
Poly taylor_shift(std::span<const Complex> p, Complex shift);

/// Roots of p by eigenvalues of the companion matrix. Leading coefficient
/// must be nonzero.
std::vector<Complex> roots(std::span<const Complex> p);

/// Samples points c + r w^m, m = 0..M-1 (w = exp(2 pi i/M)); returns them.
std::vector<Complex> circle_points(Complex center, double radius, int count);

/// Inverse of circle_points sampling: coefficients q_j of the degree-(M-1)
/// interpolant in the scaled variable u = (x - c)/r.
Poly interpolate_on_circle(std::span<const Complex> values);

/// Converts coefficients in u = (x - c)/r back to coefficients in x.
Poly unscale(std::span<const Complex> q, Complex center, double radius);

/// Minimum-cost matching of `a` onto `b` (equal sizes) by |a_i - b_j|,
/// minimising the largest distance, then the total. Exhaustive; sizes <= 8.
std::vector<int> match_min_cost(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace gaudin::poly
