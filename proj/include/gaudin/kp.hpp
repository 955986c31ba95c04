#pragma once

// KP side at eigenvalue level: the bilinear identity as a formal residue at
// z = infinity, the Baker-Akhiezer function and its t_2 linear problem.

#include <optional>
#include <vector>

#include "gaudin/master.hpp"

namespace gaudin {

/// Series in z around infinity: sum_{m <= top} c_m z^m. Exponents in
/// [low, top] are known. Below `low` the coefficients are zero when the
/// series is exact and unknown otherwise.
class LaurentSeries {
 public:
  /// coefficients[i] is the coefficient of z^{top - i}
  LaurentSeries(int top, std::vector<Complex> coefficients, bool exact);

  int top() const { return top_; }
  int low() const { return top_ - static_cast<int>(c_.size()) + 1; }
  bool exact() const { return exact_; }
  /// Throws TruncationError for an unknown coefficient.
  Complex coefficient(int m) const;
  bool known(int m) const { return m > top_ || m >= low() || exact_; }

  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);

 private:
  int top_;
  std::vector<Complex> c_;
  bool exact_;
};

/// Taylor coefficients eps_0..eps_{count-1} of exp(xi(t, z)/hbar) in z.
std::vector<Complex> exp_xi_coefficients(const TimeVector& t, int count);

struct BilinearOptions {
  int window = 64;              ///< terms kept in the plus-shifted series
  double tail_tolerance = 1e-12;  ///< refuse when the estimated tail exceeds this times the scale
};

struct BilinearResult {
  Complex residue;     ///< coefficient of z^{-1} of the integrand
  double scale = 0.0;  ///< the residue sum taken over coefficient magnitudes
  double tail = 0.0;   ///< bound on the neglected terms
  int window = 0;
};

/// Residue at infinity of exp(xi(t - t', z)/hbar) tau(x, t - hbar[1/z]) tau(x, t' + hbar[1/z])
/// for every state, tau being the eigenvalue of the master operator.
/// Throws TruncationError if the window cannot support the requested tolerance.
std::vector<BilinearResult> bilinear_residues(const JointSpectrum& spectrum, Complex x, const TimeVector& t,
                                              const TimeVector& t_prime, const GaudinModel& model,
                                              const BilinearOptions& options = {});
BilinearResult bilinear_residue(const StateVector& v, Complex x, const TimeVector& t, const TimeVector& t_prime,
                                const GaudinModel& model, const BilinearOptions& options = {});

/// phi_j, j = 0..N+extra, with exp(-(xz + xi(t,z))/hbar) psi = sum_j phi_j z^{-j}.
/// Entries beyond N vanish; they are returned so callers can check it.
/// Throws PoleError when tau(x, t) = 0.
std::vector<Complex> ba_coefficients(const StateVector& v, Complex x, const TimeVector& t, const GaudinModel& model,
                                     int extra = 2);

/// psi(x, t; z) for one state.
Complex ba_function(const StateVector& v, Complex x, const TimeVector& t, Complex z, const GaudinModel& model);

/// lim_{x -> oo} phi_j(x) for j = 0..N, read from the leading x-coefficients
/// of the numerator and denominator polynomials sampled on |x| = radius.
std::vector<Complex> ba_large_x_limit(const StateVector& v, const TimeVector& t, const GaudinModel& model,
                                      double radius = 1e3);

struct LinearProblemResult {
  double residual = 0.0;  ///< |hbar psi_t2 - hbar^2 psi_xx - 2 u psi| / scale
  Complex u;              ///< hbar^2 d_x^2 log tau
  Complex psi;
};

/// Central differences with step h in x and in t_2; u is exact from the
/// polynomial tau. Throws PoleError near a zero of tau.
LinearProblemResult linear_problem_residual(const StateVector& v, Complex x, const TimeVector& t, Complex z, double h,
                                            const GaudinModel& model);

/// hbar^2 d_x^2 log tau(x, t) for one state.
Complex kp_potential(const StateVector& v, Complex x, const TimeVector& t, const GaudinModel& model);

/// Least-squares slope of log residual against log step.
double observed_order(const std::vector<double>& steps, const std::vector<double>& residuals);

}  // namespace gaudin
