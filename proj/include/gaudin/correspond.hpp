#pragma once

// Quantum-classical correspondence: the Lax matrix Y0 built from Gaudin
// eigenvalues (p_i(0) = -H_i/hbar), its spectrum against the twist, the
// algebraic system fixing H, and the velocity identity hbar x_i' = -2 H_i.

#include <cstdint>
#include <vector>

#include "gaudin/cm.hpp"
#include "gaudin/hilbert.hpp"
#include "gaudin/master.hpp"

namespace gaudin {

struct CorrespondenceRecord {
  std::size_t state = 0;
  std::vector<int> m;
  std::vector<Complex> H;  ///< refined to quad precision, then rounded
  Eigen::MatrixXcd Y0;
  std::vector<Complex> Y0_spectrum;
};

/// Y0_ii = H_i/hbar, Y0_ik = hbar/(x_k - x_i). H is polished by inverse
/// iteration in quad precision before the spectrum is taken, because Y0 is
/// typically non-diagonalizable and double input would blur it to ~eps^(1/n).
CorrespondenceRecord build_y0(const JointState& state, const GaudinModel& model, std::size_t index = 0);

/// The classical phase point with x_i the marked points and p_i = -H_i/hbar.
CMPhasePoint initial_point(const std::vector<Complex>& H, const GaudinModel& model);

struct MatchReport {
  std::vector<Complex> expected;  ///< k_a repeated m_a times
  std::vector<int> assignment;    ///< Y0_spectrum[i] -> expected[assignment[i]]
  double max_deviation = 0.0;
  bool pass = false;
};

MatchReport twist_spectrum_check(const CorrespondenceRecord& record, const GaudinModel& model, double tolerance = 1e-6);

/// prod_a (z - k_a)^{m_a} as ascending coefficients.
poly::Poly twist_polynomial(const std::vector<int>& m, const GaudinModel& model);

/// max over z of |lhs(z) - rhs(z)| / max(1, |rhs(z)|), where lhs is the matching
/// expansion with a_l = H_l/hbar and weights hbar^2/x_ij^2. Default samples are
/// n+1 points on a circle enclosing the twist.
double spectral_residual(const std::vector<Complex>& H, const std::vector<int>& m, const GaudinModel& model,
                 std::vector<Complex> z_samples = {});
double spectral_residual(const CorrespondenceRecord& record, const GaudinModel& model, std::vector<Complex> z_samples = {});

/// sigma_min/sigma_max of [1, Y^t 1, .., (Y^t)^{n-1} 1]; zero when 1^t is not a cyclic covector of Y.
double cyclicity(const Eigen::MatrixXcd& Y);

struct SpectralSolveOptions {
  int starts = 200;
  std::uint64_t seed = 20131001;
  int max_iterations = 100;
  double dedup_tolerance = 1e-7;
  double cyclic_threshold = 1e-6;
};

struct SpectralSolveResult {
  std::vector<int> m;
  std::vector<std::vector<Complex>> solutions;  ///< roots whose Y0 has 1^t cyclic
  std::vector<std::vector<Complex>> rejected;   ///< remaining roots of the system
  int converged_starts = 0;
  std::size_t sector_dimension = 0;
  bool undercoverage = false;  ///< fewer accepted solutions than the sector dimension
};

/// Multistart Newton on the coefficients of z^0..z^{n-1}. The system alone has
/// more roots than the sector has states (among them the image of the quantum
/// spectrum under hbar -> -hbar); the quantum ones are those for which 1^t is
/// a cyclic covector of Y0, and only those are returned in `solutions`.
SpectralSolveResult solve_spectral_system(const GaudinModel& model, const std::vector<int>& m, const SpectralSolveOptions& options = {});

/// Max distance between two sets of H-tuples under a one-to-one pairing, or
/// infinity if the counts differ.
double compare_solution_sets(const std::vector<std::vector<Complex>>& a, const std::vector<std::vector<Complex>>& b);

struct VelocityResult {
  std::vector<Complex> velocity;  ///< central difference of the root attached to x_i
  std::vector<double> error;      ///< |hbar x_i' + 2 H_i| / max_j |2 H_j|
  double max_error = 0.0;
};

/// Roots of the eigenvalue tau at t = (0, +-delta). Throws ConvergenceError
/// when the roots move too far to be attached to the marked points.
VelocityResult velocity_check(const JointState& state, const GaudinModel& model, double delta);

/// e^{sum t_k tr g0^k/hbar} det(x I - X0 + sum k t_k Y0^{k-1}) with X0 = diag(x_i).
Complex lax_tau(const CorrespondenceRecord& record, Complex x, const TimeVector& t, const GaudinModel& model);

}  // namespace gaudin
