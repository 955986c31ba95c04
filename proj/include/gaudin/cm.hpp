#pragma once

// Classical rational Calogero-Moser system with coupling hbar^2:
//   Y_ik = -p_i delta_ik - hbar (1 - delta_ik)/(x_i - x_k),  x_i' = 2 p_i,
//   p_i' = -4 sum_{j != i} hbar^2/(x_i - x_j)^3.
// Phase space is complex throughout.

#include <iosfwd>
#include <vector>

#include "gaudin/poly.hpp"
#include "gaudin/symfun.hpp"
#include "gaudin/types.hpp"

namespace gaudin {

struct CMPhasePoint {
  Complex hbar;
  std::vector<Complex> x;
  std::vector<Complex> p;

  int n() const { return static_cast<int>(x.size()); }
};

struct LaxPair {
  Eigen::MatrixXcd Y;
  Eigen::MatrixXcd T;
};

/// min |x_i - x_j| below 1e-6 times the coordinate scale counts as a collision.
double collision_threshold(const CMPhasePoint& s);
/// Throws CollisionError (with `time` as last good time) if two particles collide.
void check_collision(const CMPhasePoint& s, double time = 0.0);

LaxPair lax_matrices(const CMPhasePoint& s);

struct PhaseVelocity {
  std::vector<Complex> dx;
  std::vector<Complex> dp;
};

PhaseVelocity eom_rhs(const CMPhasePoint& s);

/// H_k = tr Y^k.
Complex hamiltonian(const CMPhasePoint& s, int k);

/// Hamiltonian vector field of tr Y^k: dx_i = d tr Y^k / dp_i, dp_i = -d tr Y^k / dx_i.
PhaseVelocity flow_rhs(const CMPhasePoint& s, int k);

struct TrajectorySample {
  double time = 0.0;
  CMPhasePoint point;
  std::vector<double> drift;  ///< relative drift of tr Y^j, j = 1..n
};

struct Trajectory {
  int flow = 2;
  std::vector<TrajectorySample> samples;
  double max_drift = 0.0;
};

struct IntegrateOptions {
  int record_every = 1;
};

/// Classical RK4 under the t_k flow (k = 2 is the Calogero-Moser time).
/// Throws CollisionError carrying the last good time.
Trajectory integrate(const CMPhasePoint& s0, double t_final, double dt, int flow = 2, const IntegrateOptions& options = {});

/// Endpoint of the t_k flow after time t_k, using `steps` RK4 steps.
CMPhasePoint higher_flow(const CMPhasePoint& s0, int k, Complex t_k, int steps = 200);

/// sum over partial matchings M of {0..n-1} of prod_{(ij) in M} w_ij prod_{l unmatched} (z - a_l);
/// this is exp(sum_{i<j} w_ij d_i d_j) prod_l (z - a_l) with d_l (z - a_l) = 1.
/// Returns J_0..J_n with the polynomial equal to sum_k J_k z^{n-k}.
std::vector<Complex> matching_expansion(const std::vector<Complex>& a, const Eigen::MatrixXcd& w);

/// det(zI - Y) as J_0..J_n (J_0 = 1), by sampling on a circle and interpolating.
std::vector<Complex> char_poly_direct(const Eigen::MatrixXcd& Y);
/// exp(sum_{i<j} hbar^2 d_{p_i} d_{p_j}/(x_i - x_j)^2) prod_l (z + p_l).
std::vector<Complex> char_poly_formula(const CMPhasePoint& s);

/// |sum_{k=0}^n J_{n-k} tr Y^k| / scale, tr Y^0 = n.
double newton_check(const CMPhasePoint& s);

/// [X, Y] - hbar (I - 1 1^t) for X = diag(x).
Eigen::MatrixXcd xy_commutator(const CMPhasePoint& s);

/// max_k |1^t Y^k 1 - tr Y^k| / max(1, |tr Y^k|) for k = 0..kmax.
double ones_moment_defect(const CMPhasePoint& s, int kmax);

/// det(xI - X0 + sum_k k t_k Y0^{k-1}) times `prefactor`.
Complex tau_determinant(Complex x, const TimeVector& t, const Eigen::MatrixXcd& X0, const Eigen::MatrixXcd& Y0,
                        Complex prefactor = 1.0);
/// The matrix whose eigenvalues are the zeros of tau_determinant in x.
Eigen::MatrixXcd tau_root_matrix(const TimeVector& t, const Eigen::MatrixXcd& X0, const Eigen::MatrixXcd& Y0);

/// CSV: time, Re/Im x_i, Re/Im p_i, drift_j.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace gaudin
