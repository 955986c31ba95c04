#pragma once

// Gaudin transfer matrices T_lambda(x) and the master T-operator
//   T(x, t) = (x - x_n + hbar d_n) .. (x - x_1 + hbar d_1) exp((1/hbar) sum_k t_k tr g^k) |_{g = g0}.

#include <vector>

#include "gaudin/hilbert.hpp"
#include "gaudin/matderiv.hpp"
#include "gaudin/poly.hpp"
#include "gaudin/symfun.hpp"

namespace gaudin {

enum class Normalization {
  Rational,    ///< T_lambda(x) / prod (x - x_i); identity for the empty diagram
  Polynomial,  ///< degree n in x
};

/// Subset expansion of the chain applied to chi_lambda; evaluate() gives the polynomial form.
ChainExpansion transfer_chain(const YoungDiagram& lam, const GaudinModel& model);

/// Throws PoleError at a marked point in rational normalization.
Operator transfer_matrix(const YoungDiagram& lam, Complex x, Normalization normalization, const GaudinModel& model);

ChainExpansion master_chain(const TimeVector& t, const GaudinModel& model);
Operator master_t(Complex x, const TimeVector& t, const GaudinModel& model);

/// exp((1/hbar) sum_k t_k tr g0^k)
Complex exp_prefactor(const TimeVector& t, const GaudinModel& model);

/// s_lambda(hbar d~) T(x, t)|_{t=0} with d~_k = (1/k) d/dt_k, polynomial normalization.
/// Every t-derivative is taken exactly: d^a/dt^a of the exponential at t = 0
/// is prod_k (tr g^k / hbar)^{a_k}.
Operator recover_transfer(const YoungDiagram& lam, Complex x, const GaudinModel& model, int budget = 8);

/// sum_{|lambda| <= max_weight} T_lambda(x) s_lambda(t/hbar), polynomial normalization.
Operator schur_expansion(Complex x, const TimeVector& t, int max_weight, const GaudinModel& model);

/// Coefficients c_j (j = 0..depth) of z^{-j} in T(x, t + sign hbar [z^{-1}]):
/// sign = +1 gives h_j(g) E_t, sign = -1 gives (-1)^j e_j(g) E_t, with
/// E_t = exp((1/hbar) sum t_k tr g^k) under the chain. At t = 0 these are
/// T_(j) and (-1)^j T_(1^j).
std::vector<ChainExpansion> shifted_chain(const TimeVector& t, int sign, int depth, const GaudinModel& model);
std::vector<Operator> generating_series(Complex x, int sign, int depth, const GaudinModel& model);

/// H_i read off the residue of the rational T_(1,1) at x = x_i, where
/// T_(1,1) is itself recovered from time derivatives of the master operator.
Operator extract_hamiltonian(int i, const GaudinModel& model);

struct TauRecord {
  poly::Poly coefficients;       ///< tau(x, t) / prefactor, ascending in x
  std::vector<Complex> roots;    ///< x_k(t)
  double fit_residual = 0.0;     ///< |c_{n+1}| and |c_n - 1| of the n+2 point fit
  Complex prefactor;             ///< exp((1/hbar) sum t_k tr g0^k)
  bool flagged = false;          ///< fit residual above the model tolerance
};

/// Eigenvalue of T(x, t) on each state, read at n+2 points on a circle,
/// stripped of the prefactor, fitted and factored.
std::vector<TauRecord> tau_eigenvalues(const TimeVector& t, const JointSpectrum& spectrum, const GaudinModel& model);
TauRecord tau_eigenvalue(const ChainExpansion& chain, Complex prefactor, const StateVector& v,
                         const GaudinModel& model);

}  // namespace gaudin
