#pragma once

// Operators on V = (C^N)^{(x)n}. Basis vectors are words (a_1..a_n) of
// letters 0..N-1; slot 0 is the most significant digit, so slot embeddings
// agree with I^{(x)(i)} (x) g (x) I^{(x)(n-i-1)}. Slots and letters are 0-based.

#include <cstdint>
#include <span>
#include <vector>

#include "gaudin/types.hpp"

namespace gaudin {

class GaudinModel {
 public:
  /// Validates: N >= 2, n >= 0, hbar != 0, x_i distinct, k_a distinct and
  /// nonzero. `tolerance` is the relative residual budget used downstream.
  GaudinModel(int N, int n, Complex hbar, std::vector<Complex> marked_points, std::vector<Complex> twist,
              double tolerance = 1e-9);

  int N() const { return N_; }
  int n() const { return n_; }
  Complex hbar() const { return hbar_; }
  const std::vector<Complex>& marked_points() const { return x_; }
  const std::vector<Complex>& twist() const { return k_; }
  double tolerance() const { return tolerance_; }

  std::size_t dimension() const { return dimension_; }
  Eigen::MatrixXcd twist_matrix() const;
  /// tr g0^k = sum_a k_a^k
  Complex twist_power_trace(int k) const;

  std::vector<int> letters(std::size_t index) const;
  std::size_t index_of(std::span<const int> letters) const;
  /// Letter counts (m_0..m_{N-1}) of a basis word.
  std::vector<int> content(std::size_t index) const;

 private:
  int N_;
  int n_;
  Complex hbar_;
  std::vector<Complex> x_;
  std::vector<Complex> k_;
  double tolerance_;
  std::size_t dimension_;
};

/// Seeded random model: real x_i near 0..n-1, real distinct k_a in
/// [0.5, 0.5 + 0.6 N], hbar in [0.5, 1].
GaudinModel random_model(int N, int n, std::uint64_t seed);

Operator identity_operator(const GaudinModel& model);
/// g^{(slot)}
Operator slot_embed(const Eigen::MatrixXcd& g, int slot, const GaudinModel& model);
/// e_ab^{(slot)}
Operator elementary_in_slot(int a, int b, int slot, const GaudinModel& model);
/// P_ij, swaps tensor factors i and j.
Operator permutation(int i, int j, const GaudinModel& model);
/// H_i = hbar g0^{(i)} + hbar^2 sum_{j != i} P_ij / (x_i - x_j)
Operator gaudin_hamiltonian(int i, const GaudinModel& model);
/// M_a = sum_l e_aa^{(l)}
Operator charge(int a, const GaudinModel& model);

/// All contents (m_0..m_{N-1}) with sum n, in lexicographically decreasing order.
std::vector<std::vector<int>> sectors(const GaudinModel& model);
/// Basis indices of V({m_a}), ascending.
std::vector<std::size_t> sector_basis(std::span<const int> m, const GaudinModel& model);
/// n! / prod m_a!
std::size_t multinomial(std::span<const int> m);

struct JointState {
  StateVector vector;        ///< unit vector in the full space
  std::vector<Complex> H;    ///< eigenvalues of H_0..H_{n-1}
  std::vector<int> m;        ///< sector content
  int multiplicity = 1;      ///< dimension of the joint eigenspace
  double residual = 0.0;     ///< max_i |H_i v - h_i v| / scale
};

struct JointSpectrum {
  std::vector<JointState> states;
};

struct DiagonalizeOptions {
  std::uint64_t seed = 20131001;
  int max_retries = 8;
};

/// Per sector: diagonalises a random real combination of the H_i, reads
/// each H_i eigenvalue by Rayleigh quotient and checks residuals against
/// the model tolerance. Joint eigenspaces of dimension > 1 are reported
/// once with their multiplicity.
JointSpectrum joint_diagonalize(const GaudinModel& model, const DiagonalizeOptions& options = {});

}  // namespace gaudin
