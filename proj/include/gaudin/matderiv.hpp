#pragma once

// Matrix derivative d f(g) = sum_ab e_ab (x) d/de f(g + e e_ba)|_{e=0} and
// its iterates d_{i_k} .. d_{i_1} f, evaluated exactly with squarefree jets.
//
// The factor chain (x - x_n + hbar d_n) .. (x - x_1 + hbar d_1) f(g0) expands
// over subsets S of slots as
//   sum_S prod_{i not in S} (x - x_i) hbar^{|S|} d_S f(g0),
// and the matrix element <alpha| d_S f |beta> is the coefficient of
// prod_{i in S} e_i in f(g0 + sum_i e_i e_{beta_i alpha_i}), restricted to
// words with alpha_i = beta_i off S.

#include <functional>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "gaudin/hilbert.hpp"
#include "gaudin/jet.hpp"
#include "gaudin/poly.hpp"
#include "gaudin/ring.hpp"
#include "gaudin/symfun.hpp"

namespace gaudin {

/// Scalar class function of an N x N matrix: a constant times a product of
/// characters, power traces, exp((1/hbar) sum t_k tr g^k) and det(zI - g)^{+-1}.
class MatrixFunction {
 public:
  struct Character {
    YoungDiagram lam;
  };
  struct ExpTimes {
    TimeVector t;
  };
  struct DetFactor {
    Complex z;
    int exponent;
  };
  /// (tr g^k)^power
  struct PowerTrace {
    int k;
    int power;
  };
  using Factor = std::variant<Character, ExpTimes, DetFactor, PowerTrace>;

  MatrixFunction() = default;
  static MatrixFunction constant(Complex c);
  static MatrixFunction character(YoungDiagram lam);
  static MatrixFunction exp_times(TimeVector t);
  static MatrixFunction det_factor(Complex z, int exponent);
  static MatrixFunction power_trace(int k, int power = 1);

  MatrixFunction& operator*=(const MatrixFunction& o);
  MatrixFunction& operator*=(Complex s);
  friend MatrixFunction operator*(MatrixFunction a, const MatrixFunction& b) { return a *= b; }
  friend MatrixFunction operator*(MatrixFunction a, Complex s) { return a *= s; }

  const std::vector<Factor>& factors() const { return factors_; }
  Complex scale() const { return scale_; }
  /// Highest power trace tr g^k any factor needs.
  int trace_order(int N) const;

  template <class R>
  R evaluate(const SquareMatrix<R>& g, const R& one) const;
  Complex evaluate(const Eigen::MatrixXcd& g) const;

 private:
  Complex scale_ = 1.0;
  std::vector<Factor> factors_;
};

/// Function returning several jets at once; used for whole generating series.
using JetFunction = std::function<std::vector<Jet>(const SquareMatrix<Jet>&)>;

/// d f(g): (a,b) entry is df/dg_{ba}.
Eigen::MatrixXcd matrix_derivative(const MatrixFunction& f, const Eigen::MatrixXcd& g);

/// d_{s_k} .. d_{s_1} f(g) as an operator on V (identity off the slots).
Operator iterated_derivative(const MatrixFunction& f, std::span<const int> slots, const Eigen::MatrixXcd& g,
                             const GaudinModel& model);

/// Sparse store of the subset expansion of the factor chain: for every pair
/// of same-content basis words, the 2^n coefficients hbar^|S| d_S f(g0).
class ChainExpansion {
 public:
  struct Layout {
    int n = 0;
    std::size_t dimension = 0;
    std::vector<Complex> marked_points;
    std::vector<std::size_t> rows, cols;
  };

  ChainExpansion(std::shared_ptr<const Layout> layout, std::vector<Complex> coefficients);

  /// Polynomial-normalisation value at spectral parameter x.
  Operator evaluate(Complex x) const;
  /// sum_S hbar^|S| d_S f(g0) for a single subset mask S.
  Operator subset_operator(unsigned mask) const;
  /// <v|T(x)|v>/<v|v> as polynomial coefficients in x (degree <= n).
  poly::Poly expectation(const StateVector& v) const;

 private:
  std::shared_ptr<const Layout> layout_;
  std::vector<Complex> coeff_;  // pair-major, 2^n per pair
};

struct ChainOptions {
  /// Slot order for the jet variables (default 0..n-1); results must not depend on it.
  std::vector<int> slot_order;
  /// Skip basis pairs whose contents differ (they vanish for class functions).
  bool restrict_to_sectors = true;
};

std::vector<ChainExpansion> expand_chain(const GaudinModel& model, const JetFunction& f, int outputs,
                                         const ChainOptions& options = {});
ChainExpansion expand_chain(const GaudinModel& model, const MatrixFunction& f, const ChainOptions& options = {});

/// (x - x_n + hbar d_n) .. (x - x_1 + hbar d_1) f(g) at g = g0.
Operator apply_factor_chain(const MatrixFunction& f, Complex x, const GaudinModel& model,
                            const ChainOptions& options = {});

// ---------------------------------------------------------------------------

template <class R>
R MatrixFunction::evaluate(const SquareMatrix<R>& g, const R& one) const {
  const int N = g.size();
  const auto traces = power_traces(g, trace_order(N));
  R result = one * scale_;
  for (const auto& factor : factors_) {
    std::visit(
        [&](const auto& f) {
          using F = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<F, Character>) {
            if (!f.lam.empty()) {
              std::vector<R> tr(traces.begin(), traces.begin() + f.lam.jacobi_trudi_order());
              result = result * schur(power_sums_from_traces(tr), f.lam, one);
            }
          } else if constexpr (std::is_same_v<F, ExpTimes>) {
            R arg = zero_like(one);
            for (int k = 1; k <= f.t.order(); ++k) arg += traces[k - 1] * f.t.time(k);
            result = result * exp(arg * (1.0 / f.t.hbar()));
          } else if constexpr (std::is_same_v<F, DetFactor>) {
            std::vector<R> tr(traces.begin(), traces.begin() + N);
            const auto e = elementary_all(power_sums_from_traces(tr), N, one);
            // det(zI - g) = sum_m (-1)^{N-m} e_{N-m} z^m, by Horner from m = N
            R det = zero_like(one);
            for (int m = N; m >= 0; --m) {
              det = det * f.z;
              det += ((N - m) % 2 ? e[N - m] * (-1.0) : e[N - m]);
            }
            result = result * (f.exponent == 1 ? det : reciprocal(det));
          } else {
            R p = one;
            for (int i = 0; i < f.power; ++i) p = p * traces[f.k - 1];
            result = result * p;
          }
        },
        factor);
  }
  return result;
}

}  // namespace gaudin
