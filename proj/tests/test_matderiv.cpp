#include <random>

#include "doctest.h"
#include "gaudin/matderiv.hpp"
#include "oracles.hpp"

using namespace gaudin;

namespace {

Eigen::MatrixXcd random_matrix(int N, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 0.5);
  Eigen::MatrixXcd g(N, N);
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c) g(r, c) = Complex(nd(rng), nd(rng));
  g += Eigen::MatrixXcd::Identity(N, N);
  return g;
}

Eigen::MatrixXcd power(const Eigen::MatrixXcd& g, int k) {
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(g.rows(), g.cols());
  for (int i = 0; i < k; ++i) p = p * g;
  return p;
}

}  // namespace

TEST_CASE("jets") {
  Jet a = Jet::variable(2, 0, 2.0);
  Jet b = Jet::variable(2, 1, 3.0);
  Jet p = a * b;
  CHECK(p[0] == Complex(6.0));
  CHECK(p[1] == Complex(3.0));
  CHECK(p[2] == Complex(2.0));
  CHECK(p[3] == Complex(1.0));
  CHECK((a * a)[3] == Complex{});
  Jet r = p * p.reciprocal();
  CHECK(std::abs(r[0] - 1.0) < 1e-15);
  for (std::size_t m = 1; m < 4; ++m) CHECK(std::abs(r[m]) < 1e-15);
  Jet e = exp(a);
  CHECK(std::abs(e[0] - std::exp(2.0)) < 1e-13);
  CHECK(std::abs(e[1] - std::exp(2.0)) < 1e-13);
  CHECK_THROWS_AS(Jet(1, 0.0).reciprocal(), PoleError);
}

TEST_CASE("matrix derivative closed forms") {
  std::mt19937_64 rng(3);
  const auto g = random_matrix(3, rng);
  for (int k = 1; k <= 4; ++k) {
    auto d = matrix_derivative(MatrixFunction::power_trace(k), g);
    CHECK((d - static_cast<double>(k) * power(g, k - 1)).norm() < 1e-12 * std::max(1.0, d.norm()));
    auto dd = matrix_derivative(MatrixFunction::power_trace(1, k), g);
    const Complex tr = g.trace();
    Eigen::MatrixXcd expect = static_cast<double>(k) * std::pow(tr, k - 1) * Eigen::MatrixXcd::Identity(3, 3);
    CHECK((dd - expect).norm() < 1e-12 * std::max(1.0, dd.norm()));
  }
}

TEST_CASE("d g^k = P sum g^i (x) g^{k-i-1}") {
  // entries of g^k are linear in the jet perturbation; (a,b),(c,d) component
  // of d g^k is d(g^k)_{cd}/dg_{ba}
  std::mt19937_64 rng(4);
  const int N = 2, k = 3;
  const auto g = random_matrix(N, rng);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      SquareMatrix<Jet> m(N, Jet(1, 0.0));
      for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c) m(r, c) = Jet(1, g(r, c));
      m(b, a) += Jet::variable(1, 0);
      auto p = m;
      for (int i = 1; i < k; ++i) p = p * m;
      for (int c = 0; c < N; ++c)
        for (int d = 0; d < N; ++d) {
          // P sum_i g^i (x) g^{k-i-1}: (e_ab (x) e_cd) coefficient is sum_i (g^i)_{cb} (g^{k-i-1})_{ad}
          Complex expect{};
          for (int i = 0; i < k; ++i) expect += power(g, i)(c, b) * power(g, k - i - 1)(a, d);
          CHECK(std::abs(p(c, d)[1] - expect) < 1e-12);
        }
    }
}

TEST_CASE("jet partials match finite differences") {
  std::mt19937_64 rng(5);
  const auto g = random_matrix(3, rng);
  const TimeVector t(0.8, {0.3, -0.2, 0.15});
  std::vector<MatrixFunction> fs{MatrixFunction::exp_times(t), MatrixFunction::character(YoungDiagram{2, 1}),
                                 MatrixFunction::det_factor({4.0, 1.0}, -1) * MatrixFunction::exp_times(t),
                                 MatrixFunction::det_factor(0.5, 1)};
  for (const auto& f : fs) {
    auto F = [&](const Eigen::MatrixXcd& m) { return f.evaluate(m); };
    for (int trial = 0; trial < 6; ++trial) {
      const int a = rng() % 3, b = rng() % 3, c = rng() % 3, d = rng() % 3;
      // first partial
      SquareMatrix<Jet> m1(3, Jet(1, 0.0));
      SquareMatrix<Jet> m2(3, Jet(2, 0.0));
      for (int r = 0; r < 3; ++r)
        for (int s = 0; s < 3; ++s) {
          m1(r, s) = Jet(1, g(r, s));
          m2(r, s) = Jet(2, g(r, s));
        }
      m1(a, b) += Jet::variable(1, 0);
      m2(a, b) += Jet::variable(2, 0);
      m2(c, d) += Jet::variable(2, 1);
      const Complex j1 = f.evaluate(m1, Jet(1, 1.0))[1];
      const Complex j2 = f.evaluate(m2, Jet(2, 1.0))[3];
      const Complex f1 = oracle::mixed_partial(F, g, {a, b});
      const Complex f2 = oracle::mixed_partial(F, g, {a, b}, {c, d});
      CHECK(std::abs(j1 - f1) <= 1e-6 * std::max(1.0, std::abs(f1)));
      CHECK(std::abs(j2 - f2) <= 1e-6 * std::max(1.0, std::abs(f2)));
    }
  }
}

TEST_CASE("Leibniz rule") {
  std::mt19937_64 rng(6);
  const auto g = random_matrix(3, rng);
  const auto f = MatrixFunction::character(YoungDiagram{2});
  const auto h = MatrixFunction::exp_times(TimeVector(1.3, {0.2, 0.1}));
  const Eigen::MatrixXcd lhs = matrix_derivative(f * h, g);
  const Eigen::MatrixXcd rhs = matrix_derivative(f, g) * h.evaluate(g) + f.evaluate(g) * matrix_derivative(h, g);
  CHECK((lhs - rhs).norm() < 1e-12 * lhs.norm());
}

TEST_CASE("iterated derivatives") {
  GaudinModel model(2, 2, 0.6, {0.0, 1.0}, {1.2, 2.1});
  const auto g = model.twist_matrix();
  const int none[] = {0};
  const auto f = MatrixFunction::exp_times(TimeVector(0.6, {0.4}));
  const Complex fval = f.evaluate(g);
  auto s0 = iterated_derivative(f, std::span<const int>(none, 0), g, model);
  CHECK((s0 - fval * identity_operator(model)).norm() < 1e-12);
  const int one[] = {1};
  auto d1 = iterated_derivative(MatrixFunction::power_trace(1), one, g, model);
  CHECK((d1 - identity_operator(model)).norm() < 1e-14);
  const int both[] = {0, 1};
  auto d2 = iterated_derivative(f, both, g, model);
  CHECK((d2 - (0.4 / 0.6) * (0.4 / 0.6) * fval * identity_operator(model)).norm() < 1e-12);
  const int rep[] = {1, 1};
  CHECK_THROWS_AS(iterated_derivative(f, rep, g, model), std::invalid_argument);
}

TEST_CASE("factor chain") {
  GaudinModel empty(2, 0, 0.7, {}, {1.1, 2.3});
  const auto lam = YoungDiagram{2, 1};
  auto t0 = apply_factor_chain(MatrixFunction::character(lam), 0.3, empty);
  CHECK(std::abs(t0(0, 0) - character(empty.twist_matrix(), lam)) < 1e-13);

  auto model = random_model(2, 3, 9);
  const Complex x{0.4, 0.3};
  Complex prod = 1.0, sum{};
  for (auto xi : model.marked_points()) {
    prod *= x - xi;
    sum += model.hbar() / (x - xi);
  }
  auto t_empty = apply_factor_chain(MatrixFunction(), x, model);
  CHECK((t_empty - prod * identity_operator(model)).norm() < 1e-12);
  auto t1 = apply_factor_chain(MatrixFunction::character(YoungDiagram{1}), x, model);
  CHECK((t1 - (model.twist_power_trace(1) + sum) * prod * identity_operator(model)).norm() < 1e-12);

  // ordered product of operators (x - x_i + hbar d_i) equals the unordered subset sum
  ChainOptions reversed;
  reversed.slot_order = {2, 1, 0};
  const auto f = MatrixFunction::character(YoungDiagram{2, 1}) * MatrixFunction::exp_times(TimeVector(model.hbar(), {0.1, 0.2}));
  auto a = apply_factor_chain(f, x, model);
  auto b = apply_factor_chain(f, x, model, reversed);
  CHECK((a - b).norm() <= 1e-14 * a.norm());
  ChainOptions unrestricted;
  unrestricted.restrict_to_sectors = false;
  CHECK((apply_factor_chain(f, x, model, unrestricted) - a).norm() <= 1e-13 * a.norm());
}

TEST_CASE("subset expansion agrees with iterated derivatives") {
  auto model = random_model(2, 2, 4);
  const auto f = MatrixFunction::character(YoungDiagram{2, 1});
  const auto chain = expand_chain(model, f);
  const auto g = model.twist_matrix();
  const Complex h = model.hbar();
  const int s1[] = {0}, s2[] = {1}, s12[] = {0, 1};
  CHECK((chain.subset_operator(1) - h * iterated_derivative(f, s1, g, model)).norm() < 1e-12);
  CHECK((chain.subset_operator(2) - h * iterated_derivative(f, s2, g, model)).norm() < 1e-12);
  CHECK((chain.subset_operator(3) - h * h * iterated_derivative(f, s12, g, model)).norm() < 1e-12);
}
