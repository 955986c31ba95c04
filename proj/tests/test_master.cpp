#include <random>

#include "doctest.h"
#include "gaudin/master.hpp"
#include "oracles.hpp"

using namespace gaudin;

namespace {

Complex marked_product(Complex x, const GaudinModel& model) {
  Complex p = 1.0;
  for (auto xi : model.marked_points()) p *= x - xi;
  return p;
}

}  // namespace

TEST_CASE("rational transfer matrices") {
  auto model = random_model(2, 2, 7);
  const Complex x{0.3, 0.8};
  const auto I = identity_operator(model);
  CHECK((transfer_matrix(YoungDiagram{}, x, Normalization::Rational, model) - I).norm() < 1e-13);
  Complex s1{};
  for (auto xi : model.marked_points()) s1 += model.hbar() / (x - xi);
  CHECK((transfer_matrix(YoungDiagram{1}, x, Normalization::Rational, model) - (model.twist_power_trace(1) + s1) * I)
            .norm() < 1e-12);

  // T_(1,1) = chi_(1,1)(g0) + tr g0 sum hbar/(x-x_i) + sum_{i<j} hbar^2/((x-x_i)(x-x_j)) - sum H_i/(x-x_i)
  const auto& xs = model.marked_points();
  const Complex h = model.hbar();
  Operator expect = (character(model.twist_matrix(), YoungDiagram{1, 1}) + model.twist_power_trace(1) * s1 +
                     h * h / ((x - xs[0]) * (x - xs[1]))) *
                    I;
  for (int i = 0; i < 2; ++i) expect -= gaudin_hamiltonian(i, model) / (x - xs[i]);
  CHECK((transfer_matrix(YoungDiagram{1, 1}, x, Normalization::Rational, model) - expect).norm() < 1e-12);

  CHECK_THROWS_AS(transfer_matrix(YoungDiagram{1}, xs[1], Normalization::Rational, model), PoleError);
  const auto poly = transfer_matrix(YoungDiagram{2, 1}, x, Normalization::Polynomial, model);
  const auto rat = transfer_matrix(YoungDiagram{2, 1}, x, Normalization::Rational, model);
  CHECK((poly - marked_product(x, model) * rat).norm() < 1e-12 * poly.norm());
}

TEST_CASE("transfer matrices commute with each other and with H, M") {
  for (auto [N, n] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
    auto model = random_model(N, n, 21);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto lams = partitions_up_to(3);
    std::vector<Operator> T;
    double scale = 0.0;
    for (const auto& lam : lams) {
      T.push_back(transfer_chain(lam, model).evaluate({u(rng), u(rng)}));
      scale = std::max(scale, T.back().norm());
    }
    for (std::size_t a = 0; a < T.size(); ++a) {
      // chi_lambda vanishes identically on N x N matrices when l(lambda) > N
      if (lams[a].length() > N) {
        CHECK(T[a].norm() <= 1e-12 * scale);
        continue;
      }
      for (std::size_t b = 0; b < T.size(); ++b)
        if (lams[b].length() <= N) CHECK(commutator_norm(T[a], T[b]) <= 1e-9 * T[a].norm() * T[b].norm());
      for (int i = 0; i < n; ++i) {
        const auto H = gaudin_hamiltonian(i, model);
        CHECK(commutator_norm(T[a], H) <= 1e-9 * T[a].norm() * H.norm());
      }
      for (int c = 0; c < N; ++c) CHECK(commutator_norm(T[a], charge(c, model)) <= 1e-12 * T[a].norm());
    }
  }
}

TEST_CASE("master operator basics") {
  auto model = random_model(2, 2, 7);
  const Complex x{0.2, -0.4};
  const auto I = identity_operator(model);
  CHECK((master_t(x, TimeVector::zero(model.hbar(), 3), model) - marked_product(x, model) * I).norm() < 1e-13);

  // exp(-(1/hbar) t1 tr g0) T(x, (t1, t2, t3)) = T(x + t1, (0, t2, t3))
  const TimeVector t(model.hbar(), {0.3, 0.1, -0.05});
  const Complex t1 = 0.3;
  const Operator lhs = master_t(x, t, model) * std::exp(-t1 * model.twist_power_trace(1) / model.hbar());
  const Operator rhs = master_t(x + t1, t.with_time(1, 0.0), model);
  CHECK((lhs - rhs).norm() < 1e-12 * lhs.norm());

  // operators at different (x, t) commute
  const auto A = master_t({0.5, 0.1}, TimeVector(model.hbar(), {0.2, -0.1, 0.3}), model);
  const auto B = master_t({-0.3, 0.7}, TimeVector(model.hbar(), {-0.4, 0.05, 0.1}), model);
  CHECK(commutator_norm(A, B) < 1e-10 * A.norm() * B.norm());
}

TEST_CASE("schur expansion reproduces the master operator") {
  auto model = random_model(2, 2, 7);
  const Complex x{0.6, 0.2};
  const TimeVector t(model.hbar(), {0.15, -0.1, 0.08});
  std::function<Operator(const TimeVector&)> F = [&](const TimeVector& s) { return master_t(x, s, model); };
  for (int D = 0; D <= 4; ++D) {
    const auto taylor = oracle::taylor_part(F, t, D);
    const auto series = schur_expansion(x, t, D, model);
    CHECK((taylor - series).norm() <= 1e-9 * std::max(1.0, taylor.norm()));
  }
}

TEST_CASE("transfer matrices from time derivatives") {
  auto model = random_model(2, 3, 8);
  const Complex x{0.1, 0.5};
  CHECK((recover_transfer(YoungDiagram{}, x, model) - master_t(x, TimeVector::zero(model.hbar(), 1), model)).norm() <
        1e-13);
  for (const auto& lam : partitions_up_to(4)) {
    const auto direct = transfer_matrix(lam, x, Normalization::Polynomial, model);
    CHECK((recover_transfer(lam, x, model) - direct).norm() <= 1e-11 * std::max(1.0, direct.norm()));
  }
  // finite-difference cross check of hbar d/dt1 and (hbar^2 d1^2 - hbar d2)/2
  const Complex h = model.hbar();
  const double eps = 1e-3;
  auto T = [&](Complex a, Complex b) { return master_t(x, TimeVector(h, {a, b}), model); };
  const Operator d1 = (T(eps, 0) - T(-eps, 0)) / (2 * eps);
  const Operator d11 = (T(eps, 0) - 2.0 * T(0, 0) + T(-eps, 0)) / (eps * eps);
  const Operator d2 = (T(0, eps) - T(0, -eps)) / (2 * eps);
  const auto t1 = transfer_matrix(YoungDiagram{1}, x, Normalization::Polynomial, model);
  const auto t11 = transfer_matrix(YoungDiagram{1, 1}, x, Normalization::Polynomial, model);
  CHECK((h * d1 - t1).norm() < 1e-5 * t1.norm());
  CHECK(((h * h * d11 - h * d2) / 2.0 - t11).norm() < 1e-5 * t11.norm());
  CHECK_THROWS_AS(recover_transfer(YoungDiagram{5, 4}, x, model), TruncationError);
}

TEST_CASE("hamiltonians from the (1,1) transfer matrix") {
  for (auto [N, n] : {std::pair{2, 2}, {2, 3}, {3, 3}}) {
    auto model = random_model(N, n, 7);
    for (int i = 0; i < n; ++i) {
      const auto H = gaudin_hamiltonian(i, model);
      CHECK((extract_hamiltonian(i, model) - H).norm() <= 1e-10 * H.norm());
    }
  }
}

TEST_CASE("generating series") {
  auto model = random_model(3, 2, 5);
  const Complex x{0.25, -0.3};
  const auto plus = generating_series(x, +1, 4, model);
  const auto minus = generating_series(x, -1, 5, model);
  const auto t0 = transfer_matrix(YoungDiagram{}, x, Normalization::Polynomial, model);
  CHECK((plus[0] - t0).norm() < 1e-13);
  CHECK((minus[0] - t0).norm() < 1e-13);
  for (int s = 1; s <= 4; ++s) {
    const auto ts = recover_transfer(YoungDiagram::row(s), x, model);
    CHECK((plus[s] - ts).norm() <= 1e-11 * ts.norm());
  }
  for (int a = 1; a <= 3; ++a) {
    const auto ta = transfer_matrix(YoungDiagram::column(a), x, Normalization::Polynomial, model);
    CHECK((minus[a] - (a % 2 ? -1.0 : 1.0) * ta).norm() <= 1e-11 * std::max(1.0, ta.norm()));
  }
  CHECK(minus[4].norm() < 1e-10);
  CHECK(minus[5].norm() < 1e-10);

  // closed-form minus shift equals the truncated Schur expansion at shifted times
  // weighted truncation converges slowly along t_2, t_3; keep them small
  const TimeVector t(model.hbar(), {0.05, -0.004, 0.001});
  const Complex z{9.0, 4.0};
  const auto chain = shifted_chain(t, -1, model.N(), model);
  Operator closed = Operator::Zero(t0.rows(), t0.cols());
  for (int j = 0; j <= model.N(); ++j) closed += chain[j].evaluate(x) * std::pow(z, -j);
  const auto shifted = miwa_shift(t.extended(14), z, -1);
  const auto series = schur_expansion(x, shifted, 14, model);
  CHECK((closed - series).norm() < 1e-8 * closed.norm());
}

TEST_CASE("tau eigenvalues") {
  auto model = random_model(2, 2, 7);
  const auto spec = joint_diagonalize(model);
  const auto zero = tau_eigenvalues(TimeVector::zero(model.hbar(), 3), spec, model);
  for (const auto& rec : zero) {
    CHECK_FALSE(rec.flagged);
    auto roots = rec.roots;
    const auto match = poly::match_min_cost(roots, model.marked_points());
    for (std::size_t i = 0; i < roots.size(); ++i) CHECK(std::abs(roots[i] - model.marked_points()[match[i]]) < 1e-8);
  }
  const TimeVector t(model.hbar(), {0.1, 0.05, 0.02});
  const auto recs = tau_eigenvalues(t, spec, model);
  for (std::size_t s = 0; s < spec.states.size(); ++s) {
    CHECK_FALSE(recs[s].flagged);
    CHECK(recs[s].coefficients.size() == 3);
    const Complex x{1.7, 0.4};
    const Complex direct = oracle::tau_direct(x, t, spec.states[s].vector, model);
    const Complex fitted = recs[s].prefactor * poly::evaluate(recs[s].coefficients, x);
    CHECK(std::abs(direct - fitted) < 1e-9 * std::abs(direct));
  }
}
