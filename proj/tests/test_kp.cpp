#include <random>

#include "doctest.h"
#include "gaudin/kp.hpp"
#include "oracles.hpp"

using namespace gaudin;

namespace {

TimeVector random_times(Complex hbar, int K, double size, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-size, size);
  std::vector<Complex> t;
  for (int k = 0; k < K; ++k) t.emplace_back(u(rng), u(rng));
  return TimeVector(hbar, t);
}

}  // namespace

TEST_CASE("laurent series windows") {
  LaurentSeries a(0, {1.0, 2.0}, true);         // 1 + 2/z
  LaurentSeries b(1, {1.0, 0.5, 0.25}, false);  // z + 1/2 + 1/(4z) + ...
  const auto p = a * b;
  CHECK(p.top() == 1);
  CHECK(p.low() == -1);
  CHECK(p.coefficient(1) == Complex(1.0));
  CHECK(p.coefficient(0) == Complex(2.5));
  CHECK(p.coefficient(-1) == Complex(1.25));
  CHECK(p.coefficient(5) == Complex{});
  CHECK_THROWS_AS(p.coefficient(-2), TruncationError);
  CHECK_FALSE(p.known(-2));
  const auto q = a * a;
  CHECK(q.exact());
  CHECK(q.coefficient(-2) == Complex(4.0));
  CHECK(q.coefficient(-7) == Complex{});
  const auto s = a + b;
  CHECK(s.coefficient(0) == Complex(1.5));
  CHECK_THROWS_AS(s.coefficient(-3), TruncationError);
}

TEST_CASE("exp(xi) coefficients") {
  const TimeVector t(0.5, {0.3, -0.2});
  const auto eps = exp_xi_coefficients(t, 30);
  const Complex z{0.4, 0.7};
  Complex sum{};
  for (int j = 29; j >= 0; --j) sum = sum * z + eps[j];
  CHECK(std::abs(sum - std::exp(xi(t, z) / 0.5)) < 1e-13);
}

TEST_CASE("bilinear identity without marked points is exact") {
  GaudinModel model(2, 0, 0.7, {}, {1.1, 2.3});
  const auto spec = joint_diagonalize(model);
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 3; ++trial) {
    const auto t = random_times(model.hbar(), 2, 0.3, rng);
    const auto tp = random_times(model.hbar(), 2, 0.3, rng);
    for (const auto& r : bilinear_residues(spec, 0.4, t, tp, model)) CHECK(std::abs(r.residue) <= 1e-14 * r.scale);
  }
}

TEST_CASE("bilinear identity on a random model") {
  auto model = random_model(2, 2, 7);
  const auto spec = joint_diagonalize(model);
  std::mt19937_64 rng(3);
  double rho = 0.0;
  for (auto k : model.twist()) rho = std::max(rho, std::abs(k));
  const Complex x{0.4, 0.2};
  for (int trial = 0; trial < 3; ++trial) {
    const auto t = random_times(model.hbar(), 3, 0.1, rng);
    const auto tp = random_times(model.hbar(), 3, 0.1, rng);
    const auto res = bilinear_residues(spec, x, t, tp, model);
    BilinearOptions wide;
    wide.window = 2 * BilinearOptions{}.window;
    const auto res2 = bilinear_residues(spec, x, t, tp, model, wide);
    for (std::size_t s = 0; s < spec.states.size(); ++s) {
      CHECK(std::abs(res[s].residue) <= 1e-8 * res[s].scale);
      CHECK(std::abs(res[s].residue - res2[s].residue) <= 1e-8 * res[s].scale);
    }
    // quadrature on a circle enclosing the spectrum of g0
    if (trial == 0) {
      const auto& v = spec.states[1].vector;
      double magnitude = 0.0;
      const Complex q = oracle::bilinear_quadrature(x, t, tp, v, model, 2.0 * rho, 96, 60, &magnitude);
      CHECK(std::abs(q) <= 1e-8 * magnitude);
      // coinciding times
      const auto r = bilinear_residue(v, x, t, t, model);
      CHECK(std::abs(r.residue) <= 1e-8 * r.scale);
    }
  }
  BilinearOptions narrow;
  narrow.window = 3;
  CHECK_THROWS_AS(bilinear_residues(spec, x, TimeVector(model.hbar(), {0.1, 0.1, 0.1}),
                                    TimeVector(model.hbar(), {-0.1, 0.2, 0.0}), model, narrow),
                  TruncationError);
  narrow.window = 8;
  CHECK_THROWS_AS(bilinear_residues(spec, x, TimeVector(model.hbar(), {0.1, 0.1, 0.1}),
                                    TimeVector(model.hbar(), {-0.1, 0.2, 0.0}), model, narrow),
                  TruncationError);
}

TEST_CASE("series coefficients agree with the quadrature integrand") {
  // each Laurent coefficient of tau(x, t - hbar[1/z]) tau(x, t' + hbar[1/z]) against an FFT on |z| = R
  auto model = random_model(2, 2, 7);
  const auto spec = joint_diagonalize(model);
  const auto& v = spec.states[0].vector;
  const Complex x{0.4, 0.2};
  const TimeVector t(model.hbar(), {0.05, -0.02, 0.01});
  const TimeVector tp(model.hbar(), {-0.03, 0.04, 0.02});
  const auto minus = shifted_chain(t, -1, model.N(), model);
  const auto plus = shifted_chain(tp, +1, 40, model);
  std::vector<Complex> a, b;
  for (const auto& c : minus) a.push_back(poly::evaluate(c.expectation(v), x));
  for (const auto& c : plus) b.push_back(poly::evaluate(c.expectation(v), x));
  const auto ab = LaurentSeries(0, a, true) * LaurentSeries(0, b, false);
  const double R = 6.0;
  const int M = 64;
  for (int s = 0; s <= 4; ++s) {
    Complex fft{};
    for (int m = 0; m < M; ++m) {
      const Complex z = std::polar(R, 2 * M_PI * m / M);
      const Complex w = oracle::tau_direct(x, miwa_shift(t.extended(60), z, -1), v, model) *
                        oracle::tau_direct(x, miwa_shift(tp.extended(60), z, +1), v, model);
      fft += w * std::pow(z, s) / static_cast<double>(M);
    }
    CHECK(std::abs(fft - ab.coefficient(-s)) <= 1e-10 * std::max(1.0, std::abs(fft)));
  }
}

TEST_CASE("Baker-Akhiezer structure") {
  auto model = random_model(2, 2, 7);
  const auto spec = joint_diagonalize(model);
  const TimeVector t(model.hbar(), {0.1, 0.05, -0.03});
  const auto g0 = model.twist_matrix();
  // det(I - g0/z) = 1 - tr g0 / z + det g0 / z^2
  const std::vector<Complex> expect{1.0, -model.twist_power_trace(1), g0.determinant()};
  for (const auto& st : spec.states) {
    const auto phi = ba_coefficients(st.vector, {0.6, 0.3}, t, model, 3);
    REQUIRE(phi.size() == 6);
    CHECK(phi[0] == Complex(1.0));
    for (std::size_t j = 3; j < phi.size(); ++j) CHECK(std::abs(phi[j]) < 1e-10);
    const auto lim = ba_large_x_limit(st.vector, t, model);
    for (int j = 0; j <= 2; ++j) CHECK(std::abs(lim[j] - expect[j]) < 1e-8);
  }
  // psi against the tau quotient by direct master evaluation
  const auto& v = spec.states[2].vector;
  const Complex x{0.6, 0.3}, z{2.5, 1.0};
  const Complex psi = ba_function(v, x, t, z, model);
  const Complex direct = std::exp((x * z + xi(t, z)) / model.hbar()) *
                         oracle::tau_direct(x, miwa_shift(t.extended(80), z, -1), v, model) /
                         oracle::tau_direct(x, t, v, model);
  CHECK(std::abs(psi - direct) < 1e-9 * std::abs(direct));

  // stationary case: chain of (1 + hbar d_i/(x - x_i)) on det(zI - g0), times z^{-N} e^{xz/hbar}
  const auto zero = TimeVector::zero(model.hbar(), 1);
  const Operator st = apply_factor_chain(MatrixFunction::det_factor(z, 1), x, model) /
                      ((x - model.marked_points()[0]) * (x - model.marked_points()[1]));
  const Complex stationary = std::exp(x * z / model.hbar()) * std::pow(z, -2) * v.dot(st * v) / v.squaredNorm();
  CHECK(std::abs(ba_function(v, x, zero, z, model) - stationary) < 1e-11 * std::abs(stationary));
}

TEST_CASE("Baker-Akhiezer poles") {
  auto model = random_model(2, 2, 7);
  const auto spec = joint_diagonalize(model);
  const TimeVector t(model.hbar(), {0.0, 0.05});
  const auto recs = tau_eigenvalues(t, spec, model);
  const auto& v = spec.states[0].vector;
  CHECK_THROWS_AS(ba_function(v, recs[0].roots[0], t, {2.0, 0.5}, model), PoleError);
  // n zeros and n poles in x: psi e^{-xz/hbar} is a ratio of degree-n polynomials
  const auto chain = shifted_chain(t, -1, model.N(), model);
  const Complex z{2.0, 0.5};
  poly::Poly num(3, Complex{});
  for (int j = 0; j <= model.N(); ++j) {
    const auto p = chain[j].expectation(v);
    for (std::size_t m = 0; m < p.size(); ++m) num[m] += p[m] * std::pow(z, -j);
  }
  CHECK(std::abs(num[2]) > 1e-6);
  const Complex x{0.9, -0.2};
  const Complex ratio = poly::evaluate(num, x) / poly::evaluate(chain[0].expectation(v), x);
  CHECK(std::abs(ba_function(v, x, t, z, model) * std::exp(-(x * z + xi(t, z)) / model.hbar()) - ratio) <
        1e-10 * std::abs(ratio));
}

TEST_CASE("linear problem") {
  GaudinModel free(2, 0, 0.6, {}, {1.1, 2.3});
  const auto spec0 = joint_diagonalize(free);
  const TimeVector t0(0.6, {0.1, 0.05});
  auto r0 = linear_problem_residual(spec0.states[0].vector, 0.3, t0, {1.2, 0.4}, 1e-3, free);
  CHECK(r0.u == Complex{});
  CHECK(r0.residual < 1e-6);

  auto model = random_model(2, 2, 7);
  const auto spec = joint_diagonalize(model);
  const TimeVector t(model.hbar(), {0.1, 0.05, -0.03});
  const Complex x{0.6, 0.7}, z{1.5, 0.5};
  for (const auto& st : spec.states) {
    std::vector<double> steps, res;
    for (double h = 0.04; h > 0.004; h /= 2) {
      steps.push_back(h);
      res.push_back(linear_problem_residual(st.vector, x, t, z, h, model).residual);
    }
    const double order = observed_order(steps, res);
    CHECK(order >= 1.8);
    CHECK(order <= 2.2);
  }
  // u = -sum hbar^2/(x - x_i(t))^2 for polynomial tau
  const auto recs = tau_eigenvalues(t, spec, model);
  for (std::size_t s = 0; s < spec.states.size(); ++s) {
    Complex u{};
    for (auto r : recs[s].roots) u -= model.hbar() * model.hbar() / ((x - r) * (x - r));
    CHECK(std::abs(kp_potential(spec.states[s].vector, x, t, model) - u) < 1e-9 * std::abs(u));
  }
}

TEST_CASE("bilinear residue detects mixed eigenvalues") {
  // pairing the minus shift of one state with the plus shift of another breaks the identity
  auto model = random_model(2, 2, 7);
  const auto spec = joint_diagonalize(model);
  const Complex x{0.4, 0.2};
  const TimeVector t(model.hbar(), {0.05, 0.1, -0.02});
  const TimeVector tp(model.hbar(), {-0.05, 0.03, 0.04});
  const auto minus = shifted_chain(t, -1, model.N(), model);
  const auto plus = shifted_chain(tp, +1, 64, model);
  std::vector<Complex> a, b;
  for (const auto& c : minus) a.push_back(poly::evaluate(c.expectation(spec.states[1].vector), x));
  for (const auto& c : plus) b.push_back(poly::evaluate(c.expectation(spec.states[2].vector), x));
  const auto ab = LaurentSeries(0, a, true) * LaurentSeries(0, b, false);
  const auto eps = exp_xi_coefficients(t - tp, 64);
  Complex residue{};
  double scale = 0.0;
  for (int j = 0; j < 64; ++j) {
    residue += eps[j] * ab.coefficient(-1 - j);
    scale += std::abs(eps[j] * ab.coefficient(-1 - j));
  }
  CHECK(std::abs(residue) > 1e-4 * scale);
}
