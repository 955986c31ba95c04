#include <cmath>

#include "doctest.h"
#include "gaudin/symfun.hpp"

using namespace gaudin;

namespace {

PowerSums<Complex> diag_power_sums(const std::vector<Complex>& p, int order) {
  std::vector<Complex> y;
  for (int k = 1; k <= order; ++k) {
    Complex s{};
    for (auto v : p) s += std::pow(v, k);
    y.push_back(s / static_cast<double>(k));
  }
  return PowerSums<Complex>(y);
}

// det(p_j^{lambda_i + N - i}) / det(p_j^{N - i}), N <= 3
Complex bialternant(const std::vector<Complex>& p, const YoungDiagram& lam) {
  const int N = static_cast<int>(p.size());
  if (lam.length() > N) return 0.0;
  Eigen::MatrixXcd num(N, N), den(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const int li = i < lam.length() ? lam[i] : 0;
      num(i, j) = std::pow(p[j], li + N - 1 - i);
      den(i, j) = std::pow(p[j], N - 1 - i);
    }
  return num.determinant() / den.determinant();
}

}  // namespace

TEST_CASE("young diagrams are canonical") {
  YoungDiagram a{1, 0, 3, 2};
  CHECK(a.parts() == std::vector<int>{3, 2, 1});
  CHECK(a.weight() == 6);
  CHECK(a.length() == 3);
  CHECK(a.to_string() == "(3,2,1)");
  CHECK(YoungDiagram{}.empty());
  CHECK_THROWS_AS(YoungDiagram({1, -1}), std::invalid_argument);
  CHECK(partitions(4).size() == 5);
  CHECK(partitions_up_to(4).size() == 1 + 1 + 2 + 3 + 5);
}

TEST_CASE("complete homogeneous") {
  PowerSums<Complex> y({0.3, -1.2});
  CHECK(complete_homogeneous(y, -1) == Complex{});
  CHECK(complete_homogeneous(y, 0) == Complex(1.0));
  CHECK(std::abs(complete_homogeneous(y, 2) - (0.3 * 0.3 / 2 - 1.2)) < 1e-15);
}

TEST_CASE("series inverse identity h(y) h(-y) = 1") {
  PowerSums<Complex> y({{0.4, 0.1}, {-0.7, 0.2}, {0.3, 0.0}, {1.1, -0.5}, {0.2, 0.2}, {-0.3, 0.1}, {0.5, 0.0}, {0.1, 0.9}});
  std::vector<Complex> neg;
  for (auto v : y.values()) neg.push_back(-v);
  const auto h = complete_homogeneous_all(y, 8);
  const auto hn = complete_homogeneous_all(PowerSums<Complex>(neg), 8);
  for (int k = 0; k <= 8; ++k) {
    Complex s{};
    for (int j = 0; j <= k; ++j) s += h[j] * hn[k - j];
    CHECK(std::abs(s - (k == 0 ? 1.0 : 0.0)) < 1e-13);
  }
}

TEST_CASE("schur values") {
  PowerSums<Complex> y({0.7, -0.4, 0.25});
  CHECK(schur(y, YoungDiagram{}) == Complex(1.0));
  CHECK(std::abs(schur(y, YoungDiagram{1}) - 0.7) < 1e-15);
  const std::vector<Complex> p{1.3, -0.6};
  CHECK(std::abs(schur(diag_power_sums(p, 2), YoungDiagram{1, 1}) - p[0] * p[1]) < 1e-14);
  CHECK_THROWS_AS(schur(PowerSums<Complex>({1.0}), YoungDiagram{1, 1}), TruncationError);
}

TEST_CASE("schur matches the bialternant formula") {
  const std::vector<std::vector<Complex>> pts{{1.3, -0.6}, {0.7, {0.2, 0.5}, 1.9}, {2.0}};
  for (const auto& p : pts)
    for (const auto& lam : partitions_up_to(4)) {
      const Complex s = schur(diag_power_sums(p, 4), lam);
      const Complex b = bialternant(p, lam);
      CHECK(std::abs(s - b) <= 1e-12 * std::max(1.0, std::abs(b)));
    }
}

TEST_CASE("characters") {
  Eigen::MatrixXcd g(2, 2);
  g << 1.0, 2.0, -0.5, 3.0;
  CHECK(std::abs(character(g, YoungDiagram{1}) - g.trace()) < 1e-14);
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 3.0;
  CHECK(std::abs(character(d, YoungDiagram{1, 1, 1})) < 1e-13);
  CHECK(std::abs(character(d, YoungDiagram{2}) - (4.0 + 6.0 + 9.0)) < 1e-13);
}

TEST_CASE("time vectors, Miwa shifts and xi") {
  const int K = 5;
  auto s = miwa_shift(TimeVector::zero(1.0, K), 1.0, 1);
  for (int k = 1; k <= K; ++k) CHECK(std::abs(s.time(k) - 1.0 / k) < 1e-15);
  TimeVector t(0.7, {0.3, -0.2, 0.1});
  auto back = miwa_shift(miwa_shift(t, {1.5, 0.5}, 1), {1.5, 0.5}, -1);
  for (int k = 1; k <= 3; ++k) CHECK(std::abs(back.time(k) - t.time(k)) < 1e-15);
  auto m = miwa_shift(TimeVector(1.0, {0.25, 0.0}), 2.0, -1);
  CHECK(std::abs(m.time(1) - (0.25 - 0.5)) < 1e-15);
  CHECK(std::abs(m.time(2) + 1.0 / 8.0) < 1e-15);
  CHECK(xi(TimeVector::zero(1.0, 3), 2.0) == Complex{});
  CHECK(xi(TimeVector(1.0, {1.0, 0.0, 0.0}), 3.0) == Complex(3.0));
  CHECK(xi(TimeVector(1.0, {1.0, 2.0}), 2.0) == Complex(10.0));
  CHECK_THROWS_AS(TimeVector(1.0, {}), std::invalid_argument);
  CHECK(t.time(7) == Complex{});
}

TEST_CASE("Cauchy-Littlewood at finite degree") {
  // sum_{|lambda| <= D} chi_lambda(g) s_lambda(t/hbar) against the
  // weighted-degree <= D part of exp((1/hbar) sum t_k tr g^k), computed by
  // a contour transform in the scaling t_k -> s^k t_k
  const std::vector<Complex> k{0.8, 1.7, -0.4};
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(3, 3);
  for (int a = 0; a < 3; ++a) g(a, a) = k[a];
  const TimeVector t(0.6, {0.2, -0.15, 0.05});
  auto f = [&](Complex s) {
    Complex arg{};
    for (int j = 1; j <= 3; ++j) arg += std::pow(s, j) * t.time(j) * (g.diagonal().array().pow(j)).sum();
    return std::exp(arg / t.hbar());
  };
  const int M = 64;
  for (int D = 0; D <= 6; ++D) {
    Complex taylor{};
    for (int m = 0; m < M; ++m) {
      const Complex s = std::polar(1.0, 2 * M_PI * m / M);
      Complex window{};
      for (int d = 0; d <= D; ++d) window += std::pow(s, -d);
      taylor += f(s) * window / static_cast<double>(M);
    }
    const auto y = scaled_times(t.extended(6));
    Complex sum{};
    for (const auto& lam : partitions_up_to(D)) sum += character(g, lam) * schur(y, lam);
    CHECK(std::abs(sum - taylor) < 1e-11 * std::max(1.0, std::abs(taylor)));
  }
}

TEST_CASE("power-sum polynomial expansion of schur functions") {
  PowerSums<Complex> y({0.3, -0.8, 0.45, 0.1});
  for (const auto& lam : partitions_up_to(4)) {
    const Complex direct = lam.empty() ? Complex(1.0) : schur(y, lam);
    CHECK(std::abs(schur_polynomial(lam).evaluate(y) - direct) < 1e-13);
  }
}
