#include "gaudin/cm.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>

namespace gaudin {

double collision_threshold(const CMPhasePoint& s) {
  double scale = 1.0;
  for (const auto& x : s.x) scale = std::max(scale, std::abs(x));
  return 1e-6 * scale;
}

void check_collision(const CMPhasePoint& s, double time) {
  const double thr = collision_threshold(s);
  for (int i = 0; i < s.n(); ++i)
    for (int j = i + 1; j < s.n(); ++j)
      if (std::abs(s.x[i] - s.x[j]) < thr)
        throw CollisionError("particles " + std::to_string(i) + " and " + std::to_string(j) + " collide (distance " +
                                 std::to_string(std::abs(s.x[i] - s.x[j])) + ")",
                             time);
}

namespace {

void validate(const CMPhasePoint& s) {
  if (s.x.size() != s.p.size()) throw std::invalid_argument("CMPhasePoint: x and p differ in length");
}

Eigen::MatrixXcd lax_y(const CMPhasePoint& s) {
  const int n = s.n();
  Eigen::MatrixXcd Y(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) Y(i, k) = i == k ? -s.p[i] : -s.hbar / (s.x[i] - s.x[k]);
  return Y;
}

}  // namespace

LaxPair lax_matrices(const CMPhasePoint& s) {
  validate(s);
  check_collision(s);
  const int n = s.n();
  LaxPair L{lax_y(s), Eigen::MatrixXcd::Zero(n, n)};
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (i == k) continue;
      const Complex w = 2.0 * s.hbar / ((s.x[i] - s.x[k]) * (s.x[i] - s.x[k]));
      L.T(i, k) = w;
      L.T(i, i) -= w;
    }
  return L;
}

PhaseVelocity eom_rhs(const CMPhasePoint& s) {
  validate(s);
  check_collision(s);
  const int n = s.n();
  PhaseVelocity v{std::vector<Complex>(n), std::vector<Complex>(n)};
  const Complex h2 = s.hbar * s.hbar;
  for (int i = 0; i < n; ++i) {
    v.dx[i] = 2.0 * s.p[i];
    for (int j = 0; j < n; ++j)
      if (j != i) v.dp[i] -= 4.0 * h2 / std::pow(s.x[i] - s.x[j], 3);
  }
  return v;
}

Complex hamiltonian(const CMPhasePoint& s, int k) {
  validate(s);
  if (k < 0) throw std::invalid_argument("hamiltonian: k must be non-negative");
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(s.n(), s.n());
  const Eigen::MatrixXcd Y = lax_y(s);
  for (int j = 0; j < k; ++j) P = P * Y;
  return P.trace();
}

PhaseVelocity flow_rhs(const CMPhasePoint& s, int k) {
  validate(s);
  check_collision(s);
  if (k < 1) throw std::invalid_argument("flow_rhs: flow index must be at least 1");
  const int n = s.n();
  const Eigen::MatrixXcd Y = lax_y(s);
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(n, n);
  for (int j = 1; j < k; ++j) P = P * Y;
  PhaseVelocity v{std::vector<Complex>(n), std::vector<Complex>(n)};
  const double kk = static_cast<double>(k);
  for (int i = 0; i < n; ++i) {
    v.dx[i] = -kk * P(i, i);
    // d Y_im/d x_i = hbar/x_im^2, d Y_mi/d x_i = -hbar/x_im^2
    for (int m = 0; m < n; ++m) {
      if (m == i) continue;
      const Complex d = s.x[i] - s.x[m];
      v.dp[i] -= kk * s.hbar * (P(m, i) - P(i, m)) / (d * d);
    }
  }
  return v;
}

namespace {

CMPhasePoint advance(const CMPhasePoint& s, const PhaseVelocity& v, Complex h) {
  CMPhasePoint out = s;
  for (int i = 0; i < s.n(); ++i) {
    out.x[i] += h * v.dx[i];
    out.p[i] += h * v.dp[i];
  }
  return out;
}

CMPhasePoint rk4_step(const CMPhasePoint& s, int flow, Complex h) {
  const auto k1 = flow_rhs(s, flow);
  const auto k2 = flow_rhs(advance(s, k1, h / 2.0), flow);
  const auto k3 = flow_rhs(advance(s, k2, h / 2.0), flow);
  const auto k4 = flow_rhs(advance(s, k3, h), flow);
  CMPhasePoint out = s;
  for (int i = 0; i < s.n(); ++i) {
    out.x[i] += h / 6.0 * (k1.dx[i] + 2.0 * k2.dx[i] + 2.0 * k3.dx[i] + k4.dx[i]);
    out.p[i] += h / 6.0 * (k1.dp[i] + 2.0 * k2.dp[i] + 2.0 * k3.dp[i] + k4.dp[i]);
  }
  return out;
}

double min_separation(const CMPhasePoint& s) {
  double d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < s.n(); ++i)
    for (int j = i + 1; j < s.n(); ++j) d = std::min(d, std::abs(s.x[i] - s.x[j]));
  return d;
}

/// One RK4 step of length h, subdivided while any particle would move more
/// than a tenth of the closest separation before or after. Throws CollisionError at `t`.
CMPhasePoint guarded_step(const CMPhasePoint& s, int flow, Complex h, double t) {
  const double sep = min_separation(s);
  CMPhasePoint next;
  try {
    next = rk4_step(s, flow, h);
  } catch (const CollisionError& e) {
    throw CollisionError(e.what(), t);
  }
  double move = 0.0;
  for (int i = 0; i < s.n(); ++i) move = std::max(move, std::abs(next.x[i] - s.x[i]));
  if (!std::isfinite(sep) || move <= 0.1 * std::min(sep, min_separation(next))) {
    check_collision(next, t);
    return next;
  }
  if (std::abs(h) < 1e-14 || sep < collision_threshold(s))
    throw CollisionError("particles collide: separation " + std::to_string(sep), t);
  const CMPhasePoint mid = guarded_step(s, flow, h / 2.0, t);
  return guarded_step(mid, flow, h / 2.0, t + std::abs(h) / 2.0);
}

std::vector<Complex> invariants(const CMPhasePoint& s) {
  std::vector<Complex> h;
  for (int j = 1; j <= s.n(); ++j) h.push_back(hamiltonian(s, j));
  return h;
}

}  // namespace

Trajectory integrate(const CMPhasePoint& s0, double t_final, double dt, int flow, const IntegrateOptions& options) {
  validate(s0);
  if (!(dt > 0.0) || !(t_final >= 0.0)) throw std::invalid_argument("integrate: need dt > 0 and t_final >= 0");
  if (flow < 1) throw std::invalid_argument("integrate: flow index must be at least 1");
  check_collision(s0, 0.0);
  const auto h0 = invariants(s0);
  Trajectory tr;
  tr.flow = flow;
  auto record = [&](double t, const CMPhasePoint& s) {
    TrajectorySample sample{t, s, {}};
    const auto h = invariants(s);
    for (std::size_t j = 0; j < h.size(); ++j) {
      const double d = std::abs(h[j] - h0[j]) / std::max(1.0, std::abs(h0[j]));
      sample.drift.push_back(d);
      tr.max_drift = std::max(tr.max_drift, d);
    }
    tr.samples.push_back(std::move(sample));
  };
  record(0.0, s0);
  const long steps = static_cast<long>(std::ceil(t_final / dt - 1e-9));
  const int every = std::max(options.record_every, 1);
  CMPhasePoint s = s0;
  double t = 0.0;
  for (long step = 1; step <= steps; ++step) {
    const double h = std::min(dt, t_final - t);
    s = guarded_step(s, flow, h, t);
    t = step == steps ? t_final : t + h;
    if (step % every == 0 || step == steps) record(t, s);
  }
  return tr;
}

CMPhasePoint higher_flow(const CMPhasePoint& s0, int k, Complex t_k, int steps) {
  validate(s0);
  if (steps < 1) throw std::invalid_argument("higher_flow: need at least one step");
  CMPhasePoint s = s0;
  const Complex h = t_k / static_cast<double>(steps);
  for (int j = 0; j < steps; ++j) s = guarded_step(s, k, h, 0.0);
  return s;
}

std::vector<Complex> matching_expansion(const std::vector<Complex>& a, const Eigen::MatrixXcd& w) {
  const int n = static_cast<int>(a.size());
  if (w.rows() < n || w.cols() < n) throw std::invalid_argument("matching_expansion: weight matrix too small");
  poly::Poly total(static_cast<std::size_t>(n + 1), Complex{});
  std::vector<bool> used(n, false);
  // ascending polynomial accumulated along one branch of the matching recursion
  std::function<void(int, poly::Poly)> rec = [&](int l, poly::Poly acc) {
    while (l < n && used[l]) ++l;
    if (l == n) {
      for (std::size_t m = 0; m < acc.size(); ++m) total[m] += acc[m];
      return;
    }
    used[l] = true;
    const Complex lin[2] = {-a[l], 1.0};
    rec(l + 1, poly::multiply(acc, lin));
    for (int j = l + 1; j < n; ++j) {
      if (used[j]) continue;
      used[j] = true;
      poly::Poly next = acc;
      for (auto& c : next) c *= w(l, j);
      rec(l + 1, std::move(next));
      used[j] = false;
    }
    used[l] = false;
  };
  rec(0, poly::Poly{1.0});
  return {total.rbegin(), total.rend()};
}

std::vector<Complex> char_poly_direct(const Eigen::MatrixXcd& Y) {
  const int n = static_cast<int>(Y.rows());
  if (n == 0) return {1.0};
  const double r = 1.0 + Y.cwiseAbs().rowwise().sum().maxCoeff();
  const auto pts = poly::circle_points(0.0, r, n + 1);
  std::vector<Complex> values;
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
  for (const auto& z : pts) values.push_back((z * I - Y).determinant());
  auto asc = poly::unscale(poly::interpolate_on_circle(values), 0.0, r);
  asc.resize(static_cast<std::size_t>(n + 1));
  return {asc.rbegin(), asc.rend()};
}

std::vector<Complex> char_poly_formula(const CMPhasePoint& s) {
  validate(s);
  check_collision(s);
  const int n = s.n();
  std::vector<Complex> a(n);
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    a[i] = -s.p[i];
    for (int j = 0; j < n; ++j)
      if (j != i) w(i, j) = s.hbar * s.hbar / ((s.x[i] - s.x[j]) * (s.x[i] - s.x[j]));
  }
  return matching_expansion(a, w);
}

double newton_check(const CMPhasePoint& s) {
  const int n = s.n();
  const auto J = char_poly_formula(s);
  Complex sum{};
  double scale = 0.0;
  for (int k = 0; k <= n; ++k) {
    const Complex Hk = k == 0 ? Complex(n) : hamiltonian(s, k);
    sum += J[n - k] * Hk;
    scale += std::abs(J[n - k]) * std::abs(Hk);
  }
  return std::abs(sum) / std::max(scale, 1e-300);
}

Eigen::MatrixXcd xy_commutator(const CMPhasePoint& s) {
  validate(s);
  const int n = s.n();
  const Eigen::MatrixXcd Y = lax_y(s);
  Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) X(i, i) = s.x[i];
  const Eigen::MatrixXcd target =
      s.hbar * (Eigen::MatrixXcd::Identity(n, n) - Eigen::MatrixXcd::Ones(n, n));
  return X * Y - Y * X - target;
}

double ones_moment_defect(const CMPhasePoint& s, int kmax) {
  validate(s);
  const int n = s.n();
  const Eigen::MatrixXcd Y = lax_y(s);
  const Eigen::VectorXcd one = Eigen::VectorXcd::Ones(n);
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(n, n);
  double worst = 0.0;
  for (int k = 0; k <= kmax; ++k) {
    const Complex tr = P.trace();
    const Complex mom = one.dot(P * one);
    worst = std::max(worst, std::abs(mom - tr) / std::max(1.0, std::abs(tr)));
    P = P * Y;
  }
  return worst;
}

Eigen::MatrixXcd tau_root_matrix(const TimeVector& t, const Eigen::MatrixXcd& X0, const Eigen::MatrixXcd& Y0) {
  const int n = static_cast<int>(X0.rows());
  Eigen::MatrixXcd M = X0;
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(n, n);
  for (int k = 1; k <= t.order(); ++k) {
    M -= static_cast<double>(k) * t.time(k) * P;
    P = P * Y0;
  }
  return M;
}

Complex tau_determinant(Complex x, const TimeVector& t, const Eigen::MatrixXcd& X0, const Eigen::MatrixXcd& Y0,
                        Complex prefactor) {
  const int n = static_cast<int>(X0.rows());
  const Eigen::MatrixXcd M = x * Eigen::MatrixXcd::Identity(n, n) - tau_root_matrix(t, X0, Y0);
  return prefactor * (n == 0 ? Complex(1.0) : M.determinant());
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  const int n = trajectory.samples.empty() ? 0 : trajectory.samples.front().point.n();
  out << "t";
  for (int i = 0; i < n; ++i) out << ",re_x" << i << ",im_x" << i;
  for (int i = 0; i < n; ++i) out << ",re_p" << i << ",im_p" << i;
  for (int j = 1; j <= n; ++j) out << ",drift_H" << j;
  out << '\n';
  out.precision(17);
  for (const auto& s : trajectory.samples) {
    out << s.time;
    for (const auto& x : s.point.x) out << ',' << x.real() << ',' << x.imag();
    for (const auto& p : s.point.p) out << ',' << p.real() << ',' << p.imag();
    for (const auto& d : s.drift) out << ',' << d;
    out << '\n';
  }
}

}  // namespace gaudin
