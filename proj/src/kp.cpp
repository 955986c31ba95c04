#include "gaudin/kp.hpp"

#include <algorithm>
#include <cmath>

namespace gaudin {

LaurentSeries::LaurentSeries(int top, std::vector<Complex> coefficients, bool exact)
    : top_(top), c_(std::move(coefficients)), exact_(exact) {
  if (c_.empty()) throw std::invalid_argument("LaurentSeries: need at least one coefficient");
}

Complex LaurentSeries::coefficient(int m) const {
  if (m > top_) return Complex{};
  if (m >= low()) return c_[static_cast<std::size_t>(top_ - m)];
  if (exact_) return Complex{};
  throw TruncationError("LaurentSeries: coefficient of z^" + std::to_string(m) + " lies below the known window (low " +
                        std::to_string(low()) + ")");
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  const int top = a.top() + b.top();
  int low;
  if (a.exact() && b.exact())
    low = a.low() + b.low();
  else if (a.exact())
    low = b.low() + a.top();
  else if (b.exact())
    low = a.low() + b.top();
  else
    low = std::max(a.low() + b.top(), b.low() + a.top());
  std::vector<Complex> c;
  c.reserve(static_cast<std::size_t>(top - low + 1));
  for (int m = top; m >= low; --m) {
    Complex acc{};
    for (int i = std::max(a.low(), m - b.top()); i <= a.top(); ++i) {
      const int j = m - i;
      if (j < b.low()) {
        if (b.exact()) continue;
        break;
      }
      acc += a.coefficient(i) * b.coefficient(j);
    }
    c.push_back(acc);
  }
  return LaurentSeries(top, std::move(c), a.exact() && b.exact());
}

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
  const int top = std::max(a.top(), b.top());
  int low;
  if (a.exact() && b.exact())
    low = std::min(a.low(), b.low());
  else if (a.exact())
    low = b.low();
  else if (b.exact())
    low = a.low();
  else
    low = std::max(a.low(), b.low());
  std::vector<Complex> c;
  for (int m = top; m >= low; --m) c.push_back(a.coefficient(m) + b.coefficient(m));
  return LaurentSeries(top, std::move(c), a.exact() && b.exact());
}

std::vector<Complex> exp_xi_coefficients(const TimeVector& t, int count) {
  // q(z) = xi(t, z)/hbar; j eps_j = sum_k k q_k eps_{j-k}
  std::vector<Complex> eps(std::max(count, 0), Complex{});
  if (count <= 0) return eps;
  eps[0] = 1.0;
  for (int j = 1; j < count; ++j) {
    Complex acc{};
    for (int k = 1; k <= std::min(j, t.order()); ++k) acc += static_cast<double>(k) * t.time(k) * eps[j - k];
    eps[j] = acc / (static_cast<double>(j) * t.hbar());
  }
  return eps;
}

namespace {

double max_twist(const GaudinModel& model) {
  double rho = 0.0;
  for (const auto& k : model.twist()) rho = std::max(rho, std::abs(k));
  return rho;
}

/// `ab` is the product of the shifted taus, `mag` the same product of coefficient magnitudes.
BilinearResult residue_from_series(const LaurentSeries& ab, const LaurentSeries& mag, const std::vector<Complex>& eps,
                                   int window, double rho, const BilinearOptions& options) {
  BilinearResult r;
  r.window = window;
  for (int j = 0; j < window; ++j) {
    r.residue += eps[j] * ab.coefficient(-1 - j);
    r.scale += std::abs(eps[j]) * mag.coefficient(-1 - j).real();
  }
  // (AB)_{-s} grows at most like rho^s; fit the constant on the upper half of the window
  double M = 0.0;
  for (int s = window / 2; s <= window; ++s) M = std::max(M, mag.coefficient(-s).real() / std::pow(rho, s));
  for (int j = window; j < static_cast<int>(eps.size()); ++j) r.tail += std::abs(eps[j]) * M * std::pow(rho, j + 1);
  if (r.tail > options.tail_tolerance * std::max(r.scale, 1e-300))
    throw TruncationError("bilinear residue: window " + std::to_string(window) + " leaves an estimated tail of " +
                          std::to_string(r.tail) + " against scale " + std::to_string(r.scale) +
                          "; enlarge the window");
  return r;
}

}  // namespace

std::vector<BilinearResult> bilinear_residues(const JointSpectrum& spectrum, Complex x, const TimeVector& t,
                                              const TimeVector& t_prime, const GaudinModel& model,
                                              const BilinearOptions& options) {
  const int N = model.N();
  const int K = std::max(t.order(), t_prime.order());
  const int W = options.window;
  if (W < N + K + 1)
    throw TruncationError("bilinear residue: window " + std::to_string(W) + " below N + K + 1 = " +
                          std::to_string(N + K + 1));
  const auto minus = shifted_chain(t, -1, N, model);
  const auto plus = shifted_chain(t_prime, +1, W, model);
  const auto eps = exp_xi_coefficients(t.extended(K) - t_prime.extended(K), W + 40);
  const double rho = std::max(max_twist(model), 1e-3);

  std::vector<BilinearResult> out;
  for (const auto& state : spectrum.states) {
    std::vector<Complex> a, b;
    for (const auto& c : minus) a.push_back(poly::evaluate(c.expectation(state.vector), x));
    for (const auto& c : plus) b.push_back(poly::evaluate(c.expectation(state.vector), x));
    const LaurentSeries ab = LaurentSeries(0, a, true) * LaurentSeries(0, b, false);
    for (auto& c : a) c = std::abs(c);
    for (auto& c : b) c = std::abs(c);
    const LaurentSeries mag = LaurentSeries(0, a, true) * LaurentSeries(0, b, false);
    out.push_back(residue_from_series(ab, mag, eps, W, rho, options));
  }
  return out;
}

BilinearResult bilinear_residue(const StateVector& v, Complex x, const TimeVector& t, const TimeVector& t_prime,
                                const GaudinModel& model, const BilinearOptions& options) {
  JointSpectrum single;
  single.states.push_back(JointState{v, {}, {}, 1, 0.0});
  return bilinear_residues(single, x, t, t_prime, model, options).front();
}

namespace {

/// <v|c_j(x)|v>/<v|v> for each chain; the first entry is tau.
std::vector<Complex> chain_values(const std::vector<ChainExpansion>& chain, const StateVector& v, Complex x,
                                  double* tau_scale) {
  std::vector<Complex> out;
  for (std::size_t j = 0; j < chain.size(); ++j) {
    const auto p = chain[j].expectation(v);
    out.push_back(poly::evaluate(p, x));
    if (j == 0 && tau_scale) {
      double s = 0.0;
      for (std::size_t m = 0; m < p.size(); ++m) s += std::abs(p[m]) * std::pow(std::abs(x), static_cast<double>(m));
      *tau_scale = s;
    }
  }
  return out;
}

std::vector<Complex> phi_from_chain(const std::vector<ChainExpansion>& chain, const StateVector& v, Complex x) {
  double scale = 0.0;
  auto raw = chain_values(chain, v, x, &scale);
  if (std::abs(raw[0]) <= 1e-12 * scale)
    throw PoleError("Baker-Akhiezer function evaluated at a zero of tau (a Calogero-Moser particle position)");
  const Complex tau = raw[0];
  for (auto& r : raw) r /= tau;
  return raw;
}

Complex psi_from_phi(const std::vector<Complex>& phi, Complex x, const TimeVector& t, Complex z) {
  Complex sum{}, zp = 1.0;
  for (const auto& c : phi) {
    sum += c * zp;
    zp /= z;
  }
  return std::exp((x * z + xi(t, z)) / t.hbar()) * sum;
}

}  // namespace

std::vector<Complex> ba_coefficients(const StateVector& v, Complex x, const TimeVector& t, const GaudinModel& model,
                                     int extra) {
  return phi_from_chain(shifted_chain(t, -1, model.N() + std::max(extra, 0), model), v, x);
}

Complex ba_function(const StateVector& v, Complex x, const TimeVector& t, Complex z, const GaudinModel& model) {
  if (z == Complex{}) throw std::invalid_argument("ba_function: z must be nonzero");
  return psi_from_phi(ba_coefficients(v, x, t, model, 0), x, t, z);
}

std::vector<Complex> ba_large_x_limit(const StateVector& v, const TimeVector& t, const GaudinModel& model,
                                      double radius) {
  const int n = model.n();
  const auto chain = shifted_chain(t, -1, model.N(), model);
  const auto points = poly::circle_points(0.0, radius, n + 1);
  const double norm2 = v.squaredNorm();
  std::vector<Complex> lead;
  for (const auto& c : chain) {
    std::vector<Complex> values;
    for (const auto& x : points) values.push_back(v.dot(c.evaluate(x) * v) / norm2);
    // top coefficient in u = x/radius; the radius^n factor cancels in the ratio
    lead.push_back(poly::interpolate_on_circle(values)[n]);
  }
  const Complex denom = lead[0];
  if (denom == Complex{}) throw PoleError("ba_large_x_limit: tau has vanishing leading coefficient");
  for (auto& l : lead) l /= denom;
  return lead;
}

Complex kp_potential(const StateVector& v, Complex x, const TimeVector& t, const GaudinModel& model) {
  const auto P = master_chain(t, model).expectation(v);
  const auto d1 = poly::derivative(P);
  const auto d2 = poly::derivative(d1);
  const Complex p = poly::evaluate(P, x), p1 = poly::evaluate(d1, x), p2 = poly::evaluate(d2, x);
  if (p == Complex{}) throw PoleError("kp_potential: tau vanishes");
  return model.hbar() * model.hbar() * (p2 * p - p1 * p1) / (p * p);
}

LinearProblemResult linear_problem_residual(const StateVector& v, Complex x, const TimeVector& t, Complex z, double h,
                                            const GaudinModel& model) {
  if (!(h > 0.0)) throw std::invalid_argument("linear_problem_residual: step must be positive");
  const int N = model.N();
  const Complex hbar = model.hbar();
  const TimeVector base = t.extended(2);
  const TimeVector up = base.with_time(2, base.time(2) + h);
  const TimeVector down = base.with_time(2, base.time(2) - h);
  const auto c0 = shifted_chain(base, -1, N, model);
  const auto cu = shifted_chain(up, -1, N, model);
  const auto cd = shifted_chain(down, -1, N, model);

  auto psi = [&](const std::vector<ChainExpansion>& c, const TimeVector& tt, Complex xx) {
    return psi_from_phi(phi_from_chain(c, v, xx), xx, tt, z);
  };
  const Complex p0 = psi(c0, base, x);
  const Complex dt = (psi(cu, up, x) - psi(cd, down, x)) / (2 * h);
  const Complex dxx = (psi(c0, base, x + h) - 2.0 * p0 + psi(c0, base, x - h)) / (h * h);

  LinearProblemResult r;
  r.psi = p0;
  r.u = kp_potential(v, x, base, model);
  const Complex lhs = hbar * dt;
  const Complex kin = hbar * hbar * dxx;
  const Complex pot = 2.0 * r.u * p0;
  r.residual = std::abs(lhs - kin - pot) / (std::abs(lhs) + std::abs(kin) + std::abs(pot));
  return r;
}

double observed_order(const std::vector<double>& steps, const std::vector<double>& residuals) {
  if (steps.size() != residuals.size() || steps.size() < 2)
    throw std::invalid_argument("observed_order: need at least two matching samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(steps.size());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const double lx = std::log(steps[i]), ly = std::log(residuals[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace gaudin
