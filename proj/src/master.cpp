#include "gaudin/master.hpp"

#include <algorithm>
#include <cmath>

namespace gaudin {

ChainExpansion transfer_chain(const YoungDiagram& lam, const GaudinModel& model) {
  return expand_chain(model, MatrixFunction::character(lam));
}

namespace {
Complex marked_product(Complex x, const GaudinModel& model) {
  Complex p = 1.0;
  double scale = std::abs(x);
  for (const auto& xi : model.marked_points()) scale = std::max(scale, std::abs(xi));
  for (const auto& xi : model.marked_points()) {
    if (std::abs(x - xi) <= 1e-14 * std::max(1.0, scale))
      throw PoleError("rational transfer matrix evaluated at a marked point");
    p *= x - xi;
  }
  return p;
}
}  // namespace

Operator transfer_matrix(const YoungDiagram& lam, Complex x, Normalization normalization, const GaudinModel& model) {
  if (normalization == Normalization::Rational) {
    const Complex p = marked_product(x, model);
    return transfer_chain(lam, model).evaluate(x) / p;
  }
  return transfer_chain(lam, model).evaluate(x);
}

ChainExpansion master_chain(const TimeVector& t, const GaudinModel& model) {
  if (t.hbar() != model.hbar()) throw std::invalid_argument("master_chain: time vector paired with a different hbar");
  return expand_chain(model, MatrixFunction::exp_times(t));
}

Operator master_t(Complex x, const TimeVector& t, const GaudinModel& model) {
  return master_chain(t, model).evaluate(x);
}

Complex exp_prefactor(const TimeVector& t, const GaudinModel& model) {
  Complex arg{};
  for (int k = 1; k <= t.order(); ++k) arg += t.time(k) * model.twist_power_trace(k);
  return std::exp(arg / t.hbar());
}

Operator recover_transfer(const YoungDiagram& lam, Complex x, const GaudinModel& model, int budget) {
  if (lam.weight() > budget)
    throw TruncationError("recover_transfer: |lambda| = " + std::to_string(lam.weight()) +
                          " exceeds derivative budget " + std::to_string(budget));
  const Complex hbar = model.hbar();
  const auto s = schur_polynomial(lam);
  const int order = std::max(1, lam.weight());
  // monomial prod y_k^{a_k} -> prod (hbar/k)^{a_k} d^{a_k}/dt_k^{a_k}; each
  // derivative of the exponential at t = 0 brings down tr g^k / hbar
  JetFunction f = [&](const SquareMatrix<Jet>& g) {
    const auto p = power_traces(g, order);
    const Jet one(g(0, 0).variables(), 1.0);
    Jet total = zero_like(one);
    for (const auto& [a, c] : s.terms()) {
      Jet term = one * Complex(c);
      for (std::size_t k = 1; k <= a.size(); ++k)
        for (int r = 0; r < a[k - 1]; ++r) term = term * (hbar / static_cast<double>(k)) * (p[k - 1] * (1.0 / hbar));
      total += term;
    }
    return std::vector<Jet>{total};
  };
  return expand_chain(model, f, 1).front().evaluate(x);
}

Operator schur_expansion(Complex x, const TimeVector& t, int max_weight, const GaudinModel& model) {
  const auto y = scaled_times(t.extended(std::max(max_weight, t.order())));
  const auto d = static_cast<Eigen::Index>(model.dimension());
  Operator out = Operator::Zero(d, d);
  for (const auto& lam : partitions_up_to(max_weight)) {
    const Complex s = lam.empty() ? Complex(1.0) : schur(y, lam);
    if (s == Complex{}) continue;
    out += s * transfer_chain(lam, model).evaluate(x);
  }
  return out;
}

std::vector<ChainExpansion> shifted_chain(const TimeVector& t, int sign, int depth, const GaudinModel& model) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("shifted_chain: sign must be +1 or -1");
  if (depth < 0) throw std::invalid_argument("shifted_chain: depth must be nonnegative");
  const int N = model.N();
  const int order = std::max({N, depth, t.order(), 1});
  JetFunction f = [&t, sign, depth, N, order](const SquareMatrix<Jet>& g) {
    const auto p = power_traces(g, order);
    const Jet one(g(0, 0).variables(), 1.0);
    Jet arg = zero_like(one);
    for (int k = 1; k <= t.order(); ++k) arg += p[k - 1] * t.time(k);
    const Jet E = exp(arg * (1.0 / t.hbar()));
    std::vector<Jet> out;
    out.reserve(depth + 1);
    if (sign < 0) {
      // det(I - w g) = sum_j (-1)^j e_j w^j; e_j for j > N are kept and vanish
      const std::vector<Jet> tr(p.begin(), p.begin() + std::max(depth, 1));
      const auto e = elementary_all(power_sums_from_traces(tr), depth, one);
      for (int j = 0; j <= depth; ++j) out.push_back((j % 2 ? e[j] * (-1.0) : e[j]) * E);
    } else {
      // 1/det(I - w g) = sum_s h_s w^s, h_s = sum_{j=1}^{N} (-1)^{j+1} e_j h_{s-j}
      const std::vector<Jet> tr(p.begin(), p.begin() + N);
      const auto e = elementary_all(power_sums_from_traces(tr), N, one);
      std::vector<Jet> h{one};
      for (int s = 1; s <= depth; ++s) {
        Jet acc = zero_like(one);
        for (int j = 1; j <= std::min(s, N); ++j) {
          if (j % 2)
            acc += e[j] * h[s - j];
          else
            acc -= e[j] * h[s - j];
        }
        h.push_back(acc);
      }
      for (int s = 0; s <= depth; ++s) out.push_back(h[s] * E);
    }
    return out;
  };
  return expand_chain(model, f, depth + 1);
}

std::vector<Operator> generating_series(Complex x, int sign, int depth, const GaudinModel& model) {
  std::vector<Operator> out;
  for (const auto& c : shifted_chain(TimeVector::zero(model.hbar(), 1), sign, depth, model))
    out.push_back(c.evaluate(x));
  return out;
}

Operator extract_hamiltonian(int i, const GaudinModel& model) {
  if (i < 0 || i >= model.n()) throw std::out_of_range("extract_hamiltonian: slot out of range");
  const auto& x = model.marked_points();
  const Complex hbar = model.hbar();
  const Operator T = recover_transfer(YoungDiagram{1, 1}, x[i], model);
  Complex denom = 1.0;
  Complex known = hbar * model.twist_power_trace(1);
  for (int j = 0; j < model.n(); ++j) {
    if (j == i) continue;
    denom *= x[i] - x[j];
    known += hbar * hbar / (x[i] - x[j]);
  }
  return -(T / denom - known * identity_operator(model));
}

TauRecord tau_eigenvalue(const ChainExpansion& chain, Complex prefactor, const StateVector& v,
                         const GaudinModel& model) {
  const int n = model.n();
  const auto& x = model.marked_points();
  Complex center{};
  for (const auto& xi : x) center += xi;
  if (n > 0) center /= static_cast<double>(n);
  double radius = 1.0;
  for (const auto& xi : x) radius = std::max(radius, std::abs(xi - center) + 1.0);

  const auto points = poly::circle_points(center, radius, n + 2);
  std::vector<Complex> values;
  values.reserve(points.size());
  const double norm2 = v.squaredNorm();
  for (const auto& z : points) values.push_back(v.dot(chain.evaluate(z) * v) / norm2 / prefactor);
  auto c = poly::unscale(poly::interpolate_on_circle(values), center, radius);

  TauRecord rec;
  rec.prefactor = prefactor;
  double scale = 1.0;
  for (const auto& ci : c) scale = std::max(scale, std::abs(ci));
  rec.fit_residual = std::max(std::abs(c[n + 1]), std::abs(c[n] - 1.0)) / scale;
  rec.flagged = rec.fit_residual > model.tolerance();
  c.resize(n + 1);
  c[n] = 1.0;
  rec.coefficients = c;
  if (n > 0) rec.roots = poly::roots(c);
  return rec;
}

std::vector<TauRecord> tau_eigenvalues(const TimeVector& t, const JointSpectrum& spectrum, const GaudinModel& model) {
  const auto chain = master_chain(t, model);
  const Complex pre = exp_prefactor(t, model);
  std::vector<TauRecord> out;
  out.reserve(spectrum.states.size());
  for (const auto& s : spectrum.states) out.push_back(tau_eigenvalue(chain, pre, s.vector, model));
  return out;
}

}  // namespace gaudin
