#include "gaudin/symfun.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace gaudin {

YoungDiagram::YoungDiagram(std::initializer_list<int> parts) : YoungDiagram(std::vector<int>(parts)) {}

YoungDiagram::YoungDiagram(std::vector<int> parts) {
  for (int p : parts)
    if (p < 0) throw std::invalid_argument("YoungDiagram: negative part");
  std::erase(parts, 0);
  std::sort(parts.begin(), parts.end(), std::greater<>());
  parts_ = std::move(parts);
}

YoungDiagram YoungDiagram::row(int s) { return s <= 0 ? YoungDiagram() : YoungDiagram{s}; }

YoungDiagram YoungDiagram::column(int a) { return YoungDiagram(std::vector<int>(a > 0 ? a : 0, 1)); }

int YoungDiagram::weight() const {
  int w = 0;
  for (int p : parts_) w += p;
  return w;
}

std::string YoungDiagram::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
  os << ')';
  return os.str();
}

namespace {
void partitions_rec(int remaining, int max_part, std::vector<int>& current, std::vector<YoungDiagram>& out) {
  if (remaining == 0) {
    out.emplace_back(current);
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    current.push_back(p);
    partitions_rec(remaining - p, p, current, out);
    current.pop_back();
  }
}
}  // namespace

std::vector<YoungDiagram> partitions(int weight) {
  std::vector<YoungDiagram> out;
  if (weight < 0) return out;
  std::vector<int> current;
  partitions_rec(weight, weight, current, out);
  return out;
}

std::vector<YoungDiagram> partitions_up_to(int max_weight) {
  std::vector<YoungDiagram> out;
  for (int w = 0; w <= max_weight; ++w) {
    auto p = partitions(w);
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

Complex complete_homogeneous(const PowerSums<Complex>& y, int k) {
  if (k < 0) return 0.0;
  if (k > y.order()) (void)y(k);
  return complete_homogeneous(y, k, Complex(1.0));
}

Complex schur(const PowerSums<Complex>& y, const YoungDiagram& lam) { return schur(y, lam, Complex(1.0)); }

Complex character(const Eigen::MatrixXcd& g, const YoungDiagram& lam) {
  if (g.rows() != g.cols()) throw std::invalid_argument("character: matrix is not square");
  if (lam.empty()) return 1.0;
  const int order = lam.jacobi_trudi_order();
  std::vector<Complex> traces;
  Eigen::MatrixXcd power = g;
  for (int k = 1; k <= order; ++k) {
    if (k > 1) power = power * g;
    traces.push_back(power.trace());
  }
  return schur(power_sums_from_traces(traces), lam);
}

TimeVector::TimeVector(Complex hbar, std::vector<Complex> entries) : hbar_(hbar), t_(std::move(entries)) {
  if (hbar_ == Complex{}) throw std::invalid_argument("TimeVector: hbar must be nonzero");
  if (t_.empty()) throw std::invalid_argument("TimeVector: truncation order must be at least 1");
}

TimeVector TimeVector::zero(Complex hbar, int order) { return TimeVector(hbar, std::vector<Complex>(order, 0.0)); }

TimeVector TimeVector::with_time(int k, Complex value) const {
  TimeVector out = k > order() ? extended(k) : *this;
  out.t_[k - 1] = value;
  return out;
}

TimeVector TimeVector::extended(int order) const {
  TimeVector out = *this;
  if (order > this->order()) out.t_.resize(order, 0.0);
  return out;
}

TimeVector operator-(const TimeVector& a, const TimeVector& b) {
  const int k = std::max(a.order(), b.order());
  std::vector<Complex> d(k);
  for (int i = 1; i <= k; ++i) d[i - 1] = a.time(i) - b.time(i);
  return TimeVector(a.hbar(), std::move(d));
}

TimeVector miwa_shift(const TimeVector& t, Complex z, int sign) {
  if (z == Complex{}) throw std::invalid_argument("miwa_shift: z must be nonzero");
  if (sign != 1 && sign != -1) throw std::invalid_argument("miwa_shift: sign must be +1 or -1");
  std::vector<Complex> out = t.entries();
  const Complex inv = 1.0 / z;
  Complex power = 1.0;
  for (int k = 1; k <= t.order(); ++k) {
    power *= inv;
    out[k - 1] += static_cast<double>(sign) * t.hbar() / static_cast<double>(k) * power;
  }
  return TimeVector(t.hbar(), std::move(out));
}

Complex xi(const TimeVector& t, Complex z) {
  Complex acc{};
  for (int k = t.order(); k >= 1; --k) acc = (acc + t.time(k)) * z;
  return acc;
}

PowerSums<Complex> scaled_times(const TimeVector& t) {
  std::vector<Complex> y;
  for (const auto& v : t.entries()) y.push_back(v / t.hbar());
  return PowerSums<Complex>(std::move(y));
}

PowerSumPolynomial::PowerSumPolynomial(double constant) {
  if (constant != 0.0) terms_[{}] = constant;
}

PowerSumPolynomial PowerSumPolynomial::variable(int k) {
  PowerSumPolynomial p;
  Exponents e(k, 0);
  e[k - 1] = 1;
  p.terms_[e] = 1.0;
  return p;
}

void PowerSumPolynomial::prune() {
  std::erase_if(terms_, [](const auto& kv) { return kv.second == 0.0; });
}

PowerSumPolynomial& PowerSumPolynomial::operator+=(const PowerSumPolynomial& o) {
  for (const auto& [e, c] : o.terms_) terms_[e] += c;
  prune();
  return *this;
}

PowerSumPolynomial& PowerSumPolynomial::operator-=(const PowerSumPolynomial& o) {
  for (const auto& [e, c] : o.terms_) terms_[e] -= c;
  prune();
  return *this;
}

PowerSumPolynomial& PowerSumPolynomial::operator*=(double s) {
  for (auto& [e, c] : terms_) c *= s;
  prune();
  return *this;
}

PowerSumPolynomial operator*(const PowerSumPolynomial& a, const PowerSumPolynomial& b) {
  PowerSumPolynomial out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      PowerSumPolynomial::Exponents e(std::max(ea.size(), eb.size()), 0);
      for (std::size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
      for (std::size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
      out.terms_[e] += ca * cb;
    }
  out.prune();
  return out;
}

Complex PowerSumPolynomial::evaluate(const PowerSums<Complex>& y) const {
  Complex acc{};
  for (const auto& [e, c] : terms_) {
    Complex term = c;
    for (std::size_t k = 0; k < e.size(); ++k)
      if (e[k] > 0) term *= std::pow(y(static_cast<int>(k) + 1), e[k]);
    acc += term;
  }
  return acc;
}

PowerSumPolynomial schur_polynomial(const YoungDiagram& lam) {
  const int order = std::max(1, lam.jacobi_trudi_order());
  std::vector<PowerSumPolynomial> y;
  for (int k = 1; k <= order; ++k) y.push_back(PowerSumPolynomial::variable(k));
  return schur(PowerSums<PowerSumPolynomial>(std::move(y)), lam, PowerSumPolynomial(1.0));
}

}  // namespace gaudin
