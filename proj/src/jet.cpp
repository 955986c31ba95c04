#include "gaudin/jet.hpp"

#include <cassert>
#include <cmath>

namespace gaudin {

Jet::Jet(int variables, Complex value) : variables_(variables), c_(std::size_t{1} << variables, Complex{}) {
  c_[0] = value;
}

Jet Jet::variable(int variables, int var, Complex value) {
  Jet j(variables, value);
  j.c_[std::size_t{1} << var] = 1.0;
  return j;
}

Jet& Jet::operator+=(const Jet& o) {
  assert(o.variables_ == variables_);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  assert(o.variables_ == variables_);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet& Jet::operator*=(Complex s) {
  for (auto& v : c_) v *= s;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  assert(a.variables_ == b.variables_);
  Jet out(a.variables_, 0.0);
  const std::size_t n = a.c_.size();
  for (std::size_t s = 0; s < n; ++s) {
    Complex acc{};
    // enumerate submasks t of s, including s itself and 0
    std::size_t t = s;
    while (true) {
      acc += a.c_[t] * b.c_[s ^ t];
      if (t == 0) break;
      t = (t - 1) & s;
    }
    out.c_[s] = acc;
  }
  return out;
}

Jet& Jet::operator*=(const Jet& o) {
  *this = *this * o;
  return *this;
}

Jet Jet::reciprocal() const {
  const Complex a0 = c_[0];
  double scale = 0.0;
  for (const auto& v : c_) scale = std::max(scale, std::abs(v));
  if (std::abs(a0) <= 1e-300 || std::abs(a0) <= 1e-14 * scale)
    throw PoleError("jet reciprocal: constant part is not a unit");
  // 1/(a0 (1 + u)) = (1/a0) sum_k (-u)^k, u nilpotent of order variables+1
  Jet u = *this;
  u.c_[0] = 0.0;
  u *= -1.0 / a0;
  Jet sum(variables_, 1.0);
  Jet power = sum;
  for (int k = 1; k <= variables_; ++k) {
    power = power * u;
    sum += power;
  }
  return sum * (1.0 / a0);
}

Jet exp(const Jet& a) {
  Jet u = a;
  u[0] = 0.0;
  Jet sum(a.variables(), 1.0);
  Jet power = sum;
  double factorial = 1.0;
  for (int k = 1; k <= a.variables(); ++k) {
    power = power * u;
    factorial *= k;
    sum += power * (1.0 / factorial);
  }
  return sum * std::exp(a.value());
}

}  // namespace gaudin
