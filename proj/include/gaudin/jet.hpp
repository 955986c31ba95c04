#pragma once

// Squarefree jets: the truncated ring C[e_1..e_m]/(e_i^2). A jet stores one
// coefficient per subset of the nilpotent variables (bitmask index), so the
// coefficient at mask S is the mixed partial d^|S| f / prod_{i in S} de_i.

#include <cstddef>
#include <vector>

#include "gaudin/types.hpp"

namespace gaudin {

class Jet {
 public:
  Jet() : c_(1, Complex{}) {}
  Jet(int variables, Complex value);

  /// value + e_var
  static Jet variable(int variables, int var, Complex value = 0.0);

  int variables() const { return variables_; }
  std::size_t size() const { return c_.size(); }
  Complex value() const { return c_[0]; }
  Complex operator[](std::size_t mask) const { return c_[mask]; }
  Complex& operator[](std::size_t mask) { return c_[mask]; }
  /// Coefficient of the product of all variables.
  Complex top() const { return c_.back(); }

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator*=(Complex s);
  Jet& operator+=(Complex s) {
    c_[0] += s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator*(Jet a, Complex s) { return a *= s; }
  friend Jet operator*(Complex s, Jet a) { return a *= s; }
  friend Jet operator*(Jet a, double s) { return a *= Complex(s); }
  friend Jet operator*(double s, Jet a) { return a *= Complex(s); }
  friend Jet operator-(Jet a) { return a *= Complex(-1.0); }

  /// Multiplicative inverse; the constant part must be a unit.
  Jet reciprocal() const;

 private:
  int variables_ = 0;
  std::vector<Complex> c_;
};

Jet exp(const Jet& a);

inline Jet reciprocal(const Jet& j) { return j.reciprocal(); }
inline Jet zero_like(const Jet& j) { return Jet(j.variables(), 0.0); }
inline Jet one_like(const Jet& j) { return Jet(j.variables(), 1.0); }

}  // namespace gaudin
