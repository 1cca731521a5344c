#pragma once

#include "slantcheck/expr.hpp"
#include "slantcheck/linalg.hpp"

#include <span>

namespace slantcheck {

/// Second-order Taylor data of a scalar with respect to m parameters.
///
/// Every operation assembles the Hessian from its upper triangle and mirrors it, so
/// `hess` is exactly symmetric.
struct Jet2 {
  double value = 0.0;
  Vec grad;
  Mat hess;

  static Jet2 constant(double v, int m);
  static Jet2 variable(double v, int index, int m);

  int size() const { return static_cast<int>(grad.size()); }
};

Jet2 operator+(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a);
Jet2 operator*(const Jet2& a, const Jet2& b);
Jet2 operator/(const Jet2& a, const Jet2& b);

/// Applies a scalar function with known first and second derivative at a.value.
Jet2 chain(const Jet2& a, double f, double df, double d2f);

Jet2 eval_jet2(const Expr& e, std::span<const double> point, std::span<const double> constants);

/// Plain recursive evaluation; agrees bit-for-bit with eval_jet2(...).value.
double eval_value(const Expr& e, std::span<const double> point, std::span<const double> constants);

}  // namespace slantcheck
