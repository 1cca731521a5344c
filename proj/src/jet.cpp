#include "slantcheck/jet.hpp"

#include "slantcheck/errors.hpp"

#include <cmath>
#include <limits>

namespace slantcheck {

namespace {

// Fills the upper triangle with f(i, j) and mirrors it.
template <class F>
Mat symmetric(int m, F&& f) {
  Mat h(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      const double v = f(i, j);
      h(i, j) = v;
      h(j, i) = v;
    }
  }
  return h;
}

}  // namespace

Jet2 Jet2::constant(double v, int m) { return {v, Vec::Zero(m), Mat::Zero(m, m)}; }

Jet2 Jet2::variable(double v, int index, int m) {
  Jet2 j = constant(v, m);
  j.grad(index) = 1.0;
  return j;
}

Jet2 operator+(const Jet2& a, const Jet2& b) {
  return {a.value + b.value, a.grad + b.grad,
          symmetric(a.size(), [&](int i, int j) { return a.hess(i, j) + b.hess(i, j); })};
}

Jet2 operator-(const Jet2& a, const Jet2& b) {
  return {a.value - b.value, a.grad - b.grad,
          symmetric(a.size(), [&](int i, int j) { return a.hess(i, j) - b.hess(i, j); })};
}

Jet2 operator-(const Jet2& a) { return {-a.value, -a.grad, -a.hess}; }

Jet2 operator*(const Jet2& a, const Jet2& b) {
  Vec g = a.value * b.grad + b.value * a.grad;
  Mat h = symmetric(a.size(), [&](int i, int j) {
    return a.value * b.hess(i, j) + b.value * a.hess(i, j) + (a.grad(i) * b.grad(j) + b.grad(i) * a.grad(j));
  });
  return {a.value * b.value, std::move(g), std::move(h)};
}

Jet2 chain(const Jet2& a, double f, double df, double d2f) {
  Vec g = df * a.grad;
  Mat h = symmetric(a.size(), [&](int i, int j) { return df * a.hess(i, j) + d2f * (a.grad(i) * a.grad(j)); });
  return {f, std::move(g), std::move(h)};
}

Jet2 operator/(const Jet2& a, const Jet2& b) {
  const double inv = 1.0 / b.value;
  Jet2 r = chain(b, inv, -inv * inv, 2.0 * inv * inv * inv);
  Jet2 q = a * r;
  q.value = a.value / b.value;
  return q;
}

namespace {

bool is_integer(double c) { return std::isfinite(c) && std::floor(c) == c; }

[[noreturn]] void domain_fail(const std::string& what, const Expr& e) { throw DomainError(what, to_string(e)); }

// Shared domain checks so the value path and the jet path reject the same inputs.
double checked_div(const Expr& e, double num, double den) {
  if (den == 0.0) domain_fail("division by zero", e);
  return num / den;
}

double checked_call(const Expr& e, double x) {
  switch (e.func) {
    case Func::sin: return std::sin(x);
    case Func::cos: return std::cos(x);
    case Func::tan:
      if (std::abs(std::cos(x)) < 1e-14) domain_fail("tan evaluated at a pole", e);
      return std::tan(x);
    case Func::exp: return std::exp(x);
    case Func::log:
      if (!(x > 0.0)) domain_fail("log of non-positive value " + std::to_string(x), e);
      return std::log(x);
    case Func::sqrt:
      if (x < 0.0) domain_fail("sqrt of negative value " + std::to_string(x), e);
      return std::sqrt(x);
  }
  return 0.0;
}

double checked_pow(const Expr& e, double base, double expo, bool constant_exponent) {
  if (!constant_exponent && !(base > 0.0)) {
    domain_fail("power with parameter-dependent exponent needs a positive base", e);
  }
  if (base < 0.0 && !is_integer(expo)) domain_fail("negative base raised to a non-integer power", e);
  if (base == 0.0 && expo < 0.0) domain_fail("zero raised to a negative power", e);
  return std::pow(base, expo);
}

double value_of(const Expr& e, std::span<const double> pt, std::span<const double> cs) {
  switch (e.kind) {
    case Expr::Kind::number: return e.number;
    case Expr::Kind::param: return pt[static_cast<std::size_t>(e.index)];
    case Expr::Kind::constant: return cs[static_cast<std::size_t>(e.index)];
    case Expr::Kind::neg: return -value_of(e.args[0], pt, cs);
    case Expr::Kind::add: return value_of(e.args[0], pt, cs) + value_of(e.args[1], pt, cs);
    case Expr::Kind::sub: return value_of(e.args[0], pt, cs) - value_of(e.args[1], pt, cs);
    case Expr::Kind::mul: return value_of(e.args[0], pt, cs) * value_of(e.args[1], pt, cs);
    case Expr::Kind::div: return checked_div(e, value_of(e.args[0], pt, cs), value_of(e.args[1], pt, cs));
    case Expr::Kind::pow:
      return checked_pow(e, value_of(e.args[0], pt, cs), value_of(e.args[1], pt, cs), !e.args[1].depends_on_params());
    case Expr::Kind::call: return checked_call(e, value_of(e.args[0], pt, cs));
  }
  return 0.0;
}

Jet2 jet_of(const Expr& e, std::span<const double> pt, std::span<const double> cs) {
  const int m = static_cast<int>(pt.size());
  switch (e.kind) {
    case Expr::Kind::number: return Jet2::constant(e.number, m);
    case Expr::Kind::param: return Jet2::variable(pt[static_cast<std::size_t>(e.index)], e.index, m);
    case Expr::Kind::constant: return Jet2::constant(cs[static_cast<std::size_t>(e.index)], m);
    case Expr::Kind::neg: return -jet_of(e.args[0], pt, cs);
    case Expr::Kind::add: return jet_of(e.args[0], pt, cs) + jet_of(e.args[1], pt, cs);
    case Expr::Kind::sub: return jet_of(e.args[0], pt, cs) - jet_of(e.args[1], pt, cs);
    case Expr::Kind::mul: return jet_of(e.args[0], pt, cs) * jet_of(e.args[1], pt, cs);
    case Expr::Kind::div: {
      Jet2 a = jet_of(e.args[0], pt, cs);
      Jet2 b = jet_of(e.args[1], pt, cs);
      checked_div(e, a.value, b.value);
      return a / b;
    }
    case Expr::Kind::pow: {
      Jet2 base = jet_of(e.args[0], pt, cs);
      Jet2 expo = jet_of(e.args[1], pt, cs);
      const bool constant_exponent = !e.args[1].depends_on_params();
      const double f = checked_pow(e, base.value, expo.value, constant_exponent);
      if (constant_exponent) {
        const double c = expo.value;
        const double x = base.value;
        if (c == 0.0) return Jet2::constant(f, m);
        if (x == 0.0 && !(is_integer(c) || c >= 2.0)) {
          domain_fail("power not differentiable at zero base", e);
        }
        const double df = c == 1.0 ? 1.0 : c * std::pow(x, c - 1.0);
        const double d2f = (c == 1.0 || c == 2.0) ? (c == 2.0 ? 2.0 : 0.0) : c * (c - 1.0) * std::pow(x, c - 2.0);
        return chain(base, f, df, d2f);
      }
      // base^expo = exp(expo * log(base)), base > 0 was checked above.
      const double lx = std::log(base.value);
      Jet2 logb = chain(base, lx, 1.0 / base.value, -1.0 / (base.value * base.value));
      Jet2 r = chain(expo * logb, f, f, f);
      r.value = f;
      return r;
    }
    case Expr::Kind::call: {
      Jet2 a = jet_of(e.args[0], pt, cs);
      const double x = a.value;
      const double f = checked_call(e, x);
      switch (e.func) {
        case Func::sin: return chain(a, f, std::cos(x), -f);
        case Func::cos: return chain(a, f, -std::sin(x), -f);
        case Func::tan: {
          const double sec2 = 1.0 + f * f;
          return chain(a, f, sec2, 2.0 * sec2 * f);
        }
        case Func::exp: return chain(a, f, f, f);
        case Func::log: return chain(a, f, 1.0 / x, -1.0 / (x * x));
        case Func::sqrt:
          if (x == 0.0) domain_fail("sqrt not differentiable at 0", e);
          return chain(a, f, 0.5 / f, -0.25 / (f * x));
      }
      break;
    }
  }
  return Jet2::constant(0.0, m);
}

}  // namespace

Jet2 eval_jet2(const Expr& e, std::span<const double> point, std::span<const double> constants) {
  return jet_of(e, point, constants);
}

double eval_value(const Expr& e, std::span<const double> point, std::span<const double> constants) {
  return value_of(e, point, constants);
}

}  // namespace slantcheck
