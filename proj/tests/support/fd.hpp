#pragma once

#include "slantcheck/expr.hpp"
#include "slantcheck/immersion.hpp"
#include "slantcheck/jet.hpp"
#include "slantcheck/linalg.hpp"

namespace slantcheck::testing {

inline constexpr double kFdStep = 1e-5;

/// Central-difference gradient of a scalar function of the parameters.
template <class F>
Vec fd_gradient(const F& f, const Vec& p, double h = kFdStep) {
  Vec g(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    Vec a = p, b = p;
    a(i) += h;
    b(i) -= h;
    g(i) = (f(a) - f(b)) / (2 * h);
  }
  return g;
}

/// Central-difference Hessian from the four-point mixed stencil.
template <class F>
Mat fd_hessian(const F& f, const Vec& p, double h = kFdStep) {
  const Eigen::Index m = p.size();
  Mat out(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      auto at = [&](double si, double sj) {
        Vec q = p;
        q(i) += si * h;
        q(j) += sj * h;
        return f(q);
      };
      out(i, j) = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4 * h * h);
    }
  }
  return out;
}

/// Finite-difference derivative of an ambient-vector or matrix valued quantity along u_k.
template <class F>
Mat fd_partial(const F& f, const Vec& p, int k, double h = kFdStep) {
  Vec a = p, b = p;
  a(k) += h;
  b(k) -= h;
  return (f(a) - f(b)) / (2 * h);
}

/// Image point of the immersion, evaluated coordinate by coordinate.
inline Vec image_point(const ImmersionSpec& spec, const Vec& p) {
  const auto consts = spec.constant_values();
  Vec x(spec.ambient_dim());
  for (int s = 0; s < spec.ambient_dim(); ++s) {
    x(s) = eval_value(spec.coords[static_cast<std::size_t>(s)], std::span(p.data(), static_cast<std::size_t>(p.size())),
                      consts);
  }
  return x;
}

}  // namespace slantcheck::testing
