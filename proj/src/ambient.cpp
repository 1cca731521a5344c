#include "slantcheck/ambient.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace slantcheck::ambient {

Mat phi_matrix(int n) {
  Mat phi = Mat::Zero(2 * n + 1, 2 * n + 1);
  for (int i = 0; i < n; ++i) {
    phi(2 * i + 1, 2 * i) = 1.0;   // x_i -> y_i
    phi(2 * i, 2 * i + 1) = -1.0;  // y_i -> -x_i
  }
  return phi;
}

Vec xi(int n) {
  Vec v = Vec::Zero(2 * n + 1);
  v(2 * n) = 1.0;
  return v;
}

void check_dimension(int n, const Vec& v) {
  if (v.size() != 2 * n + 1) {
    throw std::invalid_argument("dimension mismatch: expected ambient vector of size " + std::to_string(2 * n + 1) +
                                ", got " + std::to_string(v.size()));
  }
}

Vec phi_apply(int n, const Vec& v) {
  check_dimension(n, v);
  Vec out = Vec::Zero(v.size());
  for (int i = 0; i < n; ++i) {
    out(2 * i + 1) = v(2 * i);
    out(2 * i) = -v(2 * i + 1);
  }
  return out;
}

double eta_of(int n, const Vec& v) {
  check_dimension(n, v);
  return v(2 * n);
}

double metric_g(const Vec& v, const Vec& w) {
  if (v.size() != w.size() || v.size() % 2 == 0) {
    throw std::invalid_argument("dimension mismatch in metric_g");
  }
  return v.dot(w);
}

CheckReport verify_ambient_structure(int n, int trials, std::uint64_t seed, double tolerance) {
  if (trials < 1) throw std::invalid_argument("verify_ambient_structure needs trials >= 1");
  Rng rng(seed);
  const int dim = 2 * n + 1;
  const Vec x = xi(n);
  const Mat phi = phi_matrix(n);

  ResidualAccumulator phi_square("phi_square", tolerance);
  ResidualAccumulator eta_phi("eta_phi", tolerance);
  ResidualAccumulator metric_compat("metric_compat", tolerance);
  ResidualAccumulator nabla_phi("nabla_phi", tolerance);
  ResidualAccumulator nabla_xi("nabla_xi", tolerance);

  for (int t = 0; t < trials; ++t) {
    const Vec v = rng.normal_vector(dim);
    const Vec w = rng.normal_vector(dim);
    const Vec pv = phi_apply(n, v);
    phi_square.observe(max_abs(Vec(phi_apply(n, pv) - (-v + eta_of(n, v) * x))));
    eta_phi.observe(eta_of(n, pv));
    phi_square.observe(max_abs(phi_apply(n, x)));
    eta_phi.observe(eta_of(n, x) - 1.0);
    const double lhs = metric_g(pv, phi_apply(n, w));
    const double rhs = metric_g(v, w) - eta_of(n, v) * eta_of(n, w);
    metric_compat.observe(lhs - rhs);
    metric_compat.observe(eta_of(n, v) - metric_g(v, x));

    // The ambient connection is coordinate differentiation. With a linear field Y(q) = A q the
    // directional derivative along v is exactly the difference Y(q + v) - Y(q) = A v, so
    // (nabla_u phi)Y = [phi Y(q + u) - phi Y(q)] - phi(A u) must vanish. Small integer entries keep
    // every difference exact.
    auto small_int = [&](Eigen::Index, Eigen::Index) { return std::floor(rng.uniform(-4.0, 4.0)); };
    const Mat a = Mat::NullaryExpr(dim, dim, small_int);
    const Vec q = Mat::NullaryExpr(dim, 1, small_int);
    const Vec u = Mat::NullaryExpr(dim, 1, small_int);
    const Vec d_phi_y = phi_apply(n, a * (q + u)) - phi_apply(n, a * q);
    nabla_phi.observe(max_abs(Vec(d_phi_y - phi_apply(n, a * u))));
    nabla_phi.observe(max_abs(Vec(phi * w - phi_apply(n, w))));
    // xi is the same coordinate vector at every point.
    nabla_xi.observe(max_abs(Vec(xi(n) - x)));
    nabla_xi.observe(eta_of(n, phi_apply(n, a * q)));

    for (auto* acc : {&phi_square, &eta_phi, &metric_compat, &nabla_phi, &nabla_xi}) acc->end_point();
  }

  CheckReport report;
  report.suite_id = "ambient";
  report.records = {phi_square.finish(), eta_phi.finish(), metric_compat.finish(), nabla_phi.finish(),
                    nabla_xi.finish()};
  return report;
}

}  // namespace slantcheck::ambient
