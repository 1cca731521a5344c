#pragma once

#include "slantcheck/linalg.hpp"
#include "slantcheck/report.hpp"

#include <cstdint>

namespace slantcheck {

/// The canonical cosymplectic structure (phi, xi, eta, g) on flat R^(2n+1) in the interleaved
/// coordinate layout (x1, y1, ..., xn, yn, z).
namespace ambient {

/// phi as a (2n+1)x(2n+1) matrix: d/dx_i -> d/dy_i, d/dy_i -> -d/dx_i, d/dz -> 0.
Mat phi_matrix(int n);

/// xi = d/dz.
Vec xi(int n);

/// Throws std::invalid_argument when v is not a vector of R^(2n+1).
void check_dimension(int n, const Vec& v);

Vec phi_apply(int n, const Vec& v);
double eta_of(int n, const Vec& v);
double metric_g(const Vec& v, const Vec& w);

/// Checks phi^2 = -I + eta (x) xi, eta o phi = 0, the metric compatibility and the vanishing of
/// nabla phi and nabla xi on `trials` seeded random vectors.
CheckReport verify_ambient_structure(int n, int trials, std::uint64_t seed, double tolerance = 1e-14);

}  // namespace ambient
}  // namespace slantcheck
