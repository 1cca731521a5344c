#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "slantcheck/ambient.hpp"

#include <stdexcept>

using namespace slantcheck;
using namespace slantcheck::ambient;

namespace {

Vec unit(int n, int slot) { return Vec::Unit(2 * n + 1, slot); }

}  // namespace

TEST_CASE("phi maps dx_i to dy_i and dy_i to -dx_i") {
  CHECK(phi_apply(3, unit(3, 0)) == unit(3, 1));
  CHECK(phi_apply(3, unit(3, 3)) == Vec(-unit(3, 2)));
  CHECK(max_abs(phi_apply(3, xi(3))) == 0.0);
  CHECK(phi_apply(3, phi_apply(3, unit(3, 2))) == Vec(-unit(3, 2)));
}

TEST_CASE("eta and the metric") {
  CHECK(eta_of(2, xi(2)) == 1.0);
  CHECK(metric_g(unit(2, 0), unit(2, 1)) == 0.0);
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const Vec v = rng.normal_vector(11);
    const Vec w = rng.normal_vector(11);
    const double lhs = metric_g(phi_apply(5, v), phi_apply(5, w));
    const double rhs = metric_g(v, w) - eta_of(5, v) * eta_of(5, w);
    CHECK(std::abs(lhs - rhs) <= 1e-13);
  }
}

TEST_CASE("phi is skew and squares to -I + eta xi") {
  const Mat phi = phi_matrix(4);
  const Vec z = xi(4);
  CHECK(max_abs(Mat(phi + phi.transpose())) == 0.0);
  CHECK(max_abs(Mat(phi * phi + Mat::Identity(9, 9) - z * z.transpose())) == 0.0);
}

TEST_CASE("dimension mismatches are rejected") {
  CHECK_THROWS_AS(phi_apply(2, Vec::Zero(4)), std::invalid_argument);
  CHECK_THROWS_AS(eta_of(2, Vec::Zero(7)), std::invalid_argument);
  CHECK_THROWS_AS(metric_g(Vec::Zero(5), Vec::Zero(3)), std::invalid_argument);
}

TEST_CASE("verify_ambient_structure reports the fixed id set") {
  const CheckReport r = verify_ambient_structure(5, 100, 1);
  CHECK(r.pass());
  const char* ids[] = {"phi_square", "eta_phi", "metric_compat", "nabla_phi", "nabla_xi"};
  REQUIRE(r.records.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(r.records[i].id == ids[i]);
    CHECK(r.records[i].max_residual <= 1e-14);
  }
  CHECK(verify_ambient_structure(1, 1, 0).pass());
}
