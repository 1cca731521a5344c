#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "slantcheck/catalog.hpp"
#include "slantcheck/errors.hpp"
#include "slantcheck/immersion.hpp"
#include "support/fd.hpp"
#include "support/random_spec.hpp"

using namespace slantcheck;
using namespace slantcheck::testing;

TEST_CASE("identity plane frame") {
  const ImmersionSpec s = parse_spec("ambient 5; params u v z; map { x1=u; y1=v; z=z }");
  const FramePoint fp = frame_at(s, Vec::Zero(3));
  CHECK(fp.m() == 3);
  CHECK(fp.dim() == 5);
  CHECK(max_abs(Mat(fp.G - Mat::Identity(3, 3))) == 0.0);
  CHECK(fp.N.cols() == 2);
  CHECK(max_abs(Mat(fp.J.transpose() * fp.N)) <= 1e-15);
  CHECK(fp.xi_coords.isApprox(Vec::Unit(3, 2)));
}

TEST_CASE("collapsed rank is reported per point") {
  const ImmersionSpec s = parse_spec("ambient 5; params u v z; map { x1 = u + v; y1 = u + v; z = z }");
  try {
    frames_at(s, sample_points(s, 4, 0));
    FAIL("expected ImmersionError");
  } catch (const ImmersionError& e) {
    CHECK(e.kind() == ImmersionError::Kind::not_immersion);
    const std::string msg = e.what();
    CHECK(msg.find("4 of 4 sample points failed") != std::string::npos);
    CHECK(msg.find("p=(") != std::string::npos);
  }
}

TEST_CASE("xi must be tangent") {
  const ImmersionSpec s = parse_spec("ambient 5; params u v; map { x1 = u; y1 = v; z = u*v }");
  try {
    frame_at(s, Vec{{0.3, 0.2}});
    FAIL("expected ImmersionError");
  } catch (const ImmersionError& e) {
    CHECK(e.kind() == ImmersionError::Kind::xi_not_tangent);
  }
}

TEST_CASE("sample points are deterministic and inside the box") {
  const ImmersionSpec s = make_example("curved_probe");
  const auto a = sample_points(s, 16, 5);
  const auto b = sample_points(s, 16, 5);
  REQUIRE(a.size() == 16);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i] == b[i]);
    CHECK(a[i](0) > 0.5);
    CHECK(a[i](0) < 1.5);
  }
  CHECK(sample_points(s, 16, 6)[0] != a[0]);
  const auto c = sample_points(s, 1, 0);
  CHECK(c[0](0) == doctest::Approx(1.0));
}

TEST_CASE("oracle: Jacobian, Hessian and projector derivatives match central differences") {
  double worst_j = 0, worst_h = 0, worst_p = 0;
  for (int draw = 0; draw < 100; ++draw) {
    const int dim = draw % 2 ? 11 : 7;
    const int m = 2 + draw % (dim == 7 ? 5 : 7);
    const ImmersionSpec s = random_immersion(1000 + draw, dim, m, 1);
    Rng rng(draw);
    Vec p(m);
    for (int i = 0; i < m; ++i) p(i) = rng.uniform(-0.9, 0.9);
    const FramePoint fp = frame_at(s, p);
    for (int k = 0; k < m; ++k) {
      const Mat dj = fd_partial([&](const Vec& q) { return Mat(image_point(s, q)); }, p, k);
      worst_j = std::max(worst_j, max_abs(Mat(dj - fp.J.col(k))));
      const Mat dh = fd_partial([&](const Vec& q) { return Mat(frame_at(s, q).J); }, p, k);
      worst_h = std::max(worst_h, max_abs(Mat(dh - fp.hessian_slice(k))));
      const Mat dp = fd_partial([&](const Vec& q) { return frame_at(s, q).P; }, p, k);
      worst_p = std::max(worst_p, max_abs(Mat(dp - projector_derivative(fp, k))));
    }
    for (int i = 0; i < s.ambient_dim(); ++i) {
      auto coord = [&](const Vec& q) { return image_point(s, q)(i); };
      const Mat h = fd_hessian(coord, p);
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) worst_h = std::max(worst_h, std::abs(h(a, b) - fp.hessian(a, b)(i)));
      }
    }
  }
  MESSAGE("Jacobian " << worst_j << ", Hessian " << worst_h << ", projector derivative " << worst_p);
  CHECK(worst_j <= 1e-6);
  CHECK(worst_h <= 1e-4);
  CHECK(worst_p <= 1e-5);
}

TEST_CASE("property: frame invariants on random immersions") {
  for (int draw = 0; draw < 20; ++draw) {
    const int dim = draw % 2 ? 11 : 7;
    const ImmersionSpec s = random_immersion(500 + draw, dim, 3 + draw % 4);
    for (const FramePoint& fp : frames_at(s, sample_points(s, 16, draw))) {
      const int m = fp.m();
      CHECK(max_abs(Mat(fp.G - fp.G.transpose())) <= 1e-12);
      Eigen::SelfAdjointEigenSolver<Mat> es(fp.G);
      CHECK(es.eigenvalues().minCoeff() > 0);
      CHECK(max_abs(Mat(fp.P * fp.P - fp.P)) <= 1e-10);
      CHECK(max_abs(Mat(fp.P - fp.P.transpose())) <= 1e-10);
      CHECK(max_abs(Mat(fp.G * fp.Ginv - Mat::Identity(m, m))) <= 1e-10);
      CHECK(max_abs(Mat(fp.N.transpose() * fp.N - Mat::Identity(fp.N.cols(), fp.N.cols()))) <= 1e-10);
      CHECK(max_abs(Mat(fp.N.transpose() * fp.J)) <= 1e-10);
      CHECK(max_abs(Vec(fp.J * fp.xi_coords - Vec::Unit(fp.dim(), fp.dim() - 1))) <= 1e-10);
    }
  }
}

TEST_CASE("tangential_projector_jet agrees with the frame route") {
  const ImmersionSpec s = make_example("curved_probe");
  const Vec p{{1.1, 0.2, -0.3}};
  const FramePoint fp = frame_at(s, p);
  CHECK(max_abs(Mat(tangential_projector_jet(s, p, 0) - projector_derivative(fp, 0))) <= 1e-14);
}
