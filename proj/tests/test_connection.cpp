#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "slantcheck/catalog.hpp"
#include "slantcheck/connection.hpp"
#include "slantcheck/errors.hpp"
#include "support/fd.hpp"
#include "support/random_spec.hpp"

using namespace slantcheck;
using namespace slantcheck::testing;

namespace {

std::vector<ImmersionSpec> specimens() {
  std::vector<ImmersionSpec> out = {make_example("curved_probe")};
  for (int draw = 0; draw < 6; ++draw) out.push_back(random_immersion(900 + draw, draw % 2 ? 11 : 7, 3 + draw));
  return out;
}

Vec interior_point(const ImmersionSpec& s, Rng& rng) {
  Vec p(s.param_count());
  for (int i = 0; i < p.size(); ++i) {
    const auto& d = s.domain[static_cast<std::size_t>(i)];
    p(i) = rng.uniform(0.8 * d.lo + 0.2 * d.hi, 0.2 * d.lo + 0.8 * d.hi);
  }
  return p;
}

}  // namespace

TEST_CASE("oracle: second fundamental form and Christoffel symbols from differences of J and G") {
  Rng rng(1);
  for (const ImmersionSpec& s : specimens()) {
    const Vec p = interior_point(s, rng);
    const FramePoint fp = frame_at(s, p);
    const SecondFundamental sf = second_fundamental(fp);
    const int m = fp.m();
    std::vector<Mat> dG(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) dG[static_cast<std::size_t>(k)] = fd_partial([&](const Vec& q) { return frame_at(s, q).G; }, p, k);
    for (int i = 0; i < m; ++i) {
      const Mat dJ = fd_partial([&](const Vec& q) { return frame_at(s, q).J; }, p, i);
      for (int j = 0; j < m; ++j) {
        CHECK(max_abs(Vec(fp.normal_projector() * dJ.col(j) - sf.at(i, j))) <= 1e-6);
        Vec gamma_oracle(m);
        for (int k = 0; k < m; ++k) {
          double acc = 0;
          for (int l = 0; l < m; ++l) {
            acc += 0.5 * fp.Ginv(k, l) *
                   (dG[static_cast<std::size_t>(i)](j, l) + dG[static_cast<std::size_t>(j)](i, l) -
                    dG[static_cast<std::size_t>(l)](i, j));
          }
          gamma_oracle(k) = acc;
        }
        CHECK(max_abs(Vec(sf.gamma.col(i * m + j) - gamma_oracle)) <= 1e-5);
        const FrameContext ctx(fp);
        const Vec nab = induced_nabla(ctx, coordinate_field(i)(ctx), coordinate_field(j)(ctx));
        CHECK(max_abs(Vec(nab - sf.gamma.col(i * m + j))) <= 1e-12);
      }
    }
  }
}

TEST_CASE("shape operator is G-self-adjoint and dual to h") {
  Rng rng(2);
  for (const ImmersionSpec& s : specimens()) {
    const FramePoint fp = frame_at(s, interior_point(s, rng));
    const SecondFundamental sf = second_fundamental(fp);
    const Vec v = fp.normal_projector() * rng.normal_vector(fp.dim());
    const Mat A = shape_operator(fp, sf, v);
    CHECK(max_abs(Mat(fp.G * A - (fp.G * A).transpose())) <= 1e-10);
    const Vec x = rng.normal_vector(fp.m());
    const Vec y = rng.normal_vector(fp.m());
    CHECK(std::abs(h_of(sf, x, y).dot(v) - (fp.G * A * x).dot(y)) <= 1e-10);
    CHECK_THROWS_AS(shape_operator(fp, sf, fp.J.col(0)), InputError);
  }
}

TEST_CASE("oracle: field derivatives match differences of field values") {
  Rng rng(3);
  for (const ImmersionSpec& s : specimens()) {
    const Vec p = interior_point(s, rng);
    const int m = s.param_count();
    const int dim = s.ambient_dim();
    const Field x = affine_tangent_field(rng.normal_vector(m), Mat::Random(m, m), p);
    const Field v = normal_rule_field(rng.normal_vector(dim), Mat::Random(dim, m), p);
    auto at = [&](const Vec& q) { return FrameContext(frame_at(s, q)); };
    const FrameContext ctx = at(p);
    for (int k = 0; k < m; ++k) {
      for (const Field* f : {&x, &v}) {
        const Mat fd = fd_partial([&](const Vec& q) { return Mat((*f)(at(q)).value); }, p, k);
        CHECK(max_abs(Mat(fd - (*f)(ctx).deriv.col(k))) <= 1e-6);
        const Mat fdt = fd_partial([&](const Vec& q) { const auto c = at(q); return Mat(tangential_phi(c, (*f)(c)).value); }, p, k);
        CHECK(max_abs(Mat(fdt - tangential_phi(ctx, (*f)(ctx)).deriv.col(k))) <= 1e-6);
        const Mat fdn = fd_partial([&](const Vec& q) { const auto c = at(q); return Mat(normal_phi(c, (*f)(c)).value); }, p, k);
        CHECK(max_abs(Mat(fdn - normal_phi(ctx, (*f)(ctx)).deriv.col(k))) <= 1e-6);
      }
      const Mat dp = fd_partial([&](const Vec& q) { return frame_at(s, q).P; }, p, k);
      CHECK(max_abs(Mat(dp - ctx.dP[static_cast<std::size_t>(k)])) <= 1e-5);
    }
    CHECK(max_abs(Vec(v(ctx).value - ctx.fp.normal_projector() * v(ctx).value)) <= 1e-12);
  }
}

TEST_CASE("oracle: Lie bracket of affine fields") {
  Rng rng(4);
  for (const ImmersionSpec& s : specimens()) {
    const Vec p = interior_point(s, rng);
    const int m = s.param_count();
    const Vec a0 = rng.normal_vector(m), b0 = rng.normal_vector(m);
    const Mat a1 = Mat::Random(m, m), b1 = Mat::Random(m, m);
    const FrameContext ctx(frame_at(s, p));
    const FieldJet x = affine_tangent_field(a0, a1, p)(ctx);
    const FieldJet y = affine_tangent_field(b0, b1, p)(ctx);
    // [a, b] = (Db) a - (Da) b for coefficient fields a(q) = a0 + A1 (q - p).
    const Vec expected = b1 * a0 - a1 * b0;
    CHECK(max_abs(Vec(lie_bracket(ctx.fp, x, y) - expected)) <= 1e-10);
    CHECK(max_abs(Vec(lie_bracket(ctx.fp, x, x))) <= 1e-12);
  }
}

TEST_CASE("oracle: covariant derivative of T from differences of T d_j") {
  Rng rng(5);
  for (const ImmersionSpec& s : specimens()) {
    const Vec p = interior_point(s, rng);
    const FrameContext ctx(frame_at(s, p));
    const FramePoint& fp = ctx.fp;
    for (int i = 0; i < fp.m(); ++i) {
      for (int j = 0; j < fp.m(); ++j) {
        const Mat d = fd_partial(
            [&](const Vec& q) {
              const FramePoint f = frame_at(s, q);
              return Mat(f.P * ctx.phi * f.J.col(j));
            },
            p, i);
        const Vec oracle = fp.P * d.col(0) - fp.P * ctx.phi * fp.P * fp.hessian(i, j);
        const Vec got = covariant_ops_derivative(ctx, coordinate_field(i)(ctx), Operator::T, coordinate_field(j)(ctx));
        CHECK(max_abs(Vec(got - oracle)) <= 1e-6);
      }
    }
  }
}

TEST_CASE("tangency checks reject the wrong kind of vector") {
  const ImmersionSpec s = make_example("curved_probe");
  const FrameContext ctx(frame_at(s, Vec{{1.0, 0.0, 0.0}}));
  const FieldJet normal{ctx.fp.N.col(0), Mat::Zero(5, 3)};
  CHECK_THROWS_AS(induced_nabla(ctx, coordinate_field(0)(ctx), normal), InputError);
  CHECK_THROWS_AS(normal_nabla(ctx, coordinate_field(0)(ctx), coordinate_field(1)(ctx)), InputError);
}
