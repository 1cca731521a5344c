#include "slantcheck/suites.hpp"

#include "slantcheck/ambient.hpp"
#include "slantcheck/connection.hpp"
#include "slantcheck/decomp.hpp"
#include "slantcheck/distributions.hpp"
#include "slantcheck/errors.hpp"
#include "slantcheck/immersion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>

namespace slantcheck {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

double theta_of_cos2(double c) { return std::acos(std::sqrt(std::clamp(c, 0.0, 1.0))); }

struct Run {
  const ImmersionSpec& spec;
  Tolerances tol;
  std::uint64_t seed;
  std::vector<FrameContext> ctxs;
  PieceProvider pieces;
  std::optional<std::string> hypothesis_failure;  // why the theorems' standing assumption fails
};

// The theorems assume constant slant angles on D1 and D2.
std::optional<std::string> check_hypothesis(const Run& run) {
  for (const char* role : {"D1", "D2"}) {
    if (!run.pieces.available(role, run.ctxs)) continue;
    const double ref = theta_of_cos2(run.pieces.cos2(run.ctxs.front(), role));
    double spread = 0.0;
    for (const FrameContext& ctx : run.ctxs) {
      spread = std::max(spread, std::abs(theta_of_cos2(run.pieces.cos2(ctx, role)) - ref));
    }
    if (spread > run.tol.angle_constancy) {
      return std::string("slant angle of ") + role + " varies by " + sci(spread) + " across sample points";
    }
  }
  return std::nullopt;
}

// Per-point helpers; every vector is ambient.
struct Point {
  const FrameContext& ctx;
  const FramePoint& fp;
  SecondFundamental sf;
  Mat Q;
  FieldJet xi;

  explicit Point(const FrameContext& c)
      : ctx(c), fp(c.fp), sf(second_fundamental(c.fp)), Q(c.fp.normal_projector()) {
    xi = FieldJet{ambient::xi(fp.n), Mat::Zero(fp.dim(), fp.m())};
  }

  // Tangential and normal parts of phi: T and F on tangent vectors, B and C on normal ones.
  Vec T(const Vec& v) const { return fp.P * (ctx.phi * v); }
  Vec F(const Vec& v) const { return Q * (ctx.phi * v); }
  Vec phi(const Vec& v) const { return ctx.phi * v; }
  Vec h(const Vec& x, const Vec& y) const { return h_of(sf, fp.coords(x), fp.coords(y)); }
  Vec A(const Vec& nu, const Vec& x) const { return fp.J * (shape_operator(fp, sf, nu) * fp.coords(x)); }
  Vec D(const FieldJet& x, const FieldJet& y) const { return directional(y, fp.coords(x.value)); }
  Vec nabla(const FieldJet& x, const FieldJet& y) const { return fp.J * induced_nabla(ctx, x, y); }
  Vec nperp(const FieldJet& x, const FieldJet& v) const { return normal_nabla(ctx, x, v); }
  FieldJet Tf(const FieldJet& w) const { return tangential_phi(ctx, w); }
  FieldJet Ff(const FieldJet& w) const { return normal_phi(ctx, w); }
  Vec bracket(const FieldJet& x, const FieldJet& y) const { return fp.J * lie_bracket(fp, x, y); }
  Vec cov(const FieldJet& z1, Operator op, const FieldJet& arg) const {
    return covariant_ops_derivative(ctx, z1, op, arg);
  }
};

std::vector<FieldJet> tangent_fields(const FrameContext& ctx, Rng& rng, int extra = 2) {
  std::vector<FieldJet> out;
  for (int i = 0; i < ctx.m(); ++i) out.push_back(coordinate_field(i)(ctx));
  for (int e = 0; e < extra; ++e) {
    Vec a0 = rng.normal_vector(ctx.m());
    Mat a1 = Mat::NullaryExpr(ctx.m(), ctx.m(), [&](Eigen::Index, Eigen::Index) { return 0.5 * rng.normal(); });
    out.push_back(affine_tangent_field(std::move(a0), std::move(a1), ctx.fp.p)(ctx));
  }
  return out;
}

std::vector<FieldJet> normal_fields(const FrameContext& ctx, Rng& rng, int count = 2) {
  std::vector<FieldJet> out;
  if (ctx.dim() == ctx.m()) return out;
  for (int e = 0; e < count; ++e) {
    Vec c = rng.normal_vector(ctx.dim());
    Mat c1 = Mat::NullaryExpr(ctx.dim(), ctx.m(), [&](Eigen::Index, Eigen::Index) { return 0.5 * rng.normal(); });
    out.push_back(normal_rule_field(std::move(c), std::move(c1), ctx.fp.p)(ctx));
  }
  return out;
}

// Normal test vectors: the normal frame plus two random normal vectors.
std::vector<Vec> normal_vectors(const FramePoint& fp, Rng& rng) {
  std::vector<Vec> out;
  for (int j = 0; j < fp.N.cols(); ++j) out.push_back(fp.N.col(j));
  for (int e = 0; e < 2 && fp.N.cols() > 0; ++e) out.push_back(fp.normal_projector() * rng.normal_vector(fp.dim()));
  return out;
}

FieldJet constant_tangent(const FrameContext& ctx, const Vec& ambient_vec) {
  return affine_tangent_field(ctx.fp.coords(ambient_vec), Mat::Zero(ctx.m(), ctx.m()), ctx.fp.p)(ctx);
}

void implication(RecordSet& rs, const std::string& id, double tol, bool hypothesis, double conclusion) {
  auto& acc = rs.get(id, tol, RecordKind::implication);
  if (hypothesis) acc.observe(conclusion);
}

double norm_max(const Vec& v) { return max_abs(v); }

// ---------------------------------------------------------------- gauss_weingarten

void gauss_weingarten(const Run& run, Rng& rng, RecordSet& rs) {
  const double ta = run.tol.algebraic;
  const double td = run.tol.derivative;
  for (const FrameContext& ctx : run.ctxs) {
    const Point pt(ctx);
    const FramePoint& fp = ctx.fp;
    const int m = fp.m();
    auto& split = rs.get("gauss_split", ta);
    auto& sym = rs.get("h_symmetric", ta);
    auto& normal = rs.get("h_normal", ta);
    auto& hxi = rs.get("h_xi", ta);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        split.observe(norm_max(Vec(fp.J * pt.sf.gamma.col(i * m + j) + pt.sf.at(i, j) - fp.hessian(i, j))));
        sym.observe(norm_max(Vec(pt.sf.at(i, j) - pt.sf.at(j, i))));
        normal.observe(norm_max(Vec(fp.P * pt.sf.at(i, j))));
      }
      hxi.observe(norm_max(h_of(pt.sf, Vec::Unit(m, i), fp.xi_coords)));
    }

    const auto xs = tangent_fields(ctx, rng);
    const auto vs = normal_fields(ctx, rng);
    auto& shape = rs.get("shape_metric", ta);
    auto& gauss = rs.get("gauss_fields", td);
    auto& btan = rs.get("bracket_tangent", td);
    auto& broutes = rs.get("bracket_routes", td);
    auto& wein = rs.get("weingarten", td);
    auto& compat = rs.get("metric_compat", td);
    for (const auto& x : xs) {
      for (const auto& y : xs) {
        const Vec dxy = pt.D(x, y);
        const Vec dyx = pt.D(y, x);
        gauss.observe(norm_max(Vec(pt.Q * dxy - pt.h(x.value, y.value))));
        btan.observe(norm_max(Vec(pt.Q * (dxy - dyx))));
        broutes.observe(norm_max(Vec(pt.bracket(x, y) - (dxy - dyx))));
        for (const auto& v : vs) shape.observe(pt.h(x.value, y.value).dot(v.value) - pt.A(v.value, x.value).dot(y.value));
      }
      for (const auto& v : vs) wein.observe(norm_max(Vec(fp.P * pt.D(x, v) + pt.A(v.value, x.value))));
    }
    const std::size_t k = std::min<std::size_t>(xs.size(), 3);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        const auto& x = xs[a];
        const auto& y = xs[b];
        const auto& z = xs[(a + b + 1) % k];
        const double lhs = pt.D(x, y).dot(z.value) + y.value.dot(pt.D(x, z));
        const double rhs = pt.nabla(x, y).dot(z.value) + y.value.dot(pt.nabla(x, z));
        compat.observe(lhs - rhs);
      }
    }
    rs.end_point();
  }
}

// ---------------------------------------------------------------- pointwise / definition

void pointwise(const Run& run, Rng& rng, RecordSet& rs) {
  for (const FrameContext& ctx : run.ctxs) {
    const StructureOps ops = structure_ops(ctx.fp);
    const SlantSpectrum s = slant_spectrum(ops, ctx.fp.G, ctx.fp.xi_coords, run.tol.cluster_gap);
    pointwise_identities(ctx.fp, ops, s, run.tol, rng, rs);
  }
}

// ---------------------------------------------------------------- lemma_3_5, lemma_3_6

void lemma_3_5(const Run& run, Rng& rng, RecordSet& rs) {
  const double td = run.tol.derivative;
  for (const FrameContext& ctx : run.ctxs) {
    const Point pt(ctx);
    const auto xs = tangent_fields(ctx, rng);
    auto& tan = rs.get("tangential_part", td);
    auto& nor = rs.get("normal_part", td);
    for (const auto& z1 : xs) {
      for (const auto& z2 : xs) {
        const Vec nz = pt.nabla(z1, z2);
        const Vec hz = pt.h(z1.value, z2.value);
        const Vec lhs_t = pt.nabla(z1, pt.Tf(z2)) - pt.T(nz);
        const Vec rhs_t = pt.A(pt.F(z2.value), z1.value) + pt.T(hz);
        tan.observe(norm_max(Vec(lhs_t - rhs_t)));
        const Vec lhs_n = pt.nperp(z1, pt.Ff(z2)) - pt.F(nz);
        const Vec rhs_n = pt.F(hz) - pt.h(z1.value, pt.T(z2.value));
        nor.observe(norm_max(Vec(lhs_n - rhs_n)));
      }
    }
    rs.end_point();
  }
}

void lemma_3_6(const Run& run, Rng& rng, RecordSet& rs) {
  const double td = run.tol.derivative;
  for (const FrameContext& ctx : run.ctxs) {
    const Point pt(ctx);
    const auto xs = tangent_fields(ctx, rng);
    const auto ws = normal_fields(ctx, rng);
    auto& tan = rs.get("tangential_part", td);
    auto& nor = rs.get("normal_part", td);
    for (const auto& z1 : xs) {
      for (const auto& w : ws) {
        const Vec nw = pt.nperp(z1, w);
        const Vec aw = pt.A(w.value, z1.value);
        const Vec lhs_t = pt.nabla(z1, pt.Tf(w)) - pt.T(nw);
        const Vec rhs_t = pt.A(pt.F(w.value), z1.value) - pt.T(aw);
        tan.observe(norm_max(Vec(lhs_t - rhs_t)));
        const Vec lhs_n = pt.nperp(z1, pt.Ff(w)) - pt.F(nw);
        const Vec rhs_n = -pt.F(aw) - pt.h(z1.value, pt.T(w.value));
        nor.observe(norm_max(Vec(lhs_n - rhs_n)));
      }
    }
    rs.end_point();
  }
}

// ---------------------------------------------------------------- lemma_5_1, parallel_*

void lemma_5_1(const Run& run, Rng& rng, RecordSet& rs) {
  const double td = run.tol.derivative;
  double printed_b = 0.0;
  for (const FrameContext& ctx : run.ctxs) {
    const Point pt(ctx);
    const auto xs = tangent_fields(ctx, rng);
    const auto ws = normal_fields(ctx, rng);
    auto& nt = rs.get("nabla_T", td);
    auto& nf = rs.get("nabla_F", td);
    auto& nb = rs.get("nabla_B", td);
    auto& nc = rs.get("nabla_C", td);
    auto& nxi = rs.get("nabla_T_xi", td);
    for (const auto& z1 : xs) {
      for (const auto& z2 : xs) {
        const Vec hz = pt.h(z1.value, z2.value);
        nt.observe(norm_max(Vec(pt.cov(z1, Operator::T, z2) - pt.A(pt.F(z2.value), z1.value) - pt.T(hz))));
        nf.observe(norm_max(Vec(pt.cov(z1, Operator::F, z2) - (pt.F(hz) - pt.h(z1.value, pt.T(z2.value))))));
      }
      for (const auto& w : ws) {
        const Vec aw = pt.A(w.value, z1.value);
        const Vec acw = pt.A(pt.F(w.value), z1.value);
        const Vec cb = pt.cov(z1, Operator::B, w);
        nb.observe(norm_max(Vec(cb - (acw - pt.T(aw)))));
        printed_b = std::max(printed_b, norm_max(Vec(cb - (acw + pt.T(aw)))));
        nc.observe(norm_max(Vec(pt.cov(z1, Operator::C, w) - (-pt.F(aw) - pt.h(z1.value, pt.T(w.value))))));
      }
      nxi.observe(norm_max(pt.cov(z1, Operator::T, pt.xi)));
    }
    rs.end_point();
  }
  rs.note("nabla_B", "checked with -T A_W Z1; the printed +T A_W Z1 variant has residual " + sci(printed_b));
}

void parallel_fb(const Run& run, Rng& rng, RecordSet& rs) {
  const double td = run.tol.derivative;
  for (const FrameContext& ctx : run.ctxs) {
    const Point pt(ctx);
    const auto xs = tangent_fields(ctx, rng);
    const auto ws = normal_fields(ctx, rng);
    auto& acc = rs.get("F_B_duality", td);
    for (const auto& z1 : xs) {
      for (const auto& z2 : xs) {
        for (const auto& w : ws) {
          acc.observe(pt.cov(z1, Operator::F, z2).dot(w.value) + pt.cov(z1, Operator::B, w).dot(z2.value));
        }
      }
    }
    rs.end_point();
  }
}

double nabla_op_norm(const Point& pt, Operator op) {
  double worst = 0.0;
  for (int i = 0; i < pt.fp.m(); ++i) {
    const FieldJet zi = coordinate_field(i)(pt.ctx);
    for (int j = 0; j < pt.fp.m(); ++j) {
      worst = std::max(worst, norm_max(pt.cov(zi, op, coordinate_field(j)(pt.ctx))));
    }
  }
  return worst;
}

void parallel_t(const Run& run, Rng& rng, RecordSet& rs) {
  const double td = run.tol.derivative;
  for (const FrameContext& ctx : run.ctxs) {
    const Point pt(ctx);
    const Mat pd = run.pieces.projector(ctx, "D");
    std::vector<FieldJet> ds;
    for (int e = 0; e < 3; ++e) ds.push_back(constant_tangent(ctx, pd * rng.normal_vector(ctx.dim())));
    double bh = 0.0;
    double nabla_d = 0.0;
    for (const auto& x : ds) {
      for (const auto& y : ds) {
        bh = std::max(bh, norm_max(pt.T(pt.h(x.value, y.value))));
        nabla_d = std::max(nabla_d, norm_max(pt.cov(x, Operator::T, y)));
      }
    }
    const double nabla_t = nabla_op_norm(pt, Operator::T);
    implication(rs, "parallel_implies_D_geodesic", td, nabla_t <= td, bh);
    implication(rs, "D_geodesic_implies_parallel_on_D", td, bh <= td, nabla_d);
    rs.end_point();
  }
}

void parallel_f(const Run& run, Rng& rng, RecordSet& rs) {
  const double td = run.tol.derivative;
  for (const FrameContext& ctx : run.ctxs) {
    const Point pt(ctx);
    const FramePoint& fp = ctx.fp;
    const std::vector<Vec> vs = normal_vectors(fp, rng);
    double cond = 0.0;
    for (int i = 0; i < fp.m(); ++i) {
      for (int j = 0; j < fp.m(); ++j) {
        const Vec z1 = fp.J.col(i);
        const Vec z2 = fp.J.col(j);
        for (const Vec& v : vs) {
          cond = std::max(cond, std::abs(pt.A(pt.F(v), z2).dot(z1) + pt.A(v, z1).dot(pt.T(z2))));
        }
      }
    }
    const double nabla_f = nabla_op_norm(pt, Operator::F);
    implication(rs, "parallel_implies_shape_condition", td, nabla_f <= td, cond);
    implication(rs, "shape_condition_implies_parallel", td, cond <= td, nabla_f);
    rs.end_point();
  }
}

// ---------------------------------------------------------------- distribution suites

struct DistributionSetup {
  std::string role;
  std::vector<Field> sections;
  std::vector<std::string> others;  // other roles available at every point
  std::vector<Field> other_sections;
};

DistributionSetup setup(const Run& run, const std::string& role, Rng& rng, int count) {
  DistributionSetup s;
  s.role = role;
  for (int e = 0; e < count; ++e) s.sections.push_back(run.pieces.section(role, rng));
  for (const char* other : {"D", "D1", "D2"}) {
    if (other == role || !run.pieces.available(other, run.ctxs)) continue;
    s.others.emplace_back(other);
    s.other_sections.push_back(run.pieces.section(other, rng));
  }
  return s;
}

// Tangent vectors orthogonal to the piece and to xi.
std::vector<Vec> complement_vectors(const Point& pt, const Mat& proj, Rng& rng, int count = 3) {
  const Vec xi = pt.xi.value;
  const Mat comp = pt.fp.P - proj - xi * xi.transpose();
  std::vector<Vec> out;
  for (int e = 0; e < count; ++e) {
    const Vec z = comp * rng.normal_vector(pt.fp.dim());
    if (z.norm() > 1e-8) out.push_back(z / z.norm());
  }
  return out;
}

std::vector<FieldJet> eval_all(const std::vector<Field>& fields, const FrameContext& ctx) {
  std::vector<FieldJet> out;
  for (const auto& f : fields) out.push_back(f(ctx));
  return out;
}

Mat projector_or_zero(const Run& run, const FrameContext& ctx, const DistributionSetup& s, const std::string& role) {
  if (std::find(s.others.begin(), s.others.end(), role) == s.others.end()) return Mat::Zero(ctx.dim(), ctx.dim());
  return run.pieces.projector(ctx, role);
}

void integrability_d(const Run& run, Rng& rng, RecordSet& rs) {
  const double td = run.tol.derivative;
  const DistributionSetup s = setup(run, "D", rng, 3);
  const std::pair<int, int> pairs[] = {{0, 1}, {1, 2}, {0, 2}};
  for (const FrameContext& ctx : run.ctxs) {
    const Point pt(ctx);
    const auto xs = eval_all(s.sections, ctx);
    const auto zs = complement_vectors(pt, run.pieces.projector(ctx, "D"), rng);
    auto& expansion = rs.get("bracket_expansion", td);
    auto& xi_part = rs.get("bracket_xi", td);
    double cond = 0.0;
    double concl = 0.0;
    for (auto [a, b] : pairs) {
      const FieldJet& x = xs[a];
      const FieldJet& y = xs[b];
      const Vec br = pt.bracket(x, y);
      const FieldJet tx = pt.Tf(x);
      const FieldJet ty = pt.Tf(y);
      const Vec tvec = pt.T(Vec(pt.nabla(y, tx) - pt.nabla(x, ty)));
      const Vec hdiff = pt.h(x.value, ty.value) - pt.h(y.value, tx.value);
      xi_part.observe(br.dot(pt.xi.value));
      concl = std::max(concl, std::abs(br.dot(pt.xi.value)));
      for (const Vec& z : zs) {
        const double lhs = br.dot(z);
        const double rhs = tvec.dot(z) + hdiff.dot(pt.phi(z));
        expansion.observe(lhs - rhs);
        cond = std::max(cond, std::abs(-tvec.dot(z) - hdiff.dot(pt.phi(z))));
        concl = std::max(concl, std::abs(lhs));
      }
    }
    implication(rs, "condition_implies_integrable", td, cond <= td, concl);
    implication(rs, "integrable_implies_condition", td, concl <= td, cond);
    rs.end_point();
  }
}

void integrability_slant(const Run& run, Rng& rng, RecordSet& rs, const std::string& role) {
  const double td = run.tol.derivative;
  const DistributionSetup s = setup(run, role, rng, 3);
  const std::pair<int, int> pairs[] = {{0, 1}, {1, 2}, {0, 2}};
  double printed = 0.0;
  for (const FrameContext& ctx : run.ctxs) {
    const Point pt(ctx);
    const Mat pr = run.pieces.projector(ctx, role);
    const double sin2 = 1.0 - run.pieces.cos2(ctx, role);
    const auto us = eval_all(s.sections, ctx);
    const auto zs = complement_vectors(pt, pr, rng);
    const auto zfields = eval_all(s.other_sections, ctx);
    auto& expansion = rs.get("bracket_expansion", td);
    auto& xi_part = rs.get("bracket_xi", td);
    double cond = 0.0;
    double concl = 0.0;
    for (auto [a, b] : pairs) {
      const FieldJet& u = us[a];
      const FieldJet& v = us[b];
      const Vec br = pt.bracket(u, v);
      const FieldJet fu = pt.Ff(u);
      const FieldJet fv = pt.Ff(v);
      const Vec ftv = pt.F(pt.T(v.value));
      const Vec ftu = pt.F(pt.T(u.value));
      const Vec a1 = pt.A(ftv, u.value) - pt.A(ftu, v.value);
      const Vec a2 = pt.A(fv.value, u.value) - pt.A(fu.value, v.value);
      const Vec a2p = pt.A(fv.value, u.value) + pt.A(fu.value, v.value);
      const Vec n1 = pt.nperp(u, fv) - pt.nperp(v, fu);
      const Vec n1p = pt.nperp(u, fv) + pt.nperp(v, fu);
      xi_part.observe(br.dot(pt.xi.value));
      concl = std::max(concl, std::abs(br.dot(pt.xi.value)));
      for (const Vec& z : zs) {
        const double lhs = sin2 * br.dot(z);
        expansion.observe(lhs - (a1.dot(z) - a2.dot(pt.T(z)) + n1.dot(pt.F(z))));
        const double printed_rhs = a1.dot(z) + a2p.dot(pt.T(z)) - n1p.dot(pt.F(z));
        printed = std::max(printed, std::abs(lhs - printed_rhs));
        concl = std::max(concl, std::abs(br.dot(z)));
        if (role == "D1") {
          // Stated condition: g(nperp_U FV + nperp_V FU, F R Z) = g(A_FTV U - A_FTU V, Z) + g(A_FV U + A_FU V, T Z).
          const Mat rproj = projector_or_zero(run, ctx, s, "D2");
          cond = std::max(cond, std::abs(n1p.dot(pt.F(Vec(rproj * z))) - a1.dot(z) - a2p.dot(pt.T(z))));
        }
      }
      if (role == "D2") {
        // Stated conditions, with both orderings of (U, V).
        for (int flip = 0; flip < 2; ++flip) {
          const FieldJet& uu = flip ? v : u;
          const FieldJet& vv = flip ? u : v;
          const FieldJet fvv = pt.Ff(vv);
          const Vec inner = pt.nabla(uu, pt.Tf(vv)) - pt.A(fvv.value, uu.value);
          const Vec tin = pt.T(inner);
          cond = std::max(cond, norm_max(Vec(tin - pr * tin)));
          cond = std::max(cond, norm_max(pt.T(Vec(pt.h(uu.value, pt.T(vv.value)) + pt.nperp(uu, fvv)))));
          for (const FieldJet& zf : zfields) {
            const double lhs_c = (pt.A(pt.F(zf.value), vv.value) - pt.nabla(vv, pt.Tf(zf))).dot(pt.T(uu.value));
            const double rhs_c = (pt.h(vv.value, pt.T(zf.value)) + pt.nperp(vv, pt.Ff(zf))).dot(pt.F(uu.value));
            cond = std::max(cond, std::abs(lhs_c - rhs_c));
          }
        }
      }
    }
    implication(rs, "condition_implies_integrable", td, cond <= td, concl);
    implication(rs, "integrable_implies_condition", td, concl <= td, cond);
    rs.end_point();
  }
  rs.note("bracket_expansion", "printed sign pattern (+T Z term, -(sum) F R Z term) has residual " + sci(printed));
}

void foliation_d(const Run& run, Rng& rng, RecordSet& rs) {
  const double td = run.tol.derivative;
  const DistributionSetup s = setup(run, "D", rng, 2);
  for (const FrameContext& ctx : run.ctxs) {
    const Point pt(ctx);
    const auto xs = eval_all(s.sections, ctx);
    const auto zs = complement_vectors(pt, run.pieces.projector(ctx, "D"), rng);
    const auto ws = normal_vectors(ctx.fp, rng);
    auto& xi_part = rs.get("xi_component", td);
    auto& tan = rs.get("tangential_expansion", td);
    auto& nor = rs.get("normal_expansion", td);
    double cond = 0.0;
    double concl = 0.0;
    for (const auto& x : xs) {
      for (const auto& y : xs) {
        const Vec dxy = pt.D(x, y);
        const FieldJet ty = pt.Tf(y);
        const Vec nty = pt.nabla(x, ty);
        const Vec ht = pt.h(x.value, ty.value);
        xi_part.observe(dxy.dot(pt.xi.value));
        concl = std::max(concl, std::abs(dxy.dot(pt.xi.value)));
        for (const Vec& z : zs) {
          const double c1 = nty.dot(pt.T(z)) + ht.dot(pt.F(z));
          tan.observe(dxy.dot(z) - c1);
          cond = std::max(cond, std::abs(c1));
          concl = std::max(concl, std::abs(dxy.dot(z)));
        }
        const Vec c2 = pt.F(nty) + pt.F(ht);
        cond = std::max(cond, norm_max(c2));
        for (const Vec& w : ws) {
          nor.observe(dxy.dot(w) + c2.dot(w));
          concl = std::max(concl, std::abs(dxy.dot(w)));
        }
      }
    }
    implication(rs, "conditions_imply_geodesic", td, cond <= td, concl);
    implication(rs, "geodesic_implies_conditions", td, concl <= td, cond);
    rs.end_point();
  }
}

void foliation_slant(const Run& run, Rng& rng, RecordSet& rs, const std::string& role) {
  const double td = run.tol.derivative;
  const DistributionSetup s = setup(run, role, rng, 2);
  for (const FrameContext& ctx : run.ctxs) {
    const Point pt(ctx);
    const Mat pr = run.pieces.projector(ctx, role);
    const double sin2 = 1.0 - run.pieces.cos2(ctx, role);
    const auto us = eval_all(s.sections, ctx);
    const auto zs = complement_vectors(pt, pr, rng);
    const auto ws = normal_vectors(ctx.fp, rng);
    const Mat pd = projector_or_zero(run, ctx, s, "D");
    const Mat p2 = projector_or_zero(run, ctx, s, "D2");
    auto& xi_part = rs.get("xi_component", td);
    auto& tan = rs.get("tangential_expansion", td);
    auto& nor = rs.get("normal_expansion", td);
    double cond = 0.0;
    double concl = 0.0;
    for (const auto& u : us) {
      for (const auto& v : us) {
        const Vec duv = pt.D(u, v);
        const FieldJet fv = pt.Ff(v);
        const FieldJet ftv = pt.Ff(pt.Tf(v));
        const Vec a_ftv = pt.A(ftv.value, u.value);
        const Vec a_fv = pt.A(fv.value, u.value);
        const Vec n_fv = pt.nperp(u, fv);
        const Vec n_ftv = pt.nperp(u, ftv);
        xi_part.observe(duv.dot(pt.xi.value));
        concl = std::max(concl, std::abs(duv.dot(pt.xi.value)));
        for (const Vec& z : zs) {
          tan.observe(sin2 * duv.dot(z) - (a_ftv.dot(z) - a_fv.dot(pt.T(z)) + n_fv.dot(pt.F(z))));
          concl = std::max(concl, std::abs(duv.dot(z)));
          if (role == "D1") {
            const Vec zp = pd * z;
            const Vec zr = p2 * z;
            cond = std::max(cond, std::abs(a_ftv.dot(z) - a_fv.dot(pt.T(zp)) - a_fv.dot(pt.T(zr)) + n_fv.dot(pt.F(zr))));
          }
        }
        const Vec nvec = pt.F(a_fv) - n_ftv - pt.F(n_fv);
        for (const Vec& w : ws) {
          nor.observe(sin2 * duv.dot(w) - nvec.dot(w));
          concl = std::max(concl, std::abs(duv.dot(w)));
          if (role == "D2") cond = std::max(cond, std::abs((n_ftv - pt.F(a_fv)).dot(w) - n_fv.dot(pt.F(w))));
        }
        if (role == "D1") cond = std::max(cond, norm_max(nvec));
        if (role == "D2") {
          const Vec tin = pt.T(Vec(pt.nabla(u, pt.Tf(v)) - a_fv));
          cond = std::max(cond, norm_max(Vec(tin - pr * tin)));
          cond = std::max(cond, norm_max(pt.T(Vec(pt.h(u.value, pt.T(v.value)) + n_fv))));
        }
      }
    }
    implication(rs, "conditions_imply_geodesic", td, cond <= td, concl);
    implication(rs, "geodesic_implies_conditions", td, concl <= td, cond);
    rs.end_point();
  }
}

// ---------------------------------------------------------------- registry

struct SuiteDef {
  const char* id;
  const char* role;  // distribution the suite needs, or nullptr
  std::function<void(const Run&, Rng&, RecordSet&)> body;
};

const std::vector<SuiteDef>& registry() {
  static const std::vector<SuiteDef> defs = {
      {"gauss_weingarten", nullptr, gauss_weingarten},
      {"pointwise", nullptr, pointwise},
      {"definition", nullptr, nullptr},
      {"lemma_3_5", nullptr, lemma_3_5},
      {"lemma_3_6", nullptr, lemma_3_6},
      {"lemma_5_1", nullptr, lemma_5_1},
      {"integrability_D", "D", integrability_d},
      {"integrability_D1", "D1", [](const Run& r, Rng& g, RecordSet& s) { integrability_slant(r, g, s, "D1"); }},
      {"integrability_D2", "D2", [](const Run& r, Rng& g, RecordSet& s) { integrability_slant(r, g, s, "D2"); }},
      {"foliation_D", "D", foliation_d},
      {"foliation_D1", "D1", [](const Run& r, Rng& g, RecordSet& s) { foliation_slant(r, g, s, "D1"); }},
      {"foliation_D2", "D2", [](const Run& r, Rng& g, RecordSet& s) { foliation_slant(r, g, s, "D2"); }},
      {"parallel_T", "D", parallel_t},
      {"parallel_F", nullptr, parallel_f},
      {"parallel_FB", nullptr, parallel_fb},
  };
  return defs;
}

std::size_t suite_index(std::string_view id) {
  const auto& defs = registry();
  for (std::size_t i = 0; i < defs.size(); ++i) {
    if (defs[i].id == id) return i;
  }
  std::string known;
  for (const auto& d : defs) known += std::string(known.empty() ? "" : ", ") + d.id;
  throw InputError("unknown suite '" + std::string(id) + "' (known: " + known + ")");
}

Run prepare(const ImmersionSpec& spec, int count, std::uint64_t seed, const Tolerances& tol) {
  tol.validate();
  std::vector<FrameContext> ctxs;
  for (FramePoint& fp : frames_at(spec, sample_points(spec, count, seed))) ctxs.emplace_back(std::move(fp));
  Run run{spec, tol, seed, std::move(ctxs), PieceProvider(spec, tol.cluster_gap), std::nullopt};
  run.hypothesis_failure = check_hypothesis(run);
  return run;
}

CheckReport execute(const Run& run, std::size_t index, int count, bool throw_if_missing) {
  const SuiteDef& def = registry()[index];
  CheckReport report;
  report.suite_id = def.id;
  if (std::string_view(def.id) == "definition") {
    report = verify_declared_distributions(run.spec, count, run.seed, run.tol);
    return report;
  }
  if (def.role && !run.pieces.available(def.role, run.ctxs)) {
    const std::string why = std::string("distribution ") + def.role +
                            (run.pieces.declared_mode() ? " is not declared"
                                                        : " has no eigenvalue group at every sample point");
    if (throw_if_missing) throw InputError("suite " + std::string(def.id) + " needs " + why);
    report.records.push_back(skipped_record("distribution_available", run.tol.derivative, why));
    report.note = why;
    return report;
  }
  Rng rng(run.seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
  RecordSet rs;
  def.body(run, rng, rs);
  report.records = rs.finish();
  if (run.hypothesis_failure) {
    // Implications restate theorems; outside their hypothesis they are not evaluated.
    for (auto& rec : report.records) {
      if (rec.kind != RecordKind::implication) continue;
      rec = skipped_record(rec.id, rec.tolerance, "theorem hypothesis not met: " + *run.hypothesis_failure);
      rec.kind = RecordKind::implication;
    }
  }
  if (def.role) {
    report.note = std::string(def.role) + (run.pieces.declared_mode() ? " from declared fields" : " from eigenvalue groups");
  }
  return report;
}

}  // namespace

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& d : registry()) out.emplace_back(d.id);
    return out;
  }();
  return ids;
}

bool is_distribution_suite(std::string_view id) { return registry()[suite_index(id)].role != nullptr; }

CheckReport run_suite(const ImmersionSpec& spec, std::string_view suite_id, int count, std::uint64_t seed,
                      const Tolerances& tol) {
  const std::size_t index = suite_index(suite_id);
  const Run run = prepare(spec, count, seed, tol);
  return execute(run, index, count, true);
}

std::vector<CheckReport> run_all(const ImmersionSpec& spec, int count, std::uint64_t seed, const Tolerances& tol) {
  const Run run = prepare(spec, count, seed, tol);
  std::vector<CheckReport> out;
  for (std::size_t i = 0; i < registry().size(); ++i) out.push_back(execute(run, i, count, false));
  return out;
}

}  // namespace slantcheck
