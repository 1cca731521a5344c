#include "slantcheck/connection.hpp"

#include "slantcheck/ambient.hpp"
#include "slantcheck/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace slantcheck {

namespace {

constexpr double kKindTolerance = 1e-8;

}  // namespace

FrameContext::FrameContext(FramePoint frame)
    : fp(std::move(frame)), dP(projector_derivatives(fp)), phi(ambient::phi_matrix(fp.n)) {}

void require_tangent(const FramePoint& fp, const Vec& v, const char* what) {
  const double off = max_abs(Vec(v - fp.P * v));
  if (off > kKindTolerance * std::max(1.0, max_abs(v))) {
    throw InputError(std::string(what) + " is not tangent at p=" + format_point(fp.p));
  }
}

void require_normal(const FramePoint& fp, const Vec& v, const char* what) {
  const double off = max_abs(Vec(fp.P * v));
  if (off > kKindTolerance * std::max(1.0, max_abs(v))) {
    throw InputError(std::string(what) + " is not normal at p=" + format_point(fp.p));
  }
}

SecondFundamental second_fundamental(const FramePoint& fp) {
  const int m = fp.m();
  SecondFundamental sf;
  sf.m = m;
  sf.h.resize(static_cast<std::size_t>(m * m));
  sf.gamma.resize(m, m * m);
  const Mat q = fp.normal_projector();
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      const Vec hij = fp.hessian(i, j);
      const Vec normal = q * hij;
      const Vec tangent = fp.coords(hij);
      sf.h[static_cast<std::size_t>(i * m + j)] = normal;
      sf.h[static_cast<std::size_t>(j * m + i)] = normal;
      sf.gamma.col(i * m + j) = tangent;
      sf.gamma.col(j * m + i) = tangent;
    }
  }
  return sf;
}

Vec h_of(const SecondFundamental& sf, const Vec& x, const Vec& y) {
  Vec out = Vec::Zero(sf.h.empty() ? 0 : sf.h.front().size());
  for (int i = 0; i < sf.m; ++i) {
    for (int j = 0; j < sf.m; ++j) {
      const double w = x(i) * y(j);
      if (w != 0.0) out += w * sf.at(i, j);
    }
  }
  return out;
}

Mat shape_operator(const FramePoint& fp, const SecondFundamental& sf, const Vec& v) {
  if (v.size() != fp.dim()) throw std::invalid_argument("dimension mismatch in shape_operator");
  require_normal(fp, v, "shape operator argument");
  const int m = fp.m();
  Mat M(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      M(i, j) = M(j, i) = sf.at(i, j).dot(v);
    }
  }
  return fp.Ginv * M;
}

Mat shape_operator(const FramePoint& fp, const Vec& v) { return shape_operator(fp, second_fundamental(fp), v); }

Vec induced_nabla(const FrameContext& ctx, const FieldJet& x, const FieldJet& y) {
  require_tangent(ctx.fp, x.value, "direction field");
  require_tangent(ctx.fp, y.value, "tangent field");
  return ctx.fp.coords(directional(y, ctx.fp.coords(x.value)));
}

Vec normal_nabla(const FrameContext& ctx, const FieldJet& x, const FieldJet& v) {
  require_tangent(ctx.fp, x.value, "direction field");
  require_normal(ctx.fp, v.value, "normal field");
  const Vec d = directional(v, ctx.fp.coords(x.value));
  return d - ctx.fp.P * d;
}

Vec weingarten_tangent(const FrameContext& ctx, const FieldJet& x, const FieldJet& v) {
  require_tangent(ctx.fp, x.value, "direction field");
  require_normal(ctx.fp, v.value, "normal field");
  return ctx.fp.coords(directional(v, ctx.fp.coords(x.value)));
}

FieldJet tangential_phi(const FrameContext& ctx, const FieldJet& w) {
  const Vec phw = ctx.phi * w.value;
  FieldJet out;
  out.value = ctx.fp.P * phw;
  out.deriv.resize(ctx.dim(), ctx.m());
  const Mat pphi = ctx.fp.P * ctx.phi;
  for (int k = 0; k < ctx.m(); ++k) out.deriv.col(k) = ctx.dP[k] * phw + pphi * w.deriv.col(k);
  return out;
}

FieldJet normal_phi(const FrameContext& ctx, const FieldJet& w) {
  const Vec phw = ctx.phi * w.value;
  FieldJet out;
  out.value = phw - ctx.fp.P * phw;
  out.deriv.resize(ctx.dim(), ctx.m());
  const Mat qphi = ctx.fp.normal_projector() * ctx.phi;
  for (int k = 0; k < ctx.m(); ++k) out.deriv.col(k) = -ctx.dP[k] * phw + qphi * w.deriv.col(k);
  return out;
}

Vec covariant_ops_derivative(const FrameContext& ctx, const FieldJet& z1, Operator target, const FieldJet& arg) {
  const FramePoint& fp = ctx.fp;
  require_tangent(fp, z1.value, "direction field");
  const Vec xc = fp.coords(z1.value);
  const Mat q = fp.normal_projector();
  const bool tangent_arg = target == Operator::T || target == Operator::F;
  if (tangent_arg) {
    require_tangent(fp, arg.value, "operator argument");
  } else {
    require_normal(fp, arg.value, "operator argument");
  }
  const Vec d_arg = directional(arg, xc);
  // Connection applied to the argument: tangential part for T/F, normal part for B/C.
  const Vec conn_arg = tangent_arg ? Vec(fp.P * d_arg) : Vec(q * d_arg);
  const Vec phi_conn = ctx.phi * conn_arg;
  switch (target) {
    case Operator::T:
    case Operator::B: {
      const Vec d = directional(tangential_phi(ctx, arg), xc);
      return fp.P * d - fp.P * phi_conn;
    }
    case Operator::F:
    case Operator::C: {
      const Vec d = directional(normal_phi(ctx, arg), xc);
      return q * d - q * phi_conn;
    }
  }
  throw std::logic_error("unknown operator");
}

TangentCoeffs tangent_coeffs(const FramePoint& fp, const FieldJet& w) {
  TangentCoeffs c;
  c.a = fp.coords(w.value);
  c.da.resize(fp.m(), fp.m());
  for (int k = 0; k < fp.m(); ++k) c.da.col(k) = fp.coords(Vec(w.deriv.col(k) - fp.hessian_slice(k) * c.a));
  return c;
}

Vec lie_bracket(const TangentCoeffs& x, const TangentCoeffs& y) { return y.da * x.a - x.da * y.a; }

Vec lie_bracket(const FramePoint& fp, const FieldJet& x, const FieldJet& y) {
  return lie_bracket(tangent_coeffs(fp, x), tangent_coeffs(fp, y));
}

Field coordinate_field(int i) {
  return [i](const FrameContext& ctx) {
    if (i < 0 || i >= ctx.m()) throw std::invalid_argument("coordinate field index out of range");
    FieldJet f;
    f.value = ctx.fp.J.col(i);
    f.deriv.resize(ctx.dim(), ctx.m());
    for (int k = 0; k < ctx.m(); ++k) f.deriv.col(k) = ctx.fp.hessian(k, i);
    return f;
  };
}

Field affine_tangent_field(Vec a0, Mat a1, Vec p0) {
  return [a0 = std::move(a0), a1 = std::move(a1), p0 = std::move(p0)](const FrameContext& ctx) {
    const Vec a = a0 + a1 * (ctx.fp.p - p0);
    FieldJet f;
    f.value = ctx.fp.J * a;
    f.deriv.resize(ctx.dim(), ctx.m());
    for (int k = 0; k < ctx.m(); ++k) f.deriv.col(k) = ctx.fp.hessian_slice(k) * a + ctx.fp.J * a1.col(k);
    return f;
  };
}

Field normal_rule_field(Vec c, Mat c1, Vec p0) {
  return [c = std::move(c), c1 = std::move(c1), p0 = std::move(p0)](const FrameContext& ctx) {
    const Vec base = c + c1 * (ctx.fp.p - p0);
    const Mat q = ctx.fp.normal_projector();
    FieldJet f;
    f.value = q * base;
    f.deriv.resize(ctx.dim(), ctx.m());
    for (int k = 0; k < ctx.m(); ++k) f.deriv.col(k) = -ctx.dP[k] * base + q * c1.col(k);
    return f;
  };
}

Field constant_field(Vec v) {
  return [v = std::move(v)](const FrameContext& ctx) {
    return FieldJet{v, Mat::Zero(ctx.dim(), ctx.m())};
  };
}

}  // namespace slantcheck
