#pragma once

#include "slantcheck/immersion.hpp"
#include "slantcheck/linalg.hpp"

#include <functional>
#include <vector>

namespace slantcheck {

/// Frame plus the data every field derivative needs: the projector derivatives and phi.
struct FrameContext {
  FramePoint fp;
  std::vector<Mat> dP;  // dP/du_k
  Mat phi;

  explicit FrameContext(FramePoint frame);
  int m() const { return fp.m(); }
  int dim() const { return fp.dim(); }
};

/// An ambient-valued field along the immersion and its partial derivatives in the parameters:
/// column k of `deriv` is d(value)/du_k.
struct FieldJet {
  Vec value;
  Mat deriv;
};

/// Vector field along M, evaluable at any frame.
using Field = std::function<FieldJet(const FrameContext&)>;

/// Ambient derivative of W along the tangent vector with frame coordinates xc.
inline Vec directional(const FieldJet& w, const Vec& xc) { return w.deriv * xc; }

struct SecondFundamental {
  std::vector<Vec> h;  // index i*m+j, normal part of d^2 x/du_i du_j
  Mat gamma;           // m x m*m, tangential part in frame coordinates (Christoffel symbols)
  int m = 0;
  const Vec& at(int i, int j) const { return h[static_cast<std::size_t>(i * m + j)]; }
};

SecondFundamental second_fundamental(const FramePoint& fp);

/// h(X, Y) for tangent vectors given in frame coordinates.
Vec h_of(const SecondFundamental& sf, const Vec& x, const Vec& y);

/// Shape operator A_V in frame coordinates: A_V = Ginv M with M_ij = g(h_ij, V). Throws
/// InputError when V is not normal.
Mat shape_operator(const FramePoint& fp, const SecondFundamental& sf, const Vec& v);
Mat shape_operator(const FramePoint& fp, const Vec& v);

/// Tangential part of D_X Y, in frame coordinates. X and Y must be tangent.
Vec induced_nabla(const FrameContext& ctx, const FieldJet& x, const FieldJet& y);
/// Normal part of D_X V. V must be normal.
Vec normal_nabla(const FrameContext& ctx, const FieldJet& x, const FieldJet& v);
/// Tangential part of D_X V, which equals -A_V X.
Vec weingarten_tangent(const FrameContext& ctx, const FieldJet& x, const FieldJet& v);

/// Tangential part of phi applied to a field (T on tangent fields, B on normal fields).
FieldJet tangential_phi(const FrameContext& ctx, const FieldJet& w);
/// Normal part of phi applied to a field (F on tangent fields, C on normal fields).
FieldJet normal_phi(const FrameContext& ctx, const FieldJet& w);

enum class Operator { T, F, B, C };

/// (nabla_{Z1} T)Z2, (nabla_{Z1} F)Z2, (nabla_{Z1} B)W1 or (nabla_{Z1} C)W1 as an ambient vector.
Vec covariant_ops_derivative(const FrameContext& ctx, const FieldJet& z1, Operator target, const FieldJet& arg);

/// Coefficients a of a tangent field W = J a and their partials (column k = da/du_k).
struct TangentCoeffs {
  Vec a;
  Mat da;
};
TangentCoeffs tangent_coeffs(const FramePoint& fp, const FieldJet& w);

/// [X,Y]^k = sum_i (a_i d_i b_k - b_i d_i a_k).
Vec lie_bracket(const TangentCoeffs& x, const TangentCoeffs& y);
Vec lie_bracket(const FramePoint& fp, const FieldJet& x, const FieldJet& y);

void require_tangent(const FramePoint& fp, const Vec& v, const char* what);
void require_normal(const FramePoint& fp, const Vec& v, const char* what);

// Field sources.

/// d/du_i.
Field coordinate_field(int i);
/// Tangent field with coefficients a0 + A1 (q - p0).
Field affine_tangent_field(Vec a0, Mat a1, Vec p0);
/// Normal field (I - P(q)) (c + C1 (q - p0)).
Field normal_rule_field(Vec c, Mat c1, Vec p0);
/// A constant ambient vector such as xi.
Field constant_field(Vec v);

}  // namespace slantcheck
