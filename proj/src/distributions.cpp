#include "slantcheck/distributions.hpp"

#include "slantcheck/ambient.hpp"
#include "slantcheck/decomp.hpp"
#include "slantcheck/errors.hpp"
#include "slantcheck/jet.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace slantcheck {

const AmbientPieces::Piece* AmbientPieces::find(const std::string& role) const {
  for (const auto& p : pieces) {
    if (p.role == role) return &p;
  }
  return nullptr;
}

AmbientPieces ambient_pieces(const FrameContext& ctx, double gap) {
  const FramePoint& fp = ctx.fp;
  const int dim = fp.dim();
  const Mat& P = fp.P;
  const Mat A = P * ctx.phi * P;
  Mat S = -(A * A) - fp.normal_projector();
  S = 0.5 * (S + S.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> eig(S);
  if (eig.info() != Eigen::Success) throw NumericError("eigen-solver failed on the ambient slant operator");
  const Vec& mu = eig.eigenvalues();  // ascending
  const Mat& V = eig.eigenvectors();

  std::vector<Mat> dS;
  for (int k = 0; k < fp.m(); ++k) {
    const Mat dA = ctx.dP[k] * ctx.phi * P + P * ctx.phi * ctx.dP[k];
    dS.push_back(-(dA * A + A * dA) + ctx.dP[k]);
  }

  // Clusters in descending order of eigenvalue, tangent ones only (the normal space sits at -1).
  struct Cluster {
    int lo, hi;  // [lo, hi) in ascending index
    double value;
  };
  std::vector<Cluster> clusters;
  int end = dim;
  for (int i = dim - 1; i >= 0; --i) {
    if (i == 0 || mu(i) - mu(i - 1) > gap) {
      double v = mu.segment(i, end - i).mean();
      if (std::abs(v - 1.0) <= gap) v = 1.0;
      if (std::abs(v) <= gap) v = 0.0;
      if (v >= -gap) clusters.push_back({i, end, v});
      end = i;
    }
  }

  auto projector_jet = [&](const Cluster& c, AmbientPieces::Piece& piece) {
    piece.proj = V.middleCols(c.lo, c.hi - c.lo) * V.middleCols(c.lo, c.hi - c.lo).transpose();
    for (int k = 0; k < fp.m(); ++k) {
      Mat d = Mat::Zero(dim, dim);
      for (int i = c.lo; i < c.hi; ++i) {
        for (int j = 0; j < dim; ++j) {
          if (j >= c.lo && j < c.hi) continue;
          const double w = V.col(i).dot(dS[k] * V.col(j)) / (mu(i) - mu(j));
          d += w * (V.col(i) * V.col(j).transpose() + V.col(j) * V.col(i).transpose());
        }
      }
      piece.dproj.push_back(std::move(d));
    }
  };

  AmbientPieces out;
  std::vector<AmbientPieces::Piece> slant;
  for (const Cluster& c : clusters) {
    AmbientPieces::Piece piece;
    piece.cos2 = c.value;
    projector_jet(c, piece);
    if (c.value == 1.0) {
      piece.role = "D";
      out.pieces.push_back(std::move(piece));
    } else if (c.value == 0.0) {
      const Vec xi = ambient::xi(fp.n);
      piece.proj -= xi * xi.transpose();
      if (c.hi - c.lo > 1) slant.push_back(std::move(piece));
    } else {
      slant.push_back(std::move(piece));
    }
  }
  // Zero cluster comes last in descending order already.
  for (std::size_t i = 0; i < slant.size() && i < 2; ++i) {
    slant[i].role = i == 0 ? "D1" : "D2";
    out.pieces.push_back(std::move(slant[i]));
  }
  return out;
}

Field declared_section(const ImmersionSpec& spec, const DeclaredDistribution& d, Vec coeffs) {
  if (coeffs.size() != static_cast<Eigen::Index>(d.fields.size())) {
    throw std::invalid_argument("section coefficient count does not match the distribution");
  }
  return [fields = d.fields, constants = spec.constant_values(), coeffs = std::move(coeffs)](const FrameContext& ctx) {
    const int m = ctx.m();
    const std::span<const double> point(ctx.fp.p.data(), static_cast<std::size_t>(m));
    Vec a = Vec::Zero(m);
    Mat da = Mat::Zero(m, m);
    for (std::size_t f = 0; f < fields.size(); ++f) {
      for (int i = 0; i < m; ++i) {
        const Jet2 jet = eval_jet2(fields[f][i], point, constants);
        a(i) += coeffs(static_cast<Eigen::Index>(f)) * jet.value;
        da.row(i) += coeffs(static_cast<Eigen::Index>(f)) * jet.grad.transpose();
      }
    }
    FieldJet w;
    w.value = ctx.fp.J * a;
    w.deriv.resize(ctx.dim(), m);
    for (int k = 0; k < m; ++k) w.deriv.col(k) = ctx.fp.hessian_slice(k) * a + ctx.fp.J * da.col(k);
    return w;
  };
}

Field spectral_section(std::string role, Vec c, double gap) {
  return [role = std::move(role), c = std::move(c), gap](const FrameContext& ctx) {
    const AmbientPieces pieces = ambient_pieces(ctx, gap);
    const AmbientPieces::Piece* piece = pieces.find(role);
    if (!piece) throw NumericError("distribution " + role + " is absent at p=" + format_point(ctx.fp.p));
    FieldJet w;
    w.value = piece->proj * c;
    w.deriv.resize(ctx.dim(), ctx.m());
    for (int k = 0; k < ctx.m(); ++k) w.deriv.col(k) = piece->dproj[k] * c;
    return w;
  };
}

PieceProvider::PieceProvider(const ImmersionSpec& spec, double gap) : spec_(spec), gap_(gap) {
  declared_ = spec_.find_distribution("D") || spec_.find_distribution("D1") || spec_.find_distribution("D2");
}

const DeclaredDistribution* PieceProvider::declared(const std::string& role) const {
  return spec_.find_distribution(role);
}

bool PieceProvider::available(const std::string& role, const std::vector<FrameContext>& ctxs) const {
  if (declared_) return declared(role) != nullptr;
  for (const FrameContext& ctx : ctxs) {
    if (!ambient_pieces(ctx, gap_).find(role)) return false;
  }
  return !ctxs.empty();
}

Mat PieceProvider::projector(const FrameContext& ctx, const std::string& role) const {
  if (declared_) {
    const DeclaredDistribution* d = declared(role);
    if (!d) throw std::logic_error("distribution " + role + " not declared");
    const Mat Y = ctx.fp.J * declared_values(spec_, *d, ctx.fp.p);
    return Y * (Y.transpose() * Y).ldlt().solve(Y.transpose());
  }
  const AmbientPieces pieces = ambient_pieces(ctx, gap_);
  const AmbientPieces::Piece* piece = pieces.find(role);
  if (!piece) throw NumericError("distribution " + role + " is absent at p=" + format_point(ctx.fp.p));
  return piece->proj;
}

double PieceProvider::cos2(const FrameContext& ctx, const std::string& role) const {
  if (declared_) {
    const DeclaredDistribution* d = declared(role);
    if (!d) throw std::logic_error("distribution " + role + " not declared");
    return wirtinger_cos2(ctx.fp, declared_values(spec_, *d, ctx.fp.p)).mean();
  }
  const AmbientPieces pieces = ambient_pieces(ctx, gap_);
  const AmbientPieces::Piece* piece = pieces.find(role);
  if (!piece) throw NumericError("distribution " + role + " is absent at p=" + format_point(ctx.fp.p));
  return piece->cos2;
}

Field PieceProvider::section(const std::string& role, Rng& rng) const {
  if (declared_) {
    const DeclaredDistribution* d = declared(role);
    if (!d) throw std::logic_error("distribution " + role + " not declared");
    return declared_section(spec_, *d, rng.normal_vector(static_cast<Eigen::Index>(d->fields.size())));
  }
  return spectral_section(role, rng.normal_vector(spec_.ambient_dim()), gap_);
}

}  // namespace slantcheck
