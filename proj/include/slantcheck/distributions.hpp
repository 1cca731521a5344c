#pragma once

#include "slantcheck/connection.hpp"
#include "slantcheck/expr.hpp"
#include "slantcheck/linalg.hpp"

#include <string>
#include <vector>

namespace slantcheck {

/// Spectral decomposition of TM read off the ambient operator S = -(P phi P)^2 - (I - P), whose
/// eigenvalue on a tangent eigenspace is cos^2 of its slant angle and -1 on the normal space.
struct AmbientPieces {
  struct Piece {
    std::string role;  // "D", "D1", "D2"
    double cos2 = 0.0;
    Mat proj;               // ambient orthogonal projector onto the piece
    std::vector<Mat> dproj;  // d(proj)/du_k
  };
  std::vector<Piece> pieces;

  const Piece* find(const std::string& role) const;
};

AmbientPieces ambient_pieces(const FrameContext& ctx, double cluster_gap);

/// Where the distribution suites take D, D1 and D2 from: the spec's declared distributions when
/// it declares any, the spectral pieces otherwise.
class PieceProvider {
 public:
  PieceProvider(const ImmersionSpec& spec, double cluster_gap);

  bool declared_mode() const { return declared_; }
  /// True when the role exists at every context.
  bool available(const std::string& role, const std::vector<FrameContext>& ctxs) const;
  /// Ambient orthogonal projector onto the piece at a point.
  Mat projector(const FrameContext& ctx, const std::string& role) const;
  /// cos^2 of the piece's slant angle at a point.
  double cos2(const FrameContext& ctx, const std::string& role) const;
  /// A section of the piece with seeded constant coefficients.
  Field section(const std::string& role, Rng& rng) const;

 private:
  const DeclaredDistribution* declared(const std::string& role) const;

  ImmersionSpec spec_;
  double gap_;
  bool declared_;
};

/// Section sum_f c_f X_f of a declared distribution.
Field declared_section(const ImmersionSpec& spec, const DeclaredDistribution& d, Vec coeffs);

/// Section proj(q) c of a spectral piece. Throws NumericError where the piece is absent.
Field spectral_section(std::string role, Vec c, double cluster_gap);

}  // namespace slantcheck
