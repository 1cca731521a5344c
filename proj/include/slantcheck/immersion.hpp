#pragma once

#include "slantcheck/expr.hpp"
#include "slantcheck/linalg.hpp"

#include <cstdint>
#include <vector>

namespace slantcheck {

/// Immersion data at one parameter point.
struct FramePoint {
  int n = 0;
  Vec p;          // parameter point, size m
  Vec x;          // image point, size 2n+1
  Mat J;          // (2n+1) x m, column j is d/du_j
  Mat H;          // (2n+1) x m*m, column i*m+j is d^2/du_i du_j
  Mat G;          // induced metric J^T J
  Mat Ginv;
  Mat P;          // tangential projector J Ginv J^T
  Mat N;          // (2n+1) x (2n+1-m), orthonormal normal frame
  Vec xi_coords;  // J xi_coords = xi

  int m() const { return static_cast<int>(J.cols()); }
  int dim() const { return static_cast<int>(J.rows()); }

  /// (2n+1) x m block of second derivatives d/du_k d/du_j, j = 0..m-1.
  Mat hessian_slice(int k) const { return H.middleCols(k * m(), m()); }
  /// Second derivative d^2/du_i du_j.
  Vec hessian(int i, int j) const { return H.col(i * m() + j); }
  /// Ambient pushforward of tangent coordinates.
  Vec push(const Vec& coords) const { return J * coords; }
  /// Tangent coordinates of an ambient vector's tangential part.
  Vec coords(const Vec& ambient) const { return Ginv * (J.transpose() * ambient); }
  Mat normal_projector() const { return Mat::Identity(dim(), dim()) - P; }
};

/// Relative rank threshold on the eigenvalues of G.
inline constexpr double kRankThreshold = 1e-12;
/// Maximum residual of J xi_coords - xi accepted as tangency.
inline constexpr double kXiTangencyTolerance = 1e-9;

/// Evaluates the immersion and its frame at p. Throws ImmersionError when G loses rank or xi is
/// not tangent, DomainError when a coordinate expression is undefined at p.
FramePoint frame_at(const ImmersionSpec& spec, const Vec& p);

/// Frames at every point. Immersion failures are collected and rethrown as one ImmersionError
/// listing every failing point.
std::vector<FramePoint> frames_at(const ImmersionSpec& spec, const std::vector<Vec>& points);

/// Scrambled Halton points inside the domain box shrunk by 1% per side. count == 1 yields the
/// box center.
std::vector<Vec> sample_points(const ImmersionSpec& spec, int count, std::uint64_t seed);

/// dP/du_k in closed form from J and H.
Mat projector_derivative(const FramePoint& fp, int k);

/// All m projector derivatives.
std::vector<Mat> projector_derivatives(const FramePoint& fp);

Mat tangential_projector_jet(const ImmersionSpec& spec, const Vec& p, int k);

}  // namespace slantcheck
