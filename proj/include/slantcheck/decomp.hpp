#pragma once

#include "slantcheck/expr.hpp"
#include "slantcheck/immersion.hpp"
#include "slantcheck/linalg.hpp"
#include "slantcheck/report.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace slantcheck {

/// Tangential and normal parts of phi at a point. T acts on tangent coordinates, F maps tangent
/// coordinates to ambient normal vectors, B and C act on coordinates in the normal frame N.
struct StructureOps {
  Mat T;  // m x m
  Mat F;  // dim x m
  Mat B;  // m x (dim - m)
  Mat C;  // (dim - m) x (dim - m)
};

StructureOps structure_ops(const FramePoint& fp);

struct SpectralGroup {
  double value = 0.0;  // cos^2 of the slant angle, snapped to 0 or 1 within the cluster gap
  double mean = 0.0;   // unsnapped mean of the group's eigenvalues
  int multiplicity = 0;
  double theta = 0.0;
  int first = 0;  // columns [first, first + multiplicity) of SlantSpectrum::vectors
};

/// Eigen-decomposition of the pencil (T^T G T, G).
struct SlantSpectrum {
  Vec eigenvalues;  // descending, clamped to [0, 1]
  Mat vectors;      // G-orthonormal eigenvectors, column i belongs to eigenvalues(i)
  std::vector<SpectralGroup> groups;
  bool xi_in_zero_group = false;

  Mat group_basis(std::size_t g) const { return vectors.middleCols(groups[g].first, groups[g].multiplicity); }
  /// Index of the group with value 1 (or 0), if present.
  std::optional<std::size_t> invariant_group() const;
  std::optional<std::size_t> zero_group() const;
  /// Groups with value strictly inside (0, 1), in descending order of value.
  std::vector<std::size_t> interior_groups() const;
};

/// Slack allowed outside [0, 1] before an eigenvalue is treated as a solver failure.
inline constexpr double kSpectrumSlack = 1e-8;

SlantSpectrum slant_spectrum(const StructureOps& ops, const Mat& G, const Vec& xi_coords, double cluster_gap = 1e-8);

/// G-orthonormal basis of the non-xi part of the zero group, i.e. the anti-invariant directions.
Mat anti_invariant_basis(const SlantSpectrum& s, const Mat& G, const Vec& xi_coords);

/// G-orthogonal projector onto the column span of a G-orthonormal basis.
inline Mat g_projector(const Mat& basis, const Mat& G) { return basis * basis.transpose() * G; }

/// One ingredient of the tangent decomposition at a point.
struct TangentPiece {
  std::string role;  // "D", "D1", "D2"
  double cos2 = 0.0;
  Mat basis;  // G-orthonormal, m x k
};

/// Auto-detected pieces at a point: D is the value-1 group, D1 and D2 the interior groups in
/// descending order, then the anti-invariant part of the zero group as the last slant piece
/// when a slot is free.
std::vector<TangentPiece> spectral_pieces(const FramePoint& fp, const SlantSpectrum& s);

enum class Label {
  invariant,
  anti_invariant,
  semi_invariant,
  slant,
  semi_slant,
  hemi_slant,
  bi_slant,
  quasi_bi_slant,
  proper_quasi_bi_slant,
  outside_taxonomy
};

std::string_view label_name(Label l);

struct Classification {
  Label label = Label::outside_taxonomy;
  std::array<int, 3> dims{0, 0, 0};  // D, D1, D2; xi adds one
  std::optional<double> theta1;
  std::optional<double> theta2;
  double constancy_residual = 0.0;
  std::vector<std::pair<double, int>> clusters;  // (cos^2, multiplicity) at the first point
  int points = 0;
  std::vector<std::string> notes;

  /// Slant angles of D1 and D2 that are present, ascending.
  std::vector<double> angles() const;
};

/// Maps group data of a single point through the taxonomy table. d1_first selects whether the
/// first interior group plays D1 (only meaningful with two interior groups).
Classification classify_groups(int invariant_dim, int anti_dim, const std::vector<std::pair<double, int>>& interior,
                               bool d1_first = true);

Classification classify(const ImmersionSpec& spec, int count, std::uint64_t seed, const Tolerances& tol);

/// Coordinate values of a declared distribution's fields at a point, one column per field.
Mat declared_values(const ImmersionSpec& spec, const DeclaredDistribution& d, const Vec& p);

/// cos^2 of the Wirtinger angles of the span of J*X (one per direction, ascending). Throws
/// NumericError when the columns are not independent.
Vec wirtinger_cos2(const FramePoint& fp, const Mat& X);

CheckReport verify_declared_distributions(const ImmersionSpec& spec, int count, std::uint64_t seed,
                                          const Tolerances& tol);

/// Adds the pointwise lemma residuals at one point to `out`.
void pointwise_identities(const FramePoint& fp, const StructureOps& ops, const SlantSpectrum& spectrum,
                          const Tolerances& tol, Rng& rng, RecordSet& out);

CheckReport verify_pointwise_identities(const FramePoint& fp, const StructureOps& ops, const SlantSpectrum& spectrum,
                                        const Tolerances& tol, std::uint64_t seed = 0);

/// Random G-unit vector in the span of a G-orthonormal basis. Throws NumericError after ten
/// degenerate draws.
Vec draw_in_span(const Mat& basis, const Mat& G, Rng& rng);

}  // namespace slantcheck
