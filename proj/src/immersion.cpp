#include "slantcheck/immersion.hpp"

#include "slantcheck/ambient.hpp"
#include "slantcheck/errors.hpp"
#include "slantcheck/jet.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace slantcheck {

namespace {

// Orthonormal basis of range(Q) by Gram-Schmidt with column pivoting: at each step take the
// remaining column of largest norm, ties going to the lower index.
Mat pivoted_orthonormal_columns(const Mat& q, int count) {
  Mat work = q;
  Mat basis(q.rows(), count);
  std::vector<bool> used(q.cols(), false);
  for (int c = 0; c < count; ++c) {
    int best = -1;
    double best_norm = -1.0;
    for (int j = 0; j < work.cols(); ++j) {
      if (used[j]) continue;
      const double nrm = work.col(j).norm();
      if (nrm > best_norm) {
        best_norm = nrm;
        best = j;
      }
    }
    if (best < 0 || best_norm <= 1e-10) throw NumericError("normal space basis lost rank");
    used[best] = true;
    Vec v = work.col(best) / best_norm;
    // Second pass keeps the basis orthonormal to working precision.
    for (int k = 0; k < c; ++k) v -= basis.col(k).dot(v) * basis.col(k);
    v.normalize();
    basis.col(c) = v;
    for (int j = 0; j < work.cols(); ++j) {
      if (!used[j]) work.col(j) -= v.dot(work.col(j)) * v;
    }
  }
  return basis;
}

double radical_inverse(std::uint64_t i, int base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (i > 0) {
    result += f * static_cast<double>(i % base);
    i /= base;
    f /= base;
  }
  return result;
}

constexpr int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
                           73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151};

}  // namespace

FramePoint frame_at(const ImmersionSpec& spec, const Vec& p) {
  const int m = spec.param_count();
  const int dim = spec.ambient_dim();
  if (p.size() != m) {
    throw std::invalid_argument("parameter point has " + std::to_string(p.size()) + " entries, spec has " +
                                std::to_string(m) + " parameters");
  }
  const std::vector<double> constants = spec.constant_values();
  const std::span<const double> point(p.data(), static_cast<std::size_t>(m));

  FramePoint fp;
  fp.n = spec.n;
  fp.p = p;
  fp.x.resize(dim);
  fp.J.resize(dim, m);
  fp.H.resize(dim, m * m);
  for (int a = 0; a < dim; ++a) {
    const Jet2 jet = eval_jet2(spec.coords[a], point, constants);
    fp.x(a) = jet.value;
    fp.J.row(a) = jet.grad.transpose();
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) fp.H(a, i * m + j) = jet.hess(i, j);
    }
  }

  fp.G = fp.J.transpose() * fp.J;
  Eigen::SelfAdjointEigenSolver<Mat> eig(fp.G, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(hi > 0.0) || lo < kRankThreshold * hi) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "smallest/largest eigenvalue of G = %.3e/%.3e", lo, hi);
    throw ImmersionError(ImmersionError::Kind::not_immersion,
                         "not an immersion at p=" + format_point(p) + ": " + buf);
  }
  Mat ginv = fp.G.ldlt().solve(Mat::Identity(m, m));
  fp.Ginv = 0.5 * (ginv + ginv.transpose());
  const Mat p_tan = fp.J * fp.Ginv * fp.J.transpose();
  fp.P = 0.5 * (p_tan + p_tan.transpose());

  const Vec xi = ambient::xi(spec.n);
  fp.xi_coords = fp.coords(xi);
  const double xi_residual = max_abs(Vec(fp.J * fp.xi_coords - xi));
  if (xi_residual > kXiTangencyTolerance) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", xi_residual);
    throw ImmersionError(ImmersionError::Kind::xi_not_tangent,
                         "xi not tangent at p=" + format_point(p) + ": residual of J*xi_coords - xi is " + buf);
  }

  fp.N = dim > m ? pivoted_orthonormal_columns(fp.normal_projector(), dim - m) : Mat(dim, 0);
  return fp;
}

std::vector<FramePoint> frames_at(const ImmersionSpec& spec, const std::vector<Vec>& points) {
  std::vector<FramePoint> out;
  out.reserve(points.size());
  std::string diagnostics;
  int failures = 0;
  ImmersionError::Kind kind = ImmersionError::Kind::not_immersion;
  for (const Vec& p : points) {
    try {
      out.push_back(frame_at(spec, p));
    } catch (const ImmersionError& e) {
      if (failures == 0) kind = e.kind();
      ++failures;
      diagnostics += "\n  ";
      diagnostics += e.what();
    }
  }
  if (failures > 0) {
    throw ImmersionError(kind, std::to_string(failures) + " of " + std::to_string(points.size()) +
                                   " sample points failed:" + diagnostics);
  }
  return out;
}

std::vector<Vec> sample_points(const ImmersionSpec& spec, int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("sample count must be >= 1");
  const int m = spec.param_count();
  Vec lo(m), width(m);
  for (int j = 0; j < m; ++j) {
    const Interval& iv = spec.domain[j];
    const double margin = 0.01 * (iv.hi - iv.lo);
    lo(j) = iv.lo + margin;
    width(j) = (iv.hi - iv.lo) - 2.0 * margin;
  }
  std::vector<Vec> points;
  if (count == 1) {
    points.push_back(lo + 0.5 * width);
    return points;
  }
  if (m > static_cast<int>(std::size(kPrimes))) throw std::invalid_argument("too many parameters for sampling");
  Rng rng(seed);
  Vec shift(m);
  for (int j = 0; j < m; ++j) shift(j) = rng.uniform();
  for (int i = 0; i < count; ++i) {
    Vec q(m);
    for (int j = 0; j < m; ++j) {
      double t = radical_inverse(static_cast<std::uint64_t>(i) + 1, kPrimes[j]) + shift(j);
      t -= std::floor(t);
      q(j) = lo(j) + t * width(j);
    }
    points.push_back(std::move(q));
  }
  return points;
}

Mat projector_derivative(const FramePoint& fp, int k) {
  if (k < 0 || k >= fp.m()) throw std::invalid_argument("direction index out of range");
  const Mat dj = fp.hessian_slice(k);
  const Mat dg = dj.transpose() * fp.J + fp.J.transpose() * dj;
  const Mat dginv = -fp.Ginv * dg * fp.Ginv;
  const Mat a = dj * fp.Ginv * fp.J.transpose();
  return a + a.transpose() + fp.J * dginv * fp.J.transpose();
}

std::vector<Mat> projector_derivatives(const FramePoint& fp) {
  std::vector<Mat> out;
  out.reserve(fp.m());
  for (int k = 0; k < fp.m(); ++k) out.push_back(projector_derivative(fp, k));
  return out;
}

Mat tangential_projector_jet(const ImmersionSpec& spec, const Vec& p, int k) {
  return projector_derivative(frame_at(spec, p), k);
}

}  // namespace slantcheck
