#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <string>

namespace slantcheck {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
inline double max_abs(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

/// Formats a point as "(a, b, c)" with 17 significant digits.
std::string format_point(const Vec& p);

/// Deterministic random source. Uses only the raw mt19937_64 stream so results do not
/// depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  Vec normal_vector(Eigen::Index size);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace slantcheck
