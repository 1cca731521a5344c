#include "slantcheck/linalg.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace slantcheck {

std::string format_point(const Vec& p) {
  std::string out = "(";
  char buf[32];
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", p(i));
    if (i > 0) out += ", ";
    out += buf;
  }
  return out + ")";
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller; 1 - uniform() lies in (0, 1] so the log is finite.
  const double r = std::sqrt(-2.0 * std::log(1.0 - uniform()));
  const double t = 2.0 * std::numbers::pi * uniform();
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

Vec Rng::normal_vector(Eigen::Index size) {
  Vec v(size);
  for (Eigen::Index i = 0; i < size; ++i) v(i) = normal();
  return v;
}

}  // namespace slantcheck
