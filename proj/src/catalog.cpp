#include "slantcheck/catalog.hpp"

#include "slantcheck/errors.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace slantcheck {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Distribution made of coordinate fields d/d(param[i]) for the given indices.
std::string coordinate_distribution(const std::string& name, int m, const std::vector<int>& indices) {
  std::ostringstream out;
  out << "distribution " << name << " {";
  for (std::size_t f = 0; f < indices.size(); ++f) {
    out << (f ? ", " : " ") << "(";
    for (int c = 0; c < m; ++c) out << (c ? ", " : "") << (c == indices[f] ? "1" : "0");
    out << ")";
  }
  out << " }\n";
  return out.str();
}

std::string example_3_3(const std::map<std::string, double>& v) {
  std::ostringstream out;
  out << "# proper quasi bi-slant submanifold of R^11\n"
      << "ambient 11\n"
      << "const theta1 = " << num(v.at("theta1")) << "\n"
      << "const theta2 = " << num(v.at("theta2")) << "\n"
      << "params u s w k t r z\n"
      << "map {\n"
      << "  x1 = u; y1 = s*cos(theta1); y2 = s*sin(theta1)\n"
      << "  x3 = w; y3 = k*cos(theta2); y4 = k*sin(theta2)\n"
      << "  x5 = t; y5 = r; z = z\n"
      << "}\n"
      << coordinate_distribution("D", 7, {4, 5}) << coordinate_distribution("D1", 7, {0, 1})
      << coordinate_distribution("D2", 7, {2, 3});
  return out.str();
}

std::string example_5_5(const std::map<std::string, double>& v) {
  std::ostringstream out;
  out << "# seven-dimensional proper quasi bi-slant submanifold of R^11\n"
      << "ambient 11\n"
      << "const alpha = " << num(v.at("alpha")) << "\n"
      << "params u v t r s k z\n"
      << "map {\n"
      << "  x1 = u; y1 = v; x2 = t; y2 = r/sqrt(2); x3 = r/sqrt(2)\n"
      << "  x4 = s; y4 = k*cos(alpha); x5 = k*sin(alpha); z = z\n"
      << "}\n"
      << coordinate_distribution("D", 7, {0, 1}) << coordinate_distribution("D1", 7, {2, 3})
      << coordinate_distribution("D2", 7, {4, 5});
  return out.str();
}

std::string invariant_plane(const std::map<std::string, double>& v) {
  const double nv = v.at("n");
  if (nv != std::floor(nv) || nv < 1 || nv > 64) throw InputError("invariant_plane: n must be an integer in [1, 64]");
  std::ostringstream out;
  out << "# totally geodesic invariant plane\n"
      << "ambient " << 2 * static_cast<int>(nv) + 1 << "\n"
      << "params u v z\n"
      << "map { x1 = u; y1 = v; z = z }\n"
      << coordinate_distribution("D", 3, {0, 1});
  return out.str();
}

std::string curved_probe(const std::map<std::string, double>&) {
  return "# curved probe with non-zero second fundamental form\n"
         "ambient 5\n"
         "params u v z\n"
         "domain u in [0.5, 1.5]\n"
         "map { x1 = u; y1 = v; x2 = u^2/2; z = z }\n";
}

int even_count(const std::map<std::string, double>& v, const char* slot) {
  const double d = v.at(slot);
  if (d != std::floor(d) || d < 0 || d > 16 || static_cast<int>(d) % 2 != 0) {
    throw InputError(std::string("taxonomy_family: ") + slot + " must be an even integer in [0, 16]");
  }
  return static_cast<int>(d);
}

// D is built from complex lines (x_i = a, y_i = b); a theta-slant plane uses two coordinate
// pairs, x_i = u, y_i = s cos(theta), y_{i+1} = s sin(theta).
std::string taxonomy_family(const std::map<std::string, double>& v) {
  const int d = even_count(v, "d");
  const int d1 = even_count(v, "d1");
  const int d2 = even_count(v, "d2");
  const int pairs = d / 2 + d1 + d2;
  const int n = std::max(pairs, 1);
  const int m = d + d1 + d2 + 1;
  std::ostringstream params;
  std::ostringstream map;
  std::vector<int> idx_d;
  std::vector<int> idx_d1;
  std::vector<int> idx_d2;
  int p = 0;
  int pair = 1;
  for (int b = 0; b < d / 2; ++b, ++pair) {
    params << " a" << b << " b" << b;
    map << "  x" << pair << " = a" << b << "; y" << pair << " = b" << b << "\n";
    idx_d.push_back(p++);
    idx_d.push_back(p++);
  }
  auto slant_blocks = [&](int dims, const char* prefix, const char* angle, std::vector<int>& idx) {
    for (int b = 0; b < dims / 2; ++b, pair += 2) {
      params << " " << prefix << "u" << b << " " << prefix << "s" << b;
      map << "  x" << pair << " = " << prefix << "u" << b << "; y" << pair << " = " << prefix << "s" << b << "*cos("
          << angle << "); y" << pair + 1 << " = " << prefix << "s" << b << "*sin(" << angle << ")\n";
      idx.push_back(p++);
      idx.push_back(p++);
    }
  };
  slant_blocks(d1, "p", "theta1", idx_d1);
  slant_blocks(d2, "q", "theta2", idx_d2);
  map << "  z = z\n";

  std::ostringstream out;
  out << "# taxonomy family d=" << d << " d1=" << d1 << " d2=" << d2 << "\n"
      << "ambient " << 2 * n + 1 << "\n"
      << "const theta1 = " << num(v.at("theta1")) << "\n"
      << "const theta2 = " << num(v.at("theta2")) << "\n"
      << "params" << params.str() << " z\n"
      << "map {\n"
      << map.str() << "}\n";
  if (d) out << coordinate_distribution("D", m, idx_d);
  if (d1) out << coordinate_distribution("D1", m, idx_d1);
  if (d2) out << coordinate_distribution("D2", m, idx_d2);
  return out.str();
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  using std::numbers::pi;
  static const std::vector<CatalogEntry> entries = {
      {"example_3_3",
       "proper quasi bi-slant M_{theta1,theta2} in R^11, D=<dt,dr>, D1=<du,ds>, D2=<dw,dk>",
       {{"theta1", pi / 6, "slant angle of D1 (radians)"}, {"theta2", pi / 3, "slant angle of D2 (radians)"}},
       example_3_3},
      {"example_5_5",
       "proper quasi bi-slant 7-manifold in R^11, D=<du,dv>, D1=<dt,dr> (pi/4), D2=<ds,dk> (alpha)",
       {{"alpha", 0.7, "slant angle of D2 (radians)"}},
       example_5_5},
      {"invariant_plane", "plane (u, v, 0, ..., z) in R^(2n+1), D=<du,dv>", {{"n", 2, "ambient half-dimension"}},
       invariant_plane},
      {"curved_probe", "graph x2 = u^2/2 over the (x1, y1) plane in R^5, u in [0.5, 1.5]", {}, curved_probe},
      {"taxonomy_family",
       "product of invariant lines and slant planes; dims d, d1, d2 must be even",
       {{"d", 2, "dimension of D"},
        {"d1", 2, "dimension of D1"},
        {"d2", 2, "dimension of D2"},
        {"theta1", pi / 6, "slant angle of D1 (radians)"},
        {"theta2", pi / 3, "slant angle of D2 (radians)"}},
       taxonomy_family},
  };
  return entries;
}

const CatalogEntry& catalog_entry(std::string_view name) {
  for (const auto& e : catalog()) {
    if (e.name == name) return e;
  }
  std::string known;
  for (const auto& e : catalog()) known += (known.empty() ? "" : ", ") + e.name;
  throw InputError("unknown example '" + std::string(name) + "' (known: " + known + ")");
}

std::string example_text(std::string_view name, const std::map<std::string, double>& overrides) {
  const CatalogEntry& entry = catalog_entry(name);
  std::map<std::string, double> values;
  for (const auto& s : entry.slots) values[s.name] = s.default_value;
  for (const auto& [k, v] : overrides) {
    if (!values.count(k)) throw InputError("example " + entry.name + " has no parameter '" + k + "'");
    if (!std::isfinite(v)) throw InputError("parameter '" + k + "' must be finite");
    values[k] = v;
  }
  return entry.generate(values);
}

ImmersionSpec make_example(std::string_view name, const std::map<std::string, double>& overrides) {
  ImmersionSpec spec = parse_spec(example_text(name, overrides));
  spec.name = std::string(name);
  return spec;
}

}  // namespace slantcheck
