// One line per acceptance criterion; exit status is non-zero when any criterion fails.
#include "slantcheck/catalog.hpp"
#include "slantcheck/cli.hpp"
#include "slantcheck/connection.hpp"
#include "slantcheck/decomp.hpp"
#include "slantcheck/errors.hpp"
#include "slantcheck/suites.hpp"
#include "support/fd.hpp"
#include "support/random_spec.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

using namespace slantcheck;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && secs >= limit_s) {
    o.require(false, "runtime " + std::to_string(secs) + " s over the " + std::to_string(limit_s) + " s limit");
  }
  if (!o.pass) ++failures;
  std::printf("[%s] criterion %d: %s (%.3f s)%s%s\n", o.pass ? "PASS" : "FAIL", id, title, secs,
              o.detail.empty() ? "" : ": ", o.detail.c_str());
}

struct CliResult {
  int code;
  std::string out, err;
};

CliResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), "slantcheck");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<ImmersionSpec> gauntlet_specs() {
  std::vector<ImmersionSpec> specs = {make_example("example_3_3"), make_example("example_5_5"),
                                      make_example("invariant_plane"), make_example("curved_probe")};
  for (int draw = 0; draw < 20; ++draw) {
    specs.push_back(slantcheck::testing::random_immersion(300 + draw, draw % 2 ? 11 : 7, 3 + draw % 5));
  }
  return specs;
}

bool gauntlet_suite(const std::string& id) {
  return id == "gauss_weingarten" || id == "pointwise" || id == "lemma_3_5" || id == "lemma_3_6" ||
         id == "lemma_5_1" || id == "parallel_FB" || id.rfind("foliation_", 0) == 0 ||
         id.rfind("integrability_", 0) == 0;
}

Outcome example_3_3() {
  Outcome o;
  const Classification c = classify(make_example("example_3_3"), 16, 0, Tolerances{});
  o.require(c.label == Label::proper_quasi_bi_slant, "label " + std::string(label_name(c.label)));
  o.require(c.dims == std::array<int, 3>{2, 2, 2}, "dims");
  o.require(c.theta1 && std::abs(*c.theta1 - pi / 6) <= 1e-9, "theta1");
  o.require(c.theta2 && std::abs(*c.theta2 - pi / 3) <= 1e-9, "theta2");
  const double expected[] = {1.0, 0.75, 0.25, 0.0};
  o.require(c.clusters.size() == 4, "cluster count");
  for (std::size_t i = 0; i < c.clusters.size() && i < 4; ++i) {
    o.require(std::abs(c.clusters[i].first - expected[i]) <= 1e-10, "cluster " + std::to_string(i));
  }
  const CliResult r = cli({"classify", "--example", "example_3_3", "--set", "theta1=0.5235987755982988", "--set",
                           "theta2=1.0471975511965976"});
  o.require(r.code == 0 && r.out.find("proper-quasi-bi-slant") != std::string::npos, "cli classify");
  return o;
}

Outcome example_5_5() {
  Outcome o;
  const Classification c = classify(make_example("example_5_5", {{"alpha", 0.7}}), 16, 0, Tolerances{});
  o.require(c.label == Label::proper_quasi_bi_slant, "label " + std::string(label_name(c.label)));
  o.require(c.theta1 && std::abs(*c.theta1 - pi / 4) <= 1e-9, "theta1");
  o.require(c.theta2 && std::abs(*c.theta2 - 0.7) <= 1e-9, "theta2");
  o.require(c.dims[0] + c.dims[1] + c.dims[2] + 1 == 7, "total dimension");
  return o;
}

Outcome gauntlet() {
  Outcome o;
  int checked = 0;
  double worst = 0.0;
  for (const ImmersionSpec& s : gauntlet_specs()) {
    for (const CheckReport& r : run_all(s, 16, 0, Tolerances{})) {
      if (!gauntlet_suite(r.suite_id)) continue;
      for (const IdentityRecord& rec : r.records) {
        if (rec.kind != RecordKind::identity || rec.status == Status::skipped) continue;
        ++checked;
        worst = std::max(worst, rec.max_residual);
        o.require(rec.status == Status::pass && rec.max_residual <= 1e-6,
                  s.name + "/" + r.suite_id + "/" + rec.id + " residual " + std::to_string(rec.max_residual));
      }
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d identity records, worst residual %.3e", checked, worst);
  if (o.pass) o.detail = buf;
  return o;
}

Outcome oracles() {
  using namespace slantcheck::testing;
  Outcome o;
  double wj = 0, wh = 0, wp = 0;
  for (int draw = 0; draw < 100; ++draw) {
    const int dim = draw % 2 ? 11 : 7;
    const int m = 2 + draw % (dim == 7 ? 5 : 7);
    const ImmersionSpec s = random_immersion(1000 + draw, dim, m, 1);
    Rng rng(draw);
    Vec p(m);
    for (int i = 0; i < m; ++i) p(i) = rng.uniform(-0.9, 0.9);
    const FramePoint fp = frame_at(s, p);
    for (int k = 0; k < m; ++k) {
      wj = std::max(wj, max_abs(Mat(fd_partial([&](const Vec& q) { return Mat(image_point(s, q)); }, p, k) - fp.J.col(k))));
      wp = std::max(wp, max_abs(Mat(fd_partial([&](const Vec& q) { return frame_at(s, q).P; }, p, k) -
                                    projector_derivative(fp, k))));
    }
    for (int i = 0; i < dim; ++i) {
      const Mat h = fd_hessian([&](const Vec& q) { return image_point(s, q)(i); }, p);
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) wh = std::max(wh, std::abs(h(a, b) - fp.hessian(a, b)(i)));
      }
    }
  }
  o.require(wj <= 1e-6, "Jacobian gap " + std::to_string(wj));
  o.require(wh <= 1e-4, "Hessian gap " + std::to_string(wh));
  o.require(wp <= 1e-5, "projector derivative gap " + std::to_string(wp));
  char buf[128];
  std::snprintf(buf, sizeof buf, "gaps J %.2e, H %.2e, dP %.2e", wj, wh, wp);
  if (o.pass) o.detail = buf;
  return o;
}

Outcome structural() {
  Outcome o;
  int points = 0;
  for (const ImmersionSpec& s : gauntlet_specs()) {
    for (const FramePoint& fp : frames_at(s, sample_points(s, 16, 0))) {
      ++points;
      const int m = fp.m();
      const std::string where = s.name + " at " + format_point(fp.p);
      Eigen::SelfAdjointEigenSolver<Mat> es(fp.G);
      o.require(max_abs(Mat(fp.G - fp.G.transpose())) <= 1e-12 && es.eigenvalues().minCoeff() > 0, "G spd " + where);
      o.require(max_abs(Mat(fp.P * fp.P - fp.P)) <= 1e-10, "P idempotent " + where);
      o.require(max_abs(Mat(fp.P - fp.P.transpose())) <= 1e-10, "P symmetric " + where);
      const StructureOps ops = structure_ops(fp);
      o.require(max_abs(Mat(fp.G * ops.T + ops.T.transpose() * fp.G)) <= 1e-10, "T skew " + where);
      const SlantSpectrum sp = slant_spectrum(ops, fp.G, fp.xi_coords);
      o.require(sp.eigenvalues.minCoeff() >= 0.0 && sp.eigenvalues.maxCoeff() <= 1.0, "pencil range " + where);
      const SecondFundamental sf = second_fundamental(fp);
      Rng rng(static_cast<std::uint64_t>(points));
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
          o.require(max_abs(Vec(sf.at(i, j) - sf.at(j, i))) <= 1e-10, "h symmetric " + where);
          o.require(max_abs(Vec(fp.P * sf.at(i, j))) <= 1e-10, "h normal " + where);
        }
      }
      if (fp.N.cols() > 0) {
        const Vec v = fp.normal_projector() * rng.normal_vector(fp.dim());
        const Mat A = shape_operator(fp, sf, v);
        const Vec x = rng.normal_vector(m), y = rng.normal_vector(m);
        const double res = std::abs(h_of(sf, x, y).dot(v) - (fp.G * A * x).dot(y));
        o.require(res <= 1e-9, "shape/metric relation " + where);
      }
    }
  }
  if (o.pass) o.detail = std::to_string(points) + " sample points";
  return o;
}

Outcome taxonomy() {
  struct Variant {
    double d, d1, d2, t1, t2;
    Label label;
  };
  const std::vector<Variant> variants = {
      {2, 0, 0, pi / 6, pi / 3, Label::invariant},       {0, 2, 0, pi / 2, pi / 3, Label::anti_invariant},
      {2, 2, 0, pi / 2, pi / 3, Label::semi_invariant},  {0, 2, 0, pi / 5, pi / 3, Label::slant},
      {2, 0, 2, pi / 6, pi / 5, Label::semi_slant},      {0, 2, 2, pi / 2, pi / 5, Label::hemi_slant},
      {0, 2, 2, pi / 6, pi / 3, Label::bi_slant},        {2, 2, 2, pi / 6, pi / 3, Label::proper_quasi_bi_slant},
  };
  Outcome o;
  for (const Variant& v : variants) {
    const ImmersionSpec s =
        make_example("taxonomy_family", {{"d", v.d}, {"d1", v.d1}, {"d2", v.d2}, {"theta1", v.t1}, {"theta2", v.t2}});
    const Classification c = classify(s, 16, 0, Tolerances{});
    o.require(c.label == v.label,
              "expected " + std::string(label_name(v.label)) + ", got " + std::string(label_name(c.label)));
    if (v.label == Label::hemi_slant) o.require(c.theta1 && std::abs(*c.theta1 - pi / 2) <= 1e-9, "hemi theta1");
  }
  return o;
}

Outcome determinism() {
  Outcome o;
  const std::vector<std::string> args = {"verify", "--example", "example_3_3", "--suite", "all",
                                         "--seed", "42",        "--format",    "json"};
  const CliResult a = cli(args);
  const CliResult b = cli(args);
  o.require(a.code == 0, "exit code " + std::to_string(a.code));
  o.require(!a.out.empty() && a.out == b.out, "outputs differ");
  return o;
}

Outcome negative_controls() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path();
  const std::string collapse = (dir / "slantcheck_acc_collapse.txt").string();
  const std::string noxi = (dir / "slantcheck_acc_noxi.txt").string();
  std::ofstream(collapse) << "ambient 5\nparams u v z\nmap { x1 = u + v; y1 = u + v; z = z }\n";
  std::ofstream(noxi) << "ambient 5\nparams u v\nmap { x1 = u; y1 = v; z = u*v }\n";
  const CliResult a = cli({"classify", "--spec", collapse, "--points", "4"});
  o.require(a.code == 3, "rank collapse exit " + std::to_string(a.code));
  o.require(a.err.find("not an immersion at p=(") != std::string::npos, "per-point diagnostic");
  const CliResult b = cli({"classify", "--spec", noxi});
  o.require(b.code != 0 && b.code != 1, "xi exit " + std::to_string(b.code));
  o.require(b.err.find("xi tangent") != std::string::npos, "names the failed invariant");
  return o;
}

}  // namespace

int main() {
  criterion(1, "example_3_3 reproduces proper quasi bi-slant (pi/6, pi/3)", 1.0, example_3_3);
  criterion(2, "example_5_5 reproduces proper quasi bi-slant (pi/4, 0.7)", 1.0, example_5_5);
  criterion(3, "universal identities on examples, plane, probe and 20 random immersions", 30.0, gauntlet);
  criterion(4, "jets and projector derivatives match central differences", 0.0, oracles);
  criterion(5, "structural invariants at every sample point", 0.0, structural);
  criterion(6, "taxonomy family hits every labelled row", 0.0, taxonomy);
  criterion(7, "verify JSON output is byte-identical across runs", 0.0, determinism);
  criterion(8, "negative controls: rank collapse and non-tangent xi", 0.0, negative_controls);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
