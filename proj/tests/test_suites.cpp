#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "slantcheck/catalog.hpp"
#include "slantcheck/errors.hpp"
#include "slantcheck/suites.hpp"
#include "support/random_spec.hpp"

using namespace slantcheck;

namespace {

// Holomorphic curve w -> (w, w^2) times the z-line: invariant and curved.
const char* kHolomorphic =
    "ambient 5\nparams a b z\nmap { x1 = a; y1 = b; x2 = a^2 - b^2; y2 = 2*a*b; z = z }\n"
    "distribution D { (1, 0, 0), (0, 1, 0) }\n";

// A bi-slant product whose D2 factor is bent, so D2 leaves are not geodesic in M.
const char* kBentBiSlant =
    "ambient 9\nconst t1 = pi/6\nconst t2 = pi/3\nparams u s w k z\n"
    "map { x1 = u; y1 = s*cos(t1); y2 = s*sin(t1)\n"
    "      x3 = w; y3 = k*cos(t2); y4 = k*sin(t2); x4 = 0.3*w^2; z = z }\n";

// Holomorphic-curve factor for D times flat slant planes for D1 and D2: constant angles, h != 0.
const char* kCurvedProduct =
    "ambient 13\nconst t1 = pi/5\nconst t2 = 1.2\nparams a b u s w k z\n"
    "map { x1 = a; y1 = b; x2 = a^2 - b^2; y2 = 2*a*b\n"
    "      x3 = u; y3 = s*cos(t1); y4 = s*sin(t1)\n"
    "      x5 = w; y5 = k*cos(t2); y6 = k*sin(t2); z = z }\n"
    "distribution D { (1,0,0,0,0,0,0), (0,1,0,0,0,0,0) }\n"
    "distribution D1 { (0,0,1,0,0,0,0), (0,0,0,1,0,0,0) }\n"
    "distribution D2 { (0,0,0,0,1,0,0), (0,0,0,0,0,1,0) }\n";

void require_no_failures(const std::vector<CheckReport>& reports, const std::string& what) {
  for (const auto& r : reports) {
    for (const auto& rec : r.records) {
      INFO(what << " / " << r.suite_id << " / " << rec.id << " residual " << rec.max_residual);
      CHECK(rec.status != Status::fail);
    }
  }
}

}  // namespace

TEST_CASE("suite ids in order") {
  const auto& ids = suite_ids();
  REQUIRE(ids.size() == 15);
  CHECK(ids.front() == "gauss_weingarten");
  CHECK(ids.back() == "parallel_FB");
  CHECK(is_distribution_suite("foliation_D2"));
  CHECK_FALSE(is_distribution_suite("lemma_3_5"));
}

TEST_CASE("unknown suite and missing distributions") {
  const ImmersionSpec probe = make_example("curved_probe");
  CHECK_THROWS_AS(run_suite(probe, "no_such_suite", 4, 0, Tolerances{}), InputError);
  CHECK_THROWS_AS(run_suite(probe, "foliation_D", 4, 0, Tolerances{}), InputError);
  const auto all = run_all(probe, 4, 0, Tolerances{});
  REQUIRE(all.size() == 15);
  CHECK(all[9].suite_id == "foliation_D");
  CHECK(all[9].status() == Status::skipped);
}

TEST_CASE("bad tolerances are rejected") {
  Tolerances tol;
  tol.derivative = -1;
  CHECK_THROWS_AS(run_all(make_example("curved_probe"), 2, 0, tol), InputError);
}

TEST_CASE("catalog entries pass every suite") {
  for (const auto& entry : catalog()) {
    const auto reports = run_all(make_example(entry.name), 16, 0, Tolerances{});
    require_no_failures(reports, entry.name);
  }
}

TEST_CASE("catalog examples pass with every record non-vacuous") {
  for (const char* name : {"example_3_3", "example_5_5"}) {
    for (const auto& r : run_all(make_example(name), 16, 3, Tolerances{})) {
      INFO(name << " / " << r.suite_id);
      CHECK(r.status() == Status::pass);
    }
  }
}

TEST_CASE("holomorphic curve: T is parallel and D is totally geodesic in M") {
  const ImmersionSpec s = parse_spec(kHolomorphic);
  const CheckReport gw = run_suite(s, "gauss_weingarten", 8, 0, Tolerances{});
  CHECK(gw.pass());
  const CheckReport pt = run_suite(s, "parallel_T", 8, 0, Tolerances{});
  for (const auto& rec : pt.records) {
    INFO(rec.id);
    CHECK(rec.status == Status::pass);
  }
  // F is not parallel: h is non-zero and phi maps the normal plane to itself.
  const CheckReport pf = run_suite(s, "parallel_F", 8, 0, Tolerances{});
  CHECK(pf.status() != Status::fail);
}

TEST_CASE("bent bi-slant product exercises non-trivial expansions") {
  const ImmersionSpec s = parse_spec(kBentBiSlant);
  const auto reports = run_all(s, 16, 2, Tolerances{});
  require_no_failures(reports, "bent");
  const auto find = [&](const std::string& id) -> const CheckReport& {
    for (const auto& r : reports) {
      if (r.suite_id == id) return r;
    }
    FAIL("missing suite " << id);
    return reports.front();
  };
  const CheckReport& f2 = find("foliation_D1");
  REQUIRE(f2.find("tangential_expansion") != nullptr);
  CHECK(f2.find("tangential_expansion")->status == Status::pass);
  const CheckReport& l51 = find("lemma_5_1");
  REQUIRE(l51.find("nabla_B") != nullptr);
  REQUIRE(l51.find("nabla_B")->note.has_value());
}

TEST_CASE("curved quasi bi-slant product: implications hold non-vacuously") {
  const ImmersionSpec s = parse_spec(kCurvedProduct);
  const auto reports = run_all(s, 16, 4, Tolerances{});
  require_no_failures(reports, "curved product");
  int evaluated = 0;
  for (const auto& r : reports) {
    for (const auto& rec : r.records) {
      if (rec.kind == RecordKind::implication && rec.status == Status::pass) ++evaluated;
    }
  }
  CHECK(evaluated >= 10);
  const CheckReport& gw = reports.front();
  REQUIRE(gw.find("gauss_fields") != nullptr);
}

TEST_CASE("gauntlet: 20 random immersions into R^7 and R^11") {
  const char* suites[] = {"gauss_weingarten", "pointwise", "lemma_3_5",        "lemma_3_6",       "lemma_5_1",
                          "parallel_FB",      "parallel_T", "integrability_D1", "integrability_D2", "foliation_D1",
                          "foliation_D2"};
  for (int draw = 0; draw < 20; ++draw) {
    const int dim = draw % 2 ? 11 : 7;
    const ImmersionSpec s = slantcheck::testing::random_immersion(300 + draw, dim, 3 + draw % 5);
    const auto reports = run_all(s, 16, draw, Tolerances{});
    for (const auto& r : reports) {
      bool listed = false;
      for (const char* id : suites) listed = listed || r.suite_id == id;
      if (!listed) continue;
      for (const auto& rec : r.records) {
        if (rec.kind != RecordKind::identity) continue;
        INFO(s.name << " / " << r.suite_id << " / " << rec.id << " residual " << rec.max_residual);
        CHECK(rec.status != Status::fail);
      }
    }
  }
}

TEST_CASE("run_suite and run_all agree") {
  const ImmersionSpec s = make_example("example_5_5");
  const auto all = run_all(s, 8, 11, Tolerances{});
  for (std::size_t i = 0; i < all.size(); ++i) {
    const CheckReport one = run_suite(s, suite_ids()[i], 8, 11, Tolerances{});
    REQUIRE(one.records.size() == all[i].records.size());
    for (std::size_t k = 0; k < one.records.size(); ++k) {
      CHECK(one.records[k].max_residual == all[i].records[k].max_residual);
    }
  }
}
