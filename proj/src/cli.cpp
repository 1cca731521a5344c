#include "slantcheck/cli.hpp"

#include "slantcheck/catalog.hpp"
#include "slantcheck/errors.hpp"
#include "slantcheck/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace slantcheck {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_json(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        write_json(it.value(), out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        write_json(j[i], out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? fmt17(v) : "null";
      break;
    }
    default:
      out += j.dump();
  }
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json tolerances_json(const Tolerances& t) {
  return {{"algebraic", t.algebraic},
          {"angle_constancy", t.angle_constancy},
          {"cluster_gap", t.cluster_gap},
          {"derivative", t.derivative},
          {"fd_oracle", t.fd_oracle}};
}

json classification_json(const Classification& c) {
  json clusters = json::array();
  for (const auto& [value, mult] : c.clusters) clusters.push_back({{"cos2", value}, {"multiplicity", mult}});
  json angles = json::array();
  for (double a : c.angles()) angles.push_back(number_or_null(a));
  return {{"label", std::string(label_name(c.label))},
          {"dims", {c.dims[0], c.dims[1], c.dims[2]}},
          {"angles", angles},
          {"theta1", c.theta1 ? number_or_null(*c.theta1) : json(nullptr)},
          {"theta2", c.theta2 ? number_or_null(*c.theta2) : json(nullptr)},
          {"constancy_residual", number_or_null(c.constancy_residual)},
          {"clusters", clusters},
          {"points", c.points},
          {"notes", c.notes}};
}

json suite_json(const CheckReport& r) {
  json ids = json::array();
  for (const auto& rec : r.records) {
    ids.push_back({{"id", rec.id},
                   {"kind", rec.kind == RecordKind::identity ? "identity" : "implication"},
                   {"status", std::string(status_name(rec.status))},
                   {"points", rec.points},
                   {"max_residual", number_or_null(rec.max_residual)},
                   {"tolerance", rec.tolerance},
                   {"pass", rec.pass()},
                   {"note", rec.note ? json(*rec.note) : json(nullptr)}});
  }
  return {{"id", r.suite_id},
          {"status", std::string(status_name(r.status()))},
          {"note", r.note ? json(*r.note) : json(nullptr)},
          {"identities", ids}};
}

std::string emit_json(const ReportDocument& doc) {
  json j = json::object();
  if (doc.spec) {
    j["spec"] = {{"name", doc.spec->name}, {"ambient_dim", doc.spec->ambient_dim()}, {"params", doc.spec->params}};
  }
  if (doc.has_classification) {
    j["classification"] = doc.classification ? classification_json(*doc.classification) : json(nullptr);
  }
  json suites = json::array();
  for (const auto& r : doc.suites) suites.push_back(suite_json(r));
  j["suites"] = suites;
  if (doc.config) {
    j["config"] = {{"points", doc.config->points},
                   {"seed", doc.config->seed},
                   {"tolerances", tolerances_json(doc.config->tol)}};
  }
  std::string out;
  write_json(j, out);
  return out;
}

std::string sci(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string emit_text(const ReportDocument& doc) {
  std::ostringstream out;
  char line[512];
  if (doc.spec) {
    out << "spec: " << (doc.spec->name.empty() ? "(unnamed)" : doc.spec->name) << "  ambient R^"
        << doc.spec->ambient_dim() << "  params";
    for (const auto& p : doc.spec->params) out << ' ' << p;
    out << '\n';
  }
  if (doc.has_classification && doc.classification) {
    const Classification& c = *doc.classification;
    out << "label: " << label_name(c.label) << "\n";
    std::snprintf(line, sizeof line, "dims (D, D1, D2): (%d, %d, %d) + <xi>\n", c.dims[0], c.dims[1], c.dims[2]);
    out << line;
    out << "angles:";
    for (double a : c.angles()) out << ' ' << fmt17(a);
    out << "\nconstancy residual: " << sci(c.constancy_residual) << "\nclusters:";
    for (const auto& [v, mult] : c.clusters) out << ' ' << fmt17(v) << " x" << mult;
    out << '\n';
    for (const auto& n : c.notes) out << "note: " << n << '\n';
  }
  for (const auto& r : doc.suites) {
    out << "\nsuite " << r.suite_id << ": " << status_name(r.status());
    if (r.note) out << "  (" << *r.note << ")";
    out << '\n';
    std::snprintf(line, sizeof line, "  %-38s %-8s %6s %12s %10s\n", "identity", "status", "points", "max_residual",
                  "tolerance");
    out << line;
    for (const auto& rec : r.records) {
      std::snprintf(line, sizeof line, "  %-38s %-8s %6d %12s %10s\n", rec.id.c_str(),
                    std::string(status_name(rec.status)).c_str(), rec.points, sci(rec.max_residual).c_str(),
                    sci(rec.tolerance).c_str());
      out << line;
      if (rec.note) out << "      note: " << *rec.note << '\n';
    }
  }
  if (doc.config) {
    out << "\npoints " << doc.config->points << "  seed " << doc.config->seed << '\n';
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read spec file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Options {
  std::string spec_file;
  std::string example;
  std::vector<std::string> sets;
  RunConfig config;
  std::string format = "text";
  std::string suite = "all";
};

ImmersionSpec load_spec(const Options& o) {
  std::map<std::string, double> values;
  for (const auto& kv : o.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("--set expects NAME=VALUE, got '" + kv + "'");
    values[kv.substr(0, eq)] = eval_constant_expression(kv.substr(eq + 1));
  }
  if (!o.example.empty()) return make_example(o.example, values);
  ConstOverrides overrides(values.begin(), values.end());
  ImmersionSpec spec = parse_spec(read_file(o.spec_file), overrides);
  spec.name = std::filesystem::path(o.spec_file).stem().string();
  return spec;
}

Format parse_format(const std::string& f) { return f == "json" ? Format::json : Format::text; }

int catalog_command(const Options& o, std::ostream& out) {
  if (parse_format(o.format) == Format::json) {
    json entries = json::array();
    for (const auto& e : catalog()) {
      json slots = json::array();
      for (const auto& s : e.slots) {
        slots.push_back({{"name", s.name}, {"default", s.default_value}, {"description", s.description}});
      }
      entries.push_back({{"name", e.name}, {"summary", e.summary}, {"slots", slots}});
    }
    std::string text;
    write_json(json{{"catalog", entries}}, text);
    out << text << '\n';
    return 0;
  }
  for (const auto& e : catalog()) {
    out << e.name;
    for (const auto& s : e.slots) out << ' ' << s.name << '=' << fmt17(s.default_value);
    out << "\n    " << e.summary << '\n';
  }
  return 0;
}

int classify_command(const Options& o, std::ostream& out) {
  ReportDocument doc;
  doc.spec = load_spec(o);
  doc.has_classification = true;
  doc.classification = classify(*doc.spec, o.config.points, o.config.seed, o.config.tol);
  doc.config = o.config;
  out << emit_report(doc, parse_format(o.format)) << '\n';
  return 0;
}

int verify_command(const Options& o, std::ostream& out) {
  ReportDocument doc;
  doc.spec = load_spec(o);
  doc.config = o.config;
  doc.has_classification = true;
  doc.classification = classify(*doc.spec, o.config.points, o.config.seed, o.config.tol);
  if (o.suite == "all") {
    doc.suites = run_all(*doc.spec, o.config.points, o.config.seed, o.config.tol);
  } else {
    doc.suites.push_back(run_suite(*doc.spec, o.suite, o.config.points, o.config.seed, o.config.tol));
  }
  out << emit_report(doc, parse_format(o.format)) << '\n';
  for (const auto& r : doc.suites) {
    if (r.status() == Status::fail) return 1;
  }
  return 0;
}

}  // namespace

std::string emit_report(const ReportDocument& doc, Format format) {
  return format == Format::json ? emit_json(doc) : emit_text(doc);
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"slantcheck: quasi bi-slant submanifolds of R^(2n+1) with the canonical cosymplectic structure"};
  app.require_subcommand(1);
  Options o;

  auto add_source = [&](CLI::App* sub) {
    auto* spec = sub->add_option("--spec", o.spec_file, "immersion spec file");
    auto* example = sub->add_option("--example", o.example, "catalog entry name");
    spec->excludes(example);
    sub->add_option("--set", o.sets, "NAME=VALUE override for a catalog slot or spec constant")->allow_extra_args(false);
    sub->add_option("--points", o.config.points, "number of sample points")->check(CLI::Range(1, 100000));
    sub->add_option("--seed", o.config.seed, "sampling seed");
    sub->add_option("--tol-algebraic", o.config.tol.algebraic, "tolerance for pointwise identities");
    sub->add_option("--tol-derivative", o.config.tol.derivative, "tolerance for field identities");
    sub->add_option("--tol-fd", o.config.tol.fd_oracle, "finite-difference oracle tolerance");
    sub->add_option("--tol-angle", o.config.tol.angle_constancy, "slant angle constancy tolerance");
    sub->add_option("--tol-gap", o.config.tol.cluster_gap, "eigenvalue clustering gap");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
  };

  CLI::App* cat = app.add_subcommand("catalog", "list built-in examples");
  cat->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
  CLI::App* cls = app.add_subcommand("classify", "classify a submanifold into the quasi bi-slant taxonomy");
  add_source(cls);
  CLI::App* ver = app.add_subcommand("verify", "run identity suites");
  add_source(ver);
  ver->add_option("--suite", o.suite, "suite id or 'all'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (cat->parsed()) return catalog_command(o, out);
    if (o.spec_file.empty() && o.example.empty()) {
      err << "error: one of --spec or --example is required\n\n" << app.help();
      return 2;
    }
    if (cls->parsed()) return classify_command(o, out);
    return verify_command(o, out);
  } catch (const ImmersionError& e) {
    if (e.kind() == ImmersionError::Kind::xi_not_tangent) {
      err << "error: invariant 'xi tangent to M' violated: " << e.what() << '\n';
      return 2;
    }
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return 3;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace slantcheck
