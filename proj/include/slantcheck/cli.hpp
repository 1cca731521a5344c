#pragma once

#include "slantcheck/decomp.hpp"
#include "slantcheck/expr.hpp"
#include "slantcheck/report.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace slantcheck {

enum class Format { json, text };

struct RunConfig {
  int points = 16;
  std::uint64_t seed = 0;
  Tolerances tol;
};

/// Everything a report can contain; absent parts are left out of the output.
struct ReportDocument {
  std::optional<ImmersionSpec> spec;
  bool has_classification = false;  // emits "classification" (null when the optional is empty)
  std::optional<Classification> classification;
  std::vector<CheckReport> suites;
  std::optional<RunConfig> config;
};

/// JSON (keys sorted, floats as %.17g, non-finite as null) or an aligned text table.
std::string emit_report(const ReportDocument& doc, Format format);

/// Exit code: 0 all pass, 1 a check failed, 2 input or usage error, 3 numeric failure.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace slantcheck
