#pragma once

#include "slantcheck/expr.hpp"
#include "slantcheck/report.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace slantcheck {

/// Every suite id in run order.
const std::vector<std::string>& suite_ids();

/// Suites that quantify over D, D1 or D2 sections.
bool is_distribution_suite(std::string_view id);

/// Runs one suite. Throws InputError for an unknown id or when a distribution suite has no
/// distribution to work with.
CheckReport run_suite(const ImmersionSpec& spec, std::string_view suite_id, int count, std::uint64_t seed,
                      const Tolerances& tol);

/// Runs every suite in order; distribution suites without distributions are reported skipped.
std::vector<CheckReport> run_all(const ImmersionSpec& spec, int count, std::uint64_t seed, const Tolerances& tol);

}  // namespace slantcheck
