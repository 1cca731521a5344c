#pragma once

#include "slantcheck/expr.hpp"

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace slantcheck {

struct CatalogSlot {
  std::string name;
  double default_value = 0.0;
  std::string description;
};

struct CatalogEntry {
  std::string name;
  std::string summary;
  std::vector<CatalogSlot> slots;
  /// DSL text for a full set of slot values.
  std::function<std::string(const std::map<std::string, double>&)> generate;
};

const std::vector<CatalogEntry>& catalog();

/// Throws InputError for an unknown name.
const CatalogEntry& catalog_entry(std::string_view name);

/// DSL text of an entry with slot overrides applied over the defaults. Unknown slots throw
/// InputError.
std::string example_text(std::string_view name, const std::map<std::string, double>& overrides = {});

/// Parsed entry; the spec is named after the entry.
ImmersionSpec make_example(std::string_view name, const std::map<std::string, double>& overrides = {});

}  // namespace slantcheck
