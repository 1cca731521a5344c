#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace slantcheck {

enum class Func { sin, cos, tan, exp, log, sqrt };

std::string_view func_name(Func f);
std::optional<Func> func_from_name(std::string_view name);

/// Immutable expression tree over the parameters and named constants of a spec.
struct Expr {
  enum class Kind { number, param, constant, neg, add, sub, mul, div, pow, call };

  Kind kind = Kind::number;
  double number = 0.0;     // Kind::number
  int index = -1;          // parameter or constant slot
  std::string name;        // parameter or constant name, kept for diagnostics
  Func func = Func::sin;   // Kind::call
  std::vector<Expr> args;  // 1 child for neg/call, 2 for binary ops

  static Expr constant_number(double v);
  static Expr parameter(int index, std::string name);
  static Expr named_constant(int index, std::string name);
  static Expr unary(Kind kind, Expr child);
  static Expr binary(Kind kind, Expr lhs, Expr rhs);
  static Expr call(Func f, Expr arg);

  /// True when any node below references a parameter.
  bool depends_on_params() const;

  bool operator==(const Expr& other) const;
};

/// Closed parameter interval.
struct Interval {
  double lo = -1.0;
  double hi = 1.0;
  bool operator==(const Interval&) const = default;
};

/// Named list of tangent vector fields, components in parameter coordinates.
struct DeclaredDistribution {
  std::string name;
  std::vector<std::vector<Expr>> fields;
  bool operator==(const DeclaredDistribution&) const = default;
};

struct NamedConstant {
  std::string name;
  double value = 0.0;
  bool operator==(const NamedConstant&) const = default;
};

/// A parsed immersion from a parameter box into R^(2n+1).
///
/// Ambient coordinates are interleaved: (x1, y1, x2, y2, ..., xn, yn, z), so x_i sits in slot
/// 2(i-1), y_i in slot 2(i-1)+1 and z in slot 2n.
struct ImmersionSpec {
  std::string name;
  int n = 0;
  std::vector<std::string> params;
  std::vector<NamedConstant> constants;
  std::vector<Expr> coords;          // size 2n+1; unassigned slots hold the number 0
  std::vector<bool> assigned;        // which slots appeared in the map block
  std::vector<Interval> domain;      // one per parameter
  std::vector<DeclaredDistribution> distributions;

  int ambient_dim() const { return 2 * n + 1; }
  int param_count() const { return static_cast<int>(params.size()); }
  std::vector<double> constant_values() const;
  const DeclaredDistribution* find_distribution(std::string_view name) const;

  /// Structural equality; the name is not compared.
  bool operator==(const ImmersionSpec& other) const;
};

/// Overrides applied to `const` declarations while parsing (value replaces the declared
/// expression).
using ConstOverrides = std::map<std::string, double, std::less<>>;

ImmersionSpec parse_spec(std::string_view text, const ConstOverrides& overrides = {});

/// Parses a free-standing expression against the names of an existing spec.
Expr parse_expression(std::string_view text, const ImmersionSpec& spec);

/// Evaluates a literal-only expression (numbers, pi, e, function calls). Used for CLI values.
double eval_constant_expression(std::string_view text);

/// Fully parenthesized rendering that re-parses to an identical tree.
std::string to_string(const Expr& e);

/// Renders a spec in the DSL so that parse_spec(to_string(s)) == s.
std::string to_string(const ImmersionSpec& spec);

/// Name of ambient slot i ("x1", "y1", ..., "z").
std::string coordinate_name(int n, int slot);

}  // namespace slantcheck
