#include "slantcheck/expr.hpp"

#include "slantcheck/errors.hpp"
#include "slantcheck/jet.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <sstream>

namespace slantcheck {

std::string_view func_name(Func f) {
  switch (f) {
    case Func::sin: return "sin";
    case Func::cos: return "cos";
    case Func::tan: return "tan";
    case Func::exp: return "exp";
    case Func::log: return "log";
    case Func::sqrt: return "sqrt";
  }
  return "?";
}

std::optional<Func> func_from_name(std::string_view name) {
  for (Func f : {Func::sin, Func::cos, Func::tan, Func::exp, Func::log, Func::sqrt}) {
    if (func_name(f) == name) return f;
  }
  return std::nullopt;
}

Expr Expr::constant_number(double v) {
  Expr e;
  e.kind = Kind::number;
  e.number = v;
  return e;
}

Expr Expr::parameter(int index, std::string name) {
  Expr e;
  e.kind = Kind::param;
  e.index = index;
  e.name = std::move(name);
  return e;
}

Expr Expr::named_constant(int index, std::string name) {
  Expr e;
  e.kind = Kind::constant;
  e.index = index;
  e.name = std::move(name);
  return e;
}

Expr Expr::unary(Kind kind, Expr child) {
  Expr e;
  e.kind = kind;
  e.args.push_back(std::move(child));
  return e;
}

Expr Expr::binary(Kind kind, Expr lhs, Expr rhs) {
  Expr e;
  e.kind = kind;
  e.args.push_back(std::move(lhs));
  e.args.push_back(std::move(rhs));
  return e;
}

Expr Expr::call(Func f, Expr arg) {
  Expr e = unary(Kind::call, std::move(arg));
  e.func = f;
  return e;
}

bool Expr::depends_on_params() const {
  if (kind == Kind::param) return true;
  for (const auto& a : args) {
    if (a.depends_on_params()) return true;
  }
  return false;
}

bool Expr::operator==(const Expr& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::number: return number == o.number;
    case Kind::param:
    case Kind::constant: return index == o.index && name == o.name;
    case Kind::call:
      if (func != o.func) return false;
      break;
    default: break;
  }
  return args == o.args;
}

std::vector<double> ImmersionSpec::constant_values() const {
  std::vector<double> out;
  out.reserve(constants.size());
  for (const auto& c : constants) out.push_back(c.value);
  return out;
}

const DeclaredDistribution* ImmersionSpec::find_distribution(std::string_view nm) const {
  for (const auto& d : distributions) {
    if (d.name == nm) return &d;
  }
  return nullptr;
}

bool ImmersionSpec::operator==(const ImmersionSpec& o) const {
  return n == o.n && params == o.params && constants == o.constants && coords == o.coords &&
         assigned == o.assigned && domain == o.domain && distributions == o.distributions;
}

std::string coordinate_name(int n, int slot) {
  if (slot == 2 * n) return "z";
  return (slot % 2 == 0 ? "x" : "y") + std::to_string(slot / 2 + 1);
}

ParseError::ParseError(int line, int column, std::vector<std::string> expected, std::string found)
    : InputError([&] {
        std::ostringstream os;
        os << "syntax error at line " << line << ", column " << column << ": expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
          os << (i == 0 ? "" : i + 1 == expected.size() ? " or " : ", ") << expected[i];
        }
        os << ", found " << found;
        return os.str();
      }()),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

DomainError::DomainError(const std::string& what, std::string subexpression)
    : std::runtime_error(what + " in '" + subexpression + "'"), subexpression_(std::move(subexpression)) {}

namespace {

// ---------------------------------------------------------------------------------------------
// Lexer

enum class Tok { ident, number, symbol, newline, end };

struct Token {
  Tok type = Tok::end;
  std::string text;
  double number = 0.0;
  int line = 1;
  int column = 1;
};

std::string describe(const Token& t) {
  switch (t.type) {
    case Tok::end: return "end of input";
    case Tok::newline: return "end of line";
    default: return "'" + t.text + "'";
  }
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    i += k;
    col += static_cast<int>(k);
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '\n') {
      out.push_back({Tok::newline, "\n", 0.0, line, col});
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.type = Tok::ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < src.size() &&
                                                              std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && src[j] == '.') {
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
          j = k;
        }
      }
      t.type = Tok::number;
      t.text = std::string(src.substr(i, j - i));
      auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.number);
      if (res.ec != std::errc()) {
        // from_chars reports out-of-range for subnormal/huge literals; strtod saturates.
        t.number = std::strtod(t.text.c_str(), nullptr);
      }
      advance(j - i);
    } else if (std::string_view("+-*/^(){}[],=;").find(c) != std::string_view::npos) {
      t.type = Tok::symbol;
      t.text = std::string(1, c);
      advance(1);
    } else {
      std::string shown;
      const auto uc = static_cast<unsigned char>(c);
      if (uc < 0x20 || uc >= 0x7f) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "0x%02x", uc);
        shown = std::string("byte ") + buf;
      } else {
        shown = std::string("'") + c + "'";
      }
      throw ParseError(line, col, {"a token"}, shown);
    }
    out.push_back(std::move(t));
  }
  out.push_back({Tok::end, "", 0.0, line, col});
  return out;
}

// ---------------------------------------------------------------------------------------------
// Parser. Identifiers inside expressions are kept unresolved (kind::param with index -1) until
// all statements are read, then resolved against params and constants.

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek() const { return toks_[pos_]; }
  bool at_symbol(std::string_view s) const { return peek().type == Tok::symbol && peek().text == s; }
  bool at_ident(std::string_view s) const { return peek().type == Tok::ident && peek().text == s; }

  Token take() { return toks_[pos_++]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw ParseError(peek().line, peek().column, std::move(expected), describe(peek()));
  }

  Token expect_symbol(std::string_view s) {
    if (!at_symbol(s)) fail({"'" + std::string(s) + "'"});
    return take();
  }

  Token expect_ident(const char* what) {
    if (peek().type != Tok::ident) fail({what});
    return take();
  }

  void skip_newlines() {
    while (peek().type == Tok::newline) ++pos_;
  }

  void skip_separators() {
    while (peek().type == Tok::newline || at_symbol(";")) ++pos_;
  }

  // expr := term (('+'|'-') term)*
  Expr expression() {
    Expr lhs = term();
    while (at_symbol("+") || at_symbol("-")) {
      const auto kind = take().text == "+" ? Expr::Kind::add : Expr::Kind::sub;
      skip_newlines();
      lhs = Expr::binary(kind, std::move(lhs), term());
    }
    return lhs;
  }

  // term := unary (('*'|'/') unary)*
  Expr term() {
    Expr lhs = unary();
    while (at_symbol("*") || at_symbol("/")) {
      const auto kind = take().text == "*" ? Expr::Kind::mul : Expr::Kind::div;
      skip_newlines();
      lhs = Expr::binary(kind, std::move(lhs), unary());
    }
    return lhs;
  }

  // unary := '-' unary | '+' unary | power
  Expr unary() {
    if (at_symbol("-")) {
      take();
      return Expr::unary(Expr::Kind::neg, unary());
    }
    if (at_symbol("+")) {
      take();
      return unary();
    }
    return power();
  }

  // power := primary ('^' unary)?    (right-associative through unary -> power)
  Expr power() {
    Expr base = primary();
    if (at_symbol("^")) {
      take();
      skip_newlines();
      return Expr::binary(Expr::Kind::pow, std::move(base), unary());
    }
    return base;
  }

  Expr primary() {
    const Token& t = peek();
    if (t.type == Tok::number) {
      return Expr::constant_number(take().number);
    }
    if (t.type == Tok::ident) {
      Token id = take();
      if (at_symbol("(")) {
        auto f = func_from_name(id.text);
        if (!f) {
          throw InputError("unknown function '" + id.text + "' at line " + std::to_string(id.line) +
                           ", column " + std::to_string(id.column));
        }
        take();
        skip_newlines();
        Expr arg = expression();
        skip_newlines();
        expect_symbol(")");
        return Expr::call(*f, std::move(arg));
      }
      Expr e;
      e.kind = Expr::Kind::param;  // unresolved identifier
      e.index = -1;
      e.name = id.text;
      e.number = id.line * 100000.0 + id.column;  // position for diagnostics until resolved
      return e;
    }
    if (at_symbol("(")) {
      take();
      skip_newlines();
      Expr inner = expression();
      skip_newlines();
      expect_symbol(")");
      return inner;
    }
    fail({"a number", "an identifier", "'('", "'-'"});
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

struct Scope {
  const std::vector<std::string>* params = nullptr;
  const std::vector<NamedConstant>* constants = nullptr;  // only the visible prefix is searched
  std::size_t visible_constants = 0;
  bool allow_params = true;
};

void resolve(Expr& e, const Scope& scope, const std::string& context) {
  if (e.kind == Expr::Kind::param && e.index < 0) {
    const auto pos = static_cast<long>(e.number);
    const std::string where =
        " (line " + std::to_string(pos / 100000) + ", column " + std::to_string(pos % 100000) + ")";
    if (e.name == "pi" || e.name == "e") {
      e = Expr::constant_number(e.name == "pi" ? std::numbers::pi : std::numbers::e);
      return;
    }
    if (scope.constants) {
      for (std::size_t i = 0; i < scope.visible_constants; ++i) {
        if ((*scope.constants)[i].name == e.name) {
          e = Expr::named_constant(static_cast<int>(i), e.name);
          return;
        }
      }
    }
    if (scope.params) {
      for (std::size_t i = 0; i < scope.params->size(); ++i) {
        if ((*scope.params)[i] == e.name) {
          if (!scope.allow_params) {
            throw InputError("parameter '" + e.name + "' cannot appear in " + context + where);
          }
          e = Expr::parameter(static_cast<int>(i), e.name);
          return;
        }
      }
    }
    throw InputError("unknown identifier '" + e.name + "' in " + context + where);
  }
  for (auto& a : e.args) resolve(a, scope, context);
}

int coordinate_slot(const std::string& id, int n) {
  if (id == "z") return 2 * n;
  if (id.size() < 2 || (id[0] != 'x' && id[0] != 'y')) return -1;
  int k = 0;
  for (std::size_t i = 1; i < id.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(id[i]))) return -1;
    k = k * 10 + (id[i] - '0');
    if (k > 100000) return -1;
  }
  if (id[1] == '0' || k < 1 || k > n) return -2;
  return 2 * (k - 1) + (id[0] == 'x' ? 0 : 1);
}

double const_eval(const Expr& e, const std::vector<NamedConstant>& consts) {
  std::vector<double> values;
  for (const auto& c : consts) values.push_back(c.value);
  return eval_value(e, {}, values);
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void print(const Expr& e, std::string& out) {
  switch (e.kind) {
    case Expr::Kind::number:
      if (std::signbit(e.number)) {
        out += "(-" + fmt17(-e.number) + ")";
      } else {
        out += fmt17(e.number);
      }
      return;
    case Expr::Kind::param:
    case Expr::Kind::constant: out += e.name; return;
    case Expr::Kind::neg:
      out += "(-";
      print(e.args[0], out);
      out += ")";
      return;
    case Expr::Kind::call:
      out += func_name(e.func);
      out += "(";
      print(e.args[0], out);
      out += ")";
      return;
    default: break;
  }
  const char* op = e.kind == Expr::Kind::add   ? " + "
                   : e.kind == Expr::Kind::sub ? " - "
                   : e.kind == Expr::Kind::mul ? " * "
                   : e.kind == Expr::Kind::div ? " / "
                                               : "^";
  out += "(";
  print(e.args[0], out);
  out += op;
  print(e.args[1], out);
  out += ")";
}

bool is_keyword(const std::string& s) {
  static const std::set<std::string> kw = {"ambient", "params", "const", "domain", "map",
                                           "distribution", "in", "pi", "e"};
  return kw.count(s) > 0 || func_from_name(s).has_value();
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

ImmersionSpec parse_spec(std::string_view text, const ConstOverrides& overrides) {
  Parser p(lex(text));
  ImmersionSpec spec;

  struct PendingConst {
    std::string name;
    Expr expr;
  };
  struct PendingDomain {
    std::string name;
    Expr lo, hi;
    int line;
  };
  std::vector<PendingConst> pending_consts;
  std::vector<PendingDomain> pending_domains;
  std::vector<std::pair<int, Expr>> pending_coords;
  bool have_params = false;
  bool have_map = false;
  std::set<std::string> used_names;

  p.skip_separators();
  if (!p.at_ident("ambient")) p.fail({"'ambient'"});
  p.take();
  if (p.peek().type != Tok::number) p.fail({"an integer ambient dimension"});
  const Token dim_tok = p.take();
  int ambient = 0;
  {
    auto res = std::from_chars(dim_tok.text.data(), dim_tok.text.data() + dim_tok.text.size(), ambient);
    if (res.ec != std::errc() || res.ptr != dim_tok.text.data() + dim_tok.text.size() || ambient < 1) {
      throw ParseError(dim_tok.line, dim_tok.column, {"a positive integer"}, "'" + dim_tok.text + "'");
    }
  }
  if (ambient % 2 == 0) {
    throw InputError("ambient dimension must be odd (got " + std::to_string(ambient) + ")");
  }
  spec.n = (ambient - 1) / 2;
  std::vector<bool> seen_slot(static_cast<std::size_t>(ambient), false);

  auto end_statement = [&] {
    if (p.peek().type == Tok::end) return;
    if (p.peek().type != Tok::newline && !p.at_symbol(";")) p.fail({"end of line", "';'"});
    p.skip_separators();
  };

  auto claim_name = [&](const Token& t) {
    if (is_keyword(t.text)) {
      throw InputError("'" + t.text + "' is reserved and cannot be declared (line " + std::to_string(t.line) + ")");
    }
    if (!used_names.insert(t.text).second) {
      throw InputError("name '" + t.text + "' declared twice (line " + std::to_string(t.line) + ")");
    }
  };

  end_statement();
  while (p.peek().type != Tok::end) {
    if (p.at_ident("params")) {
      const Token kw = p.take();
      if (have_params) throw InputError("duplicate 'params' statement (line " + std::to_string(kw.line) + ")");
      have_params = true;
      if (p.peek().type != Tok::ident) p.fail({"a parameter name"});
      while (p.peek().type == Tok::ident) {
        Token t = p.take();
        claim_name(t);
        spec.params.push_back(t.text);
      }
    } else if (p.at_ident("const")) {
      p.take();
      Token id = p.expect_ident("a constant name");
      claim_name(id);
      p.expect_symbol("=");
      pending_consts.push_back({id.text, p.expression()});
    } else if (p.at_ident("domain")) {
      const Token kw = p.take();
      Token id = p.expect_ident("a parameter name");
      if (!p.at_ident("in")) p.fail({"'in'"});
      p.take();
      p.expect_symbol("[");
      Expr lo = p.expression();
      p.expect_symbol(",");
      Expr hi = p.expression();
      p.expect_symbol("]");
      pending_domains.push_back({id.text, std::move(lo), std::move(hi), kw.line});
    } else if (p.at_ident("map")) {
      const Token kw = p.take();
      if (have_map) throw InputError("duplicate 'map' block (line " + std::to_string(kw.line) + ")");
      have_map = true;
      p.skip_newlines();
      p.expect_symbol("{");
      p.skip_separators();
      while (!p.at_symbol("}")) {
        if (p.peek().type != Tok::ident) p.fail({"a coordinate name (x<i>, y<i>, z)", "'}'"});
        Token c = p.take();
        const int slot = coordinate_slot(c.text, spec.n);
        if (slot == -1) {
          throw ParseError(c.line, c.column, {"a coordinate name (x<i>, y<i>, z)"}, "'" + c.text + "'");
        }
        if (slot == -2) {
          throw InputError("coordinate '" + c.text + "' is out of range for ambient dimension " +
                           std::to_string(ambient) + " (line " + std::to_string(c.line) + ")");
        }
        if (seen_slot[static_cast<std::size_t>(slot)]) {
          throw InputError("coordinate '" + c.text + "' assigned twice (line " + std::to_string(c.line) + ")");
        }
        seen_slot[static_cast<std::size_t>(slot)] = true;
        p.expect_symbol("=");
        pending_coords.emplace_back(slot, p.expression());
        if (p.at_symbol("}")) break;
        if (p.peek().type != Tok::newline && !p.at_symbol(";")) p.fail({"end of line", "';'", "'}'"});
        p.skip_separators();
      }
      p.expect_symbol("}");
    } else if (p.at_ident("distribution")) {
      p.take();
      Token id = p.expect_ident("a distribution name");
      for (const auto& d : spec.distributions) {
        if (d.name == id.text) {
          throw InputError("distribution '" + id.text + "' declared twice (line " + std::to_string(id.line) + ")");
        }
      }
      DeclaredDistribution dist;
      dist.name = id.text;
      p.skip_newlines();
      p.expect_symbol("{");
      p.skip_newlines();
      for (;;) {
        const Token open = p.expect_symbol("(");
        std::vector<Expr> comps;
        p.skip_newlines();
        comps.push_back(p.expression());
        p.skip_newlines();
        while (p.at_symbol(",")) {
          p.take();
          p.skip_newlines();
          comps.push_back(p.expression());
          p.skip_newlines();
        }
        p.expect_symbol(")");
        dist.fields.push_back(std::move(comps));
        p.skip_newlines();
        if (!p.at_symbol(",")) break;
        p.take();
        p.skip_newlines();
      }
      p.expect_symbol("}");
      spec.distributions.push_back(std::move(dist));
    } else {
      p.fail({"'params'", "'const'", "'domain'", "'map'", "'distribution'"});
    }
    end_statement();
  }

  if (spec.params.empty()) throw InputError("spec declares no parameters ('params' statement missing)");
  const int m = spec.param_count();
  if (m > ambient) {
    throw InputError("parameter count " + std::to_string(m) + " exceeds ambient dimension " + std::to_string(ambient));
  }

  for (const auto& [name, value] : overrides) {
    bool found = false;
    for (const auto& c : pending_consts) found = found || c.name == name;
    if (!found) throw InputError("override for undeclared constant '" + name + "'");
  }

  // Constants are closed-form expressions of literals and earlier constants.
  for (auto& pc : pending_consts) {
    double value = 0.0;
    if (auto it = overrides.find(pc.name); it != overrides.end()) {
      value = it->second;
    } else {
      Scope scope{&spec.params, &spec.constants, spec.constants.size(), false};
      resolve(pc.expr, scope, "constant '" + pc.name + "'");
      value = const_eval(pc.expr, spec.constants);
    }
    if (!std::isfinite(value)) throw InputError("constant '" + pc.name + "' is not finite");
    spec.constants.push_back({pc.name, value});
  }

  const Scope full{&spec.params, &spec.constants, spec.constants.size(), true};

  spec.coords.assign(static_cast<std::size_t>(ambient), Expr::constant_number(0.0));
  spec.assigned.assign(static_cast<std::size_t>(ambient), false);
  for (auto& [slot, expr] : pending_coords) {
    resolve(expr, full, "coordinate " + coordinate_name(spec.n, slot));
    spec.coords[static_cast<std::size_t>(slot)] = std::move(expr);
    spec.assigned[static_cast<std::size_t>(slot)] = true;
  }

  spec.domain.assign(static_cast<std::size_t>(m), Interval{});
  std::vector<bool> domain_seen(static_cast<std::size_t>(m), false);
  for (auto& pd : pending_domains) {
    int idx = -1;
    for (int i = 0; i < m; ++i) {
      if (spec.params[static_cast<std::size_t>(i)] == pd.name) idx = i;
    }
    if (idx < 0) {
      throw InputError("unknown identifier '" + pd.name + "' in domain statement (line " + std::to_string(pd.line) + ")");
    }
    if (domain_seen[static_cast<std::size_t>(idx)]) {
      throw InputError("domain for '" + pd.name + "' given twice (line " + std::to_string(pd.line) + ")");
    }
    domain_seen[static_cast<std::size_t>(idx)] = true;
    Scope scope{&spec.params, &spec.constants, spec.constants.size(), false};
    resolve(pd.lo, scope, "domain of '" + pd.name + "'");
    resolve(pd.hi, scope, "domain of '" + pd.name + "'");
    Interval iv{const_eval(pd.lo, spec.constants), const_eval(pd.hi, spec.constants)};
    if (!(iv.lo < iv.hi) || !std::isfinite(iv.lo) || !std::isfinite(iv.hi)) {
      throw InputError("domain of '" + pd.name + "' must be a finite interval with lo < hi (line " +
                       std::to_string(pd.line) + ")");
    }
    spec.domain[static_cast<std::size_t>(idx)] = iv;
  }

  for (auto& dist : spec.distributions) {
    for (std::size_t f = 0; f < dist.fields.size(); ++f) {
      if (static_cast<int>(dist.fields[f].size()) != m) {
        throw InputError("distribution '" + dist.name + "' field " + std::to_string(f + 1) + " has " +
                         std::to_string(dist.fields[f].size()) + " components, expected " + std::to_string(m));
      }
      for (auto& comp : dist.fields[f]) resolve(comp, full, "distribution '" + dist.name + "'");
    }
  }
  return spec;
}

Expr parse_expression(std::string_view text, const ImmersionSpec& spec) {
  Parser p(lex(text));
  p.skip_newlines();
  Expr e = p.expression();
  p.skip_separators();
  if (p.peek().type != Tok::end) p.fail({"end of input"});
  Scope scope{&spec.params, &spec.constants, spec.constants.size(), true};
  resolve(e, scope, "expression");
  return e;
}

double eval_constant_expression(std::string_view text) {
  Parser p(lex(text));
  p.skip_newlines();
  Expr e = p.expression();
  p.skip_separators();
  if (p.peek().type != Tok::end) p.fail({"end of input"});
  Scope scope{};
  resolve(e, scope, "constant expression");
  return eval_value(e, {}, {});
}

std::string to_string(const ImmersionSpec& spec) {
  std::string out = "ambient " + std::to_string(spec.ambient_dim()) + "\nparams";
  for (const auto& p : spec.params) out += " " + p;
  out += "\n";
  for (const auto& c : spec.constants) out += "const " + c.name + " = " + fmt17(c.value) + "\n";
  for (std::size_t i = 0; i < spec.domain.size(); ++i) {
    const auto& iv = spec.domain[i];
    if (iv == Interval{}) continue;
    out += "domain " + spec.params[i] + " in [" + fmt17(iv.lo) + ", " + fmt17(iv.hi) + "]\n";
  }
  out += "map {\n";
  for (std::size_t s = 0; s < spec.coords.size(); ++s) {
    if (!spec.assigned[s]) continue;
    out += "  " + coordinate_name(spec.n, static_cast<int>(s)) + " = " + to_string(spec.coords[s]) + "\n";
  }
  out += "}\n";
  for (const auto& d : spec.distributions) {
    out += "distribution " + d.name + " {\n";
    for (std::size_t f = 0; f < d.fields.size(); ++f) {
      out += "  (";
      for (std::size_t k = 0; k < d.fields[f].size(); ++k) {
        out += (k ? ", " : "") + to_string(d.fields[f][k]);
      }
      out += f + 1 < d.fields.size() ? "),\n" : ")\n";
    }
    out += "}\n";
  }
  return out;
}

}  // namespace slantcheck
