#include "cqm/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace cqm::expr {

SyntaxError::SyntaxError(const std::string& what, std::size_t offset)
    : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

UnknownIdentifier::UnknownIdentifier(const std::string& name, std::size_t offset)
    : std::runtime_error("unknown identifier '" + name + "' at offset " + std::to_string(offset)),
      name_(name),
      offset_(offset) {}

namespace {

std::string point_text(const std::vector<double>& p) {
  std::ostringstream os;
  os.precision(17);
  os << "(";
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
  os << ")";
  return os.str();
}

}  // namespace

EvaluationError::EvaluationError(const std::string& what, std::vector<double> point)
    : std::runtime_error(what + " at " + point_text(point)), point_(std::move(point)) {}

OutOfBox::OutOfBox(const std::string& what, std::vector<double> point)
    : std::runtime_error(what + " at " + point_text(point)), point_(std::move(point)) {}

namespace {

Expr make(Kind k, std::vector<Expr> args = {}) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->args = std::move(args);
  return n;
}

class Parser {
 public:
  Parser(std::string_view src, const std::set<std::string>& constants, int ncoords)
      : s_(src), consts_(constants), ncoords_(ncoords) {}

  Expr run() {
    Expr e = expression();
    skip();
    if (pos_ != s_.size()) throw SyntaxError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
    return e;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) throw SyntaxError(std::string("expected '") + c + "'", pos_);
  }

  Expr expression() {
    Expr e = term();
    for (;;) {
      if (accept('+')) e = make(Kind::Add, {e, term()});
      else if (accept('-')) e = make(Kind::Sub, {e, term()});
      else return e;
    }
  }
  Expr term() {
    Expr e = unary();
    for (;;) {
      if (accept('*')) e = make(Kind::Mul, {e, unary()});
      else if (accept('/')) e = make(Kind::Div, {e, unary()});
      else return e;
    }
  }
  Expr unary() {
    if (accept('-')) return make(Kind::Neg, {unary()});
    if (accept('+')) return unary();
    return power();
  }
  Expr power() {
    Expr base = primary();
    skip();
    const std::size_t at = pos_;
    if (accept('^')) {
      Expr ex = unary();
      if (depends_on_coordinates(ex)) throw SyntaxError("exponent must be constant", at);
      return make(Kind::Pow, {base, ex});
    }
    return base;
  }
  Expr primary() {
    skip();
    if (pos_ >= s_.size()) throw SyntaxError("unexpected end of input", pos_);
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expression();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    throw SyntaxError("unexpected '" + std::string(1, c) + "'", pos_);
  }
  Expr number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t q = pos_ + 1;
      if (q < s_.size() && (s_[q] == '+' || s_[q] == '-')) ++q;
      if (q < s_.size() && std::isdigit(static_cast<unsigned char>(s_[q]))) {
        pos_ = q;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
    }
    double v = 0;
    const auto r = std::from_chars(s_.data() + start, s_.data() + pos_, v);
    if (r.ec != std::errc() || r.ptr != s_.data() + pos_) throw SyntaxError("malformed number", start);
    auto n = std::make_shared<Node>();
    n->kind = Kind::Number;
    n->number = v;
    return n;
  }
  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    const std::string name(s_.substr(start, pos_ - start));
    if (functions().count(name)) {
      skip();
      if (pos_ >= s_.size() || s_[pos_] != '(') throw SyntaxError("expected '(' after " + name, pos_);
      ++pos_;
      Expr arg = expression();
      expect(')');
      auto n = std::make_shared<Node>();
      n->kind = Kind::Call;
      n->name = name;
      n->args = {arg};
      return n;
    }
    auto n = std::make_shared<Node>();
    if (name.size() >= 2 && name[0] == 'x' &&
        name.find_first_not_of("0123456789", 1) == std::string::npos && name.size() <= 3) {
      const int k = std::stoi(name.substr(1));
      if (k >= 0 && k < ncoords_ && std::to_string(k) == name.substr(1)) {
        n->kind = Kind::Coordinate;
        n->coord = k;
        n->name = name;
        return n;
      }
    }
    if (!consts_.count(name)) throw UnknownIdentifier(name, start);
    n->kind = Kind::Constant;
    n->name = name;
    return n;
  }

  std::string_view s_;
  const std::set<std::string>& consts_;
  int ncoords_;
  std::size_t pos_ = 0;
};

int precedence(const Expr& e) {
  switch (e->kind) {
    case Kind::Add:
    case Kind::Sub:
      return 1;
    case Kind::Mul:
    case Kind::Div:
      return 2;
    case Kind::Neg:
      return 3;
    case Kind::Pow:
      return 4;
    default:
      return 5;
  }
}

std::string number_text(double v) {
  char buf[32];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string wrap(const Expr& e, bool paren);

std::string infix(const Expr& e) {
  const auto& a = e->args;
  switch (e->kind) {
    case Kind::Number:
      return number_text(e->number);
    case Kind::Constant:
    case Kind::Coordinate:
      return e->name;
    case Kind::Neg:
      return "-" + wrap(a[0], precedence(a[0]) < 3);
    case Kind::Add:
      return wrap(a[0], false) + " + " + wrap(a[1], precedence(a[1]) <= 1);
    case Kind::Sub:
      return wrap(a[0], false) + " - " + wrap(a[1], precedence(a[1]) <= 1);
    case Kind::Mul:
      return wrap(a[0], precedence(a[0]) < 2) + "*" + wrap(a[1], precedence(a[1]) <= 2);
    case Kind::Div:
      return wrap(a[0], precedence(a[0]) < 2) + "/" + wrap(a[1], precedence(a[1]) <= 2);
    case Kind::Pow:
      return wrap(a[0], precedence(a[0]) < 5) + "^" + wrap(a[1], precedence(a[1]) < 3);
    case Kind::Call:
      return e->name + "(" + infix(a[0]) + ")";
  }
  return {};
}

std::string wrap(const Expr& e, bool paren) { return paren ? "(" + infix(e) + ")" : infix(e); }

const char* op_name(Kind k) {
  switch (k) {
    case Kind::Neg: return "neg";
    case Kind::Add: return "add";
    case Kind::Sub: return "sub";
    case Kind::Mul: return "mul";
    case Kind::Div: return "div";
    case Kind::Pow: return "pow";
    default: return "";
  }
}

using TFn = std::function<Taylor(std::span<const Taylor>)>;

double constant_value(const Expr& e, const std::map<std::string, double>& c) {
  return evaluate(e, c);
}

TFn build(const Expr& e, const std::map<std::string, double>& c) {
  const auto& a = e->args;
  switch (e->kind) {
    case Kind::Number:
    case Kind::Constant: {
      const double v = constant_value(e, c);
      return [v](std::span<const Taylor> x) { return x[0].constant(v); };
    }
    case Kind::Coordinate: {
      const int k = e->coord;
      return [k](std::span<const Taylor> x) { return x[k]; };
    }
    case Kind::Neg: {
      auto f = build(a[0], c);
      return [f](std::span<const Taylor> x) { return -f(x); };
    }
    case Kind::Add:
    case Kind::Sub:
    case Kind::Mul:
    case Kind::Div: {
      auto f = build(a[0], c), g = build(a[1], c);
      switch (e->kind) {
        case Kind::Add: return [f, g](std::span<const Taylor> x) { return f(x) + g(x); };
        case Kind::Sub: return [f, g](std::span<const Taylor> x) { return f(x) - g(x); };
        case Kind::Mul: return [f, g](std::span<const Taylor> x) { return f(x) * g(x); };
        default: return [f, g](std::span<const Taylor> x) { return f(x) / g(x); };
      }
    }
    case Kind::Pow: {
      auto f = build(a[0], c);
      const double r = constant_value(a[1], c);
      const double twice = 2 * r;
      if (std::abs(twice - std::round(twice)) > 1e-12)
        throw std::invalid_argument("exponent " + number_text(r) + " is not an integer or half-integer");
      if (std::abs(r - std::round(r)) < 1e-12) {
        const int n = static_cast<int>(std::round(r));
        return [f, n](std::span<const Taylor> x) { return powi(f(x), n); };
      }
      const double h = std::round(twice) / 2;
      return [f, h](std::span<const Taylor> x) { return pow(f(x), h); };
    }
    case Kind::Call: {
      auto f = build(a[0], c);
      const std::string& n = e->name;
      if (n == "sin") return [f](std::span<const Taylor> x) { return sin(f(x)); };
      if (n == "cos") return [f](std::span<const Taylor> x) { return cos(f(x)); };
      if (n == "exp") return [f](std::span<const Taylor> x) { return exp(f(x)); };
      if (n == "sqrt") return [f](std::span<const Taylor> x) { return sqrt(f(x)); };
      return [f](std::span<const Taylor> x) { return abs(f(x)); };
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

Expr parse(std::string_view src, const std::set<std::string>& constants, int ncoords) {
  return Parser(src, constants, ncoords).run();
}

std::string print(const Expr& e) { return infix(e); }

std::string dump(const Expr& e) {
  switch (e->kind) {
    case Kind::Number:
      return number_text(e->number);
    case Kind::Constant:
    case Kind::Coordinate:
      return e->name;
    case Kind::Call:
      return e->name + "(" + dump(e->args[0]) + ")";
    default: {
      std::string s = std::string(op_name(e->kind)) + "(";
      for (std::size_t i = 0; i < e->args.size(); ++i) s += (i ? "," : "") + dump(e->args[i]);
      return s + ")";
    }
  }
}

bool equal(const Expr& a, const Expr& b) {
  if (a->kind != b->kind || a->name != b->name || a->coord != b->coord || a->args.size() != b->args.size())
    return false;
  if (a->kind == Kind::Number && a->number != b->number) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!equal(a->args[i], b->args[i])) return false;
  return true;
}

bool depends_on_coordinates(const Expr& e) {
  if (e->kind == Kind::Coordinate) return true;
  for (const auto& a : e->args)
    if (depends_on_coordinates(a)) return true;
  return false;
}

bool Box::contains(std::span<const double> p, double slack) const {
  if (empty()) return true;
  for (std::size_t i = 0; i < lo.size() && i < p.size(); ++i) {
    const double pad = slack * (hi[i] - lo[i]);
    if (!(p[i] >= lo[i] - pad && p[i] <= hi[i] + pad)) return false;
  }
  return true;
}

ScalarField compile(const Expr& e, const std::map<std::string, double>& constants, int ncoords, const Box& box) {
  TFn f = build(e, constants);
  return ScalarField::from(ncoords, [f, box](std::span<const Taylor> x) {
    if (!box.empty()) {
      const auto p = values(x);
      if (!box.contains(p)) throw OutOfBox("point outside the chart box", p);
    }
    try {
      return f(x);
    } catch (const DomainError& err) {
      throw EvaluationError(err.what(), values(x));
    }
  });
}

double evaluate(const Expr& e, const std::map<std::string, double>& c, std::span<const double> x) {
  const auto& a = e->args;
  switch (e->kind) {
    case Kind::Number:
      return e->number;
    case Kind::Constant: {
      const auto it = c.find(e->name);
      if (it == c.end()) throw UnknownIdentifier(e->name, 0);
      return it->second;
    }
    case Kind::Coordinate:
      if (e->coord >= static_cast<int>(x.size())) throw std::invalid_argument("coordinate without a point");
      return x[e->coord];
    case Kind::Neg:
      return -evaluate(a[0], c, x);
    case Kind::Add:
      return evaluate(a[0], c, x) + evaluate(a[1], c, x);
    case Kind::Sub:
      return evaluate(a[0], c, x) - evaluate(a[1], c, x);
    case Kind::Mul:
      return evaluate(a[0], c, x) * evaluate(a[1], c, x);
    case Kind::Div:
      return evaluate(a[0], c, x) / evaluate(a[1], c, x);
    case Kind::Pow:
      return std::pow(evaluate(a[0], c, x), evaluate(a[1], c, x));
    case Kind::Call: {
      const double v = evaluate(a[0], c, x);
      const std::string& n = e->name;
      if (n == "sin") return std::sin(v);
      if (n == "cos") return std::cos(v);
      if (n == "exp") return std::exp(v);
      if (n == "sqrt") return std::sqrt(v);
      return std::abs(v);
    }
  }
  return 0;
}

}  // namespace cqm::expr
