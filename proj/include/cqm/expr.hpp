#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cqm/smooth.hpp"

namespace cqm::expr {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& what, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownIdentifier : public std::runtime_error {
 public:
  UnknownIdentifier(const std::string& name, std::size_t offset);
  const std::string& name() const { return name_; }
  std::size_t offset() const { return offset_; }

 private:
  std::string name_;
  std::size_t offset_;
};

// Raised when a compiled field leaves the domain of a primitive; carries the point.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, std::vector<double> point);
  const std::vector<double>& point() const { return point_; }

 private:
  std::vector<double> point_;
};

// Raised when a compiled field is evaluated outside its chart box.
class OutOfBox : public std::runtime_error {
 public:
  OutOfBox(const std::string& what, std::vector<double> point);
  const std::vector<double>& point() const { return point_; }

 private:
  std::vector<double> point_;
};

enum class Kind { Number, Constant, Coordinate, Neg, Add, Sub, Mul, Div, Pow, Call };

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
  Kind kind;
  double number = 0.0;  // Number
  std::string name;     // Constant, Call
  int coord = -1;       // Coordinate
  std::vector<Expr> args;
};

inline const std::set<std::string>& functions() {
  static const std::set<std::string> f{"sin", "cos", "exp", "sqrt", "abs"};
  return f;
}

// Identifiers x0..x{ncoords-1} are coordinates; anything else must be in constants.
Expr parse(std::string_view src, const std::set<std::string>& constants, int ncoords = 4);
// Infix form with the fewest parentheses that reparse to the same tree.
std::string print(const Expr& e);
// Prefix form, e.g. add(pow(x1,2),pow(x2,2)).
std::string dump(const Expr& e);
bool equal(const Expr& a, const Expr& b);
bool depends_on_coordinates(const Expr& e);

// Axis-aligned chart box; an empty box disables the check.
struct Box {
  std::vector<double> lo, hi;
  bool empty() const { return lo.empty(); }
  bool contains(std::span<const double> p, double slack = 0.0) const;
};

ScalarField compile(const Expr& e, const std::map<std::string, double>& constants, int ncoords = 4,
                    const Box& box = {});
double evaluate(const Expr& e, const std::map<std::string, double>& constants, std::span<const double> x = {});

}  // namespace cqm::expr
