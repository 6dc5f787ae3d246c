#pragma once

// Piecewise linear functions with integer slopes on a chain of loops,
// divisors, and the exact lower-envelope machinery used throughout.

#include <functional>
#include <memory>
#include <vector>

#include "tropbn/graph.hpp"

namespace tropbn {

struct Breakpoint {
  Rational offset;
  Rational value;

  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

// A divisor with integer multiplicities supported on canonical points.
// Multiplicities may be negative (divisors of functions are differences of
// effective divisors); zero multiplicities are never stored.
class Divisor {
 public:
  Divisor() = default;
  explicit Divisor(std::shared_ptr<const ChainOfLoops> chain) : chain_(std::move(chain)) {}

  const std::shared_ptr<const ChainOfLoops>& chain() const { return chain_; }
  const std::vector<std::pair<GraphPoint, long>>& points() const { return pts_; }

  void add(const GraphPoint& p, long mult);
  long multiplicity(const GraphPoint& p) const;
  long degree() const;
  bool is_effective() const;

  Divisor& operator+=(const Divisor& other);
  friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
  Divisor scaled(long factor) const;

  json to_json() const;
  static Divisor from_json(const json& j, std::shared_ptr<const ChainOfLoops> chain);

  friend bool operator==(const Divisor& a, const Divisor& b) {
    return a.pts_ == b.pts_;
  }

 private:
  std::shared_ptr<const ChainOfLoops> chain_;
  // canonical points, sorted by (edge index, offset), multiplicity != 0
  std::vector<std::pair<GraphPoint, long>> pts_;
};

// A continuous piecewise linear function on the whole chain.  Each edge
// stores its breakpoints sorted by offset, endpoints included; slopes
// between consecutive breakpoints are integers.  Canonical form keeps no
// interior breakpoint whose adjacent slopes agree.
class PLFunction {
 public:
  PLFunction() = default;

  // All edges must be assigned; validates and canonicalizes.
  PLFunction(std::shared_ptr<const ChainOfLoops> chain,
             std::vector<std::vector<Breakpoint>> per_edge);

  static PLFunction constant(std::shared_ptr<const ChainOfLoops> chain, const Rational& v);

  const std::shared_ptr<const ChainOfLoops>& chain() const { return chain_; }
  const std::vector<Breakpoint>& edge_breakpoints(const EdgeId& e) const {
    return edges_[chain_->edge_index(e)];
  }

  Rational eval(const GraphPoint& p) const;
  Rational operator()(const GraphPoint& p) const { return eval(p); }

  // Slope of the linear piece leaving the base point in the given direction
  // (exact; the base may be a vertex, in which case the tangent's edge
  // selects the germ).
  long slope_along(const TangentVector& t) const;

  // Order of vanishing: the sum of incoming slopes at p, equivalently minus
  // the sum of outgoing germ slopes.  Nonzero only at bend points.
  long ord_at(const GraphPoint& p) const;

  PLFunction& operator+=(const Rational& c);
  friend PLFunction operator+(PLFunction f, const Rational& c) { return f += c; }
  friend PLFunction operator+(const PLFunction& f, const PLFunction& g);
  friend PLFunction operator-(const PLFunction& f, const PLFunction& g);

  json to_json() const;
  static PLFunction from_json(const json& j, std::shared_ptr<const ChainOfLoops> chain);

  friend bool operator==(const PLFunction& a, const PLFunction& b) {
    return a.edges_ == b.edges_;
  }

 private:
  std::shared_ptr<const ChainOfLoops> chain_;
  std::vector<std::vector<Breakpoint>> edges_;  // by ChainOfLoops::edge_index

  void validate_and_canonicalize();
  friend PLFunction pointwise_binary(const PLFunction&, const PLFunction&,
                                     const std::function<Rational(const Rational&, const Rational&)>&);
};

// div(f): the divisor of f, supported on bend points.  Always has degree 0.
Divisor principal_divisor(const PLFunction& f);

// div(f) + D >= 0, i.e. f is a global section of O(D).
bool is_section(const PLFunction& f, const Divisor& D);

// Exact pointwise minimum min_i(fs[i] + cs[i]).  Throws on empty input or
// mismatched chains.
PLFunction tropical_combination_value(const std::vector<const PLFunction*>& fs,
                                      const std::vector<Rational>& cs);
PLFunction tropical_combination_value(const std::vector<PLFunction>& fs,
                                      const std::vector<Rational>& cs);

// One maximal linearity interval of the lower envelope of {fs[i] + cs[i]}
// restricted to an edge.  `ids` lists every index whose shifted function
// coincides with the envelope on all of [a, b].
struct EnvelopePiece {
  Rational a, b;
  Rational va, vb;
  std::vector<int> ids;
};

// Exact lower envelope on one edge.  Consecutive pieces share endpoints;
// their id sets differ.
std::vector<EnvelopePiece> edge_envelope(const EdgeId& edge,
                                         const std::vector<const PLFunction*>& fs,
                                         const std::vector<Rational>& cs);

// Break divisor coordinates: requires multiplicity d - g at w_0 and exactly
// one multiplicity-1 point on each loop (vertices v_k / w_k count toward
// loop k); throws std::invalid_argument otherwise.  Returns the
// counterclockwise coordinates x_1..x_g, each in [0, l_k + m_k).
std::vector<Rational> break_divisor_coordinates(const Divisor& D, long d);

}  // namespace tropbn
