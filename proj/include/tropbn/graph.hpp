#pragma once

// Chains of loops with admissible edge lengths.
//
// A chain of g loops has vertices w_0, v_1, w_1, ..., v_g, w_g, v_{g+1}.
// Bridge k (k = 1..g+1) joins w_{k-1} to v_k and has length n_k.  Loop k
// consists of a top edge of length l_k and a bottom edge of length m_k,
// both oriented v_k -> w_k.  Offsets along an edge are measured from the
// leftward endpoint: w_{k-1} for bridge k, v_k for loop edges.

#include <optional>
#include <string>
#include <vector>

#include "tropbn/rational.hpp"

namespace tropbn {

enum class EdgeKind { bridge, loop_top, loop_bottom };

struct EdgeId {
  EdgeKind kind;
  int k;  // 1-indexed: bridges 1..g+1, loops 1..g

  friend bool operator==(const EdgeId&, const EdgeId&) = default;
};

std::string edge_id_string(const EdgeId& e);
EdgeId edge_id_from_string(const std::string& s);

struct ChainOfLoops {
  int g = 0;
  Rational F;               // admissibility factor the chain was built with
  std::vector<Rational> l;  // l[k-1] = top length of loop k
  std::vector<Rational> m;  // m[k-1] = bottom length of loop k
  std::vector<Rational> n;  // n[k-1] = length of bridge k, k = 1..g+1

  const Rational& top(int k) const { return l.at(k - 1); }
  const Rational& bottom(int k) const { return m.at(k - 1); }
  const Rational& bridge(int k) const { return n.at(k - 1); }
  Rational loop_length(int k) const { return top(k) + bottom(k); }

  Rational edge_length(const EdgeId& e) const;

  // Dense edge numbering: bridges first, then (top, bottom) per loop.
  int edge_count() const { return 3 * g + 1; }
  int edge_index(const EdgeId& e) const;
  EdgeId edge_at(int index) const;

  json to_json() const;
  static ChainOfLoops from_json(const json& j);
};

// Lengths in strictly decreasing admissible order
//   n_1 > ... > n_{g+1} > l_1 > m_1 > l_2 > m_2 > ...
// with each step contracting by the factor F:
//   n_k = base * F^{g+1-k},  l_k = base / F^{2k-1},  m_k = base / F^{2k}.
// Requires g >= 1, F >= 2, base > 0.
ChainOfLoops make_chain(int g, const Rational& F, const Rational& base);

// Every comparison l_{k+1} <<_F m_k <<_F l_k <<_F n_{k+1} <<_F n_k holds,
// where a <<_F b means a * F <= b.
bool is_admissible(const ChainOfLoops& c, const Rational& F);
inline bool is_admissible(const ChainOfLoops& c) { return is_admissible(c, c.F); }

// A point of the chain: an edge and an offset in [0, edge length].
// Canonical form resolves vertex aliases:
//   v_k  = bridge-k at offset n_k   (rather than a loop edge at offset 0),
//   w_k  = bridge-(k+1) at offset 0 (rather than a loop-k edge at full length).
// w_0 and v_{g+1} are the bridge-1 / bridge-(g+1) endpoints.
struct GraphPoint {
  EdgeId edge;
  Rational offset;

  friend bool operator==(const GraphPoint&, const GraphPoint&) = default;

  json to_json() const;
  static GraphPoint from_json(const json& j);
};

GraphPoint canonicalize(const GraphPoint& p, const ChainOfLoops& c);
bool is_canonical(const GraphPoint& p, const ChainOfLoops& c);

// Vertex helpers (canonical representations).
GraphPoint vertex_w(int k, const ChainOfLoops& c);  // w_k, k = 0..g
GraphPoint vertex_v(int k, const ChainOfLoops& c);  // v_k, k = 1..g+1
// Loop coordinate: the point of loop k at counterclockwise distance x from
// v_k, where counterclockwise leaves v_k along the bottom edge (so w_k sits
// at x = m_k and top-edge points have x = m_k + l_k - offset).
GraphPoint loop_point(int k, const Rational& x, const ChainOfLoops& c);
// Inverse of loop_point for canonical points on loop k (vertices included).
std::optional<Rational> loop_coordinate(int k, const GraphPoint& p, const ChainOfLoops& c);

// A tangent direction: leaves `base` along `edge` with offset increasing
// (`increasing` = true) or decreasing.  At a vertex any incident edge is
// allowed; in the interior `edge` must be the containing edge.
struct TangentVector {
  GraphPoint base;
  EdgeId edge;
  bool increasing;
};

// The incident outgoing tangent vectors at a canonical point (2 in the
// interior of an edge, 1 at w_0 / v_{g+1}, 3 at other vertices).
std::vector<TangentVector> outgoing_tangents(const GraphPoint& p, const ChainOfLoops& c);

}  // namespace tropbn
