#include "tropbn/graph.hpp"

#include <stdexcept>

namespace tropbn {

std::string edge_id_string(const EdgeId& e) {
  switch (e.kind) {
    case EdgeKind::bridge:
      return "bridge-" + std::to_string(e.k);
    case EdgeKind::loop_top:
      return "loop-" + std::to_string(e.k) + "-top";
    case EdgeKind::loop_bottom:
      return "loop-" + std::to_string(e.k) + "-bottom";
  }
  throw std::logic_error("unreachable");
}

EdgeId edge_id_from_string(const std::string& s) {
  auto bad = [&] { return std::invalid_argument("malformed edge id: " + s); };
  auto parse_k = [&](const std::string& t) {
    if (t.empty()) throw bad();
    for (char c : t)
      if (!isdigit((unsigned char)c)) throw bad();
    return std::stoi(t);
  };
  if (s.rfind("bridge-", 0) == 0)
    return {EdgeKind::bridge, parse_k(s.substr(7))};
  if (s.rfind("loop-", 0) == 0) {
    auto rest = s.substr(5);
    auto dash = rest.find('-');
    if (dash == std::string::npos) throw bad();
    int k = parse_k(rest.substr(0, dash));
    auto side = rest.substr(dash + 1);
    if (side == "top") return {EdgeKind::loop_top, k};
    if (side == "bottom") return {EdgeKind::loop_bottom, k};
  }
  throw bad();
}

Rational ChainOfLoops::edge_length(const EdgeId& e) const {
  switch (e.kind) {
    case EdgeKind::bridge:
      return bridge(e.k);
    case EdgeKind::loop_top:
      return top(e.k);
    case EdgeKind::loop_bottom:
      return bottom(e.k);
  }
  throw std::logic_error("unreachable");
}

int ChainOfLoops::edge_index(const EdgeId& e) const {
  switch (e.kind) {
    case EdgeKind::bridge:
      if (e.k < 1 || e.k > g + 1) throw std::out_of_range("bridge index");
      return e.k - 1;
    case EdgeKind::loop_top:
      if (e.k < 1 || e.k > g) throw std::out_of_range("loop index");
      return g + 1 + 2 * (e.k - 1);
    case EdgeKind::loop_bottom:
      if (e.k < 1 || e.k > g) throw std::out_of_range("loop index");
      return g + 1 + 2 * (e.k - 1) + 1;
  }
  throw std::logic_error("unreachable");
}

EdgeId ChainOfLoops::edge_at(int index) const {
  if (index < 0 || index >= edge_count()) throw std::out_of_range("edge index");
  if (index <= g) return {EdgeKind::bridge, index + 1};
  int t = index - (g + 1);
  return {t % 2 == 0 ? EdgeKind::loop_top : EdgeKind::loop_bottom, t / 2 + 1};
}

json ChainOfLoops::to_json() const {
  json lengths;
  auto dump = [](const std::vector<Rational>& v) {
    json a = json::array();
    for (const auto& q : v) a.push_back(rational_to_string(q));
    return a;
  };
  lengths["l"] = dump(l);
  lengths["m"] = dump(m);
  lengths["n"] = dump(n);
  return json{{"genus", g}, {"F", rational_to_string(F)}, {"lengths", lengths}};
}

ChainOfLoops ChainOfLoops::from_json(const json& j) {
  ChainOfLoops c;
  c.g = j.at("genus").get<int>();
  c.F = rational_from_json(j.at("F"));
  auto load = [](const json& a) {
    std::vector<Rational> v;
    for (const auto& e : a) v.push_back(rational_from_json(e));
    return v;
  };
  const auto& lengths = j.at("lengths");
  c.l = load(lengths.at("l"));
  c.m = load(lengths.at("m"));
  c.n = load(lengths.at("n"));
  if (c.g < 1 || (int)c.l.size() != c.g || (int)c.m.size() != c.g ||
      (int)c.n.size() != c.g + 1)
    throw std::invalid_argument("chain JSON has inconsistent lengths");
  for (const auto& q : c.l)
    if (q <= 0) throw std::invalid_argument("nonpositive edge length");
  for (const auto& q : c.m)
    if (q <= 0) throw std::invalid_argument("nonpositive edge length");
  for (const auto& q : c.n)
    if (q <= 0) throw std::invalid_argument("nonpositive edge length");
  return c;
}

ChainOfLoops make_chain(int g, const Rational& F, const Rational& base) {
  if (g < 1) throw std::invalid_argument("make_chain: g must be >= 1");
  if (F < 2) throw std::invalid_argument("make_chain: F must be >= 2");
  if (base <= 0) throw std::invalid_argument("make_chain: base must be > 0");
  ChainOfLoops c;
  c.g = g;
  c.F = F;
  c.n.resize(g + 1);
  c.l.resize(g);
  c.m.resize(g);
  c.n[g] = base;
  for (int k = g; k >= 1; --k) c.n[k - 1] = c.n[k] * F;
  Rational cur = base;
  for (int k = 1; k <= g; ++k) {
    cur /= F;
    c.l[k - 1] = cur;
    cur /= F;
    c.m[k - 1] = cur;
  }
  return c;
}

bool is_admissible(const ChainOfLoops& c, const Rational& F) {
  if (c.g < 1) return false;
  for (int k = 1; k <= c.g; ++k) {
    if (c.bottom(k) * F > c.top(k)) return false;
    if (c.top(k) * F > c.bridge(k + 1)) return false;
    if (c.bridge(k + 1) * F > c.bridge(k)) return false;
    if (k < c.g && c.top(k + 1) * F > c.bottom(k)) return false;
  }
  return true;
}

json GraphPoint::to_json() const {
  return json{{"edge", edge_id_string(edge)}, {"offset", rational_to_string(offset)}};
}

GraphPoint GraphPoint::from_json(const json& j) {
  return {edge_id_from_string(j.at("edge").get<std::string>()),
          rational_from_json(j.at("offset"))};
}

GraphPoint canonicalize(const GraphPoint& p, const ChainOfLoops& c) {
  Rational len = c.edge_length(p.edge);
  if (p.offset < 0 || p.offset > len)
    throw std::invalid_argument("point offset outside edge: " + edge_id_string(p.edge) +
                                " at " + rational_to_string(p.offset));
  int k = p.edge.k;
  switch (p.edge.kind) {
    case EdgeKind::bridge:
      return p;  // bridge representations are canonical, endpoints included
    case EdgeKind::loop_top:
    case EdgeKind::loop_bottom:
      if (p.offset == 0) return vertex_v(k, c);
      if (p.offset == len) return vertex_w(k, c);
      return p;
  }
  throw std::logic_error("unreachable");
}

bool is_canonical(const GraphPoint& p, const ChainOfLoops& c) {
  return p == canonicalize(p, c);
}

GraphPoint vertex_w(int k, const ChainOfLoops& c) {
  if (k < 0 || k > c.g) throw std::out_of_range("vertex w index");
  return {{EdgeKind::bridge, k + 1}, Rational(0)};
}

GraphPoint vertex_v(int k, const ChainOfLoops& c) {
  if (k < 1 || k > c.g + 1) throw std::out_of_range("vertex v index");
  return {{EdgeKind::bridge, k}, c.bridge(k)};
}

GraphPoint loop_point(int k, const Rational& x, const ChainOfLoops& c) {
  Rational L = c.loop_length(k);
  Rational xx = rational_mod(x, L);
  if (xx == 0) return vertex_v(k, c);
  if (xx == c.bottom(k)) return vertex_w(k, c);
  if (xx < c.bottom(k)) return {{EdgeKind::loop_bottom, k}, xx};
  return {{EdgeKind::loop_top, k}, L - xx};
}

std::optional<Rational> loop_coordinate(int k, const GraphPoint& p, const ChainOfLoops& c) {
  if (p.edge.kind == EdgeKind::loop_bottom && p.edge.k == k) return p.offset;
  if (p.edge.kind == EdgeKind::loop_top && p.edge.k == k)
    return c.loop_length(k) - p.offset;
  if (p == vertex_v(k, c)) return Rational(0);
  if (k <= c.g && p == vertex_w(k, c)) return c.bottom(k);
  return std::nullopt;
}

std::vector<TangentVector> outgoing_tangents(const GraphPoint& p, const ChainOfLoops& c) {
  std::vector<TangentVector> out;
  Rational len = c.edge_length(p.edge);
  if (p.offset > 0 && p.offset < len) {
    out.push_back({p, p.edge, false});
    out.push_back({p, p.edge, true});
    return out;
  }
  // Canonical vertex representations live on bridges.
  if (p.edge.kind != EdgeKind::bridge)
    throw std::invalid_argument("outgoing_tangents expects a canonical point");
  int k = p.edge.k;
  if (p.offset == 0) {
    // w_{k-1}: bridge k rightward, plus loop k-1 edges if k > 1
    out.push_back({p, p.edge, true});
    if (k > 1) {
      out.push_back({p, {EdgeKind::loop_top, k - 1}, false});
      out.push_back({p, {EdgeKind::loop_bottom, k - 1}, false});
    }
  } else {
    // v_k: bridge k leftward, plus loop k edges if k <= g
    out.push_back({p, p.edge, false});
    if (k <= c.g) {
      out.push_back({p, {EdgeKind::loop_top, k}, true});
      out.push_back({p, {EdgeKind::loop_bottom, k}, true});
    }
  }
  return out;
}

}  // namespace tropbn
