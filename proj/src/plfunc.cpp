#include "tropbn/plfunc.hpp"

#include <algorithm>
#include <stdexcept>

namespace tropbn {

namespace {

// Ordering key for canonical points.
std::pair<int, const Rational*> point_key(const GraphPoint& p, const ChainOfLoops& c) {
  return {c.edge_index(p.edge), &p.offset};
}

bool point_less(const GraphPoint& a, const GraphPoint& b, const ChainOfLoops& c) {
  auto ka = point_key(a, c), kb = point_key(b, c);
  if (ka.first != kb.first) return ka.first < kb.first;
  return *ka.second < *kb.second;
}

}  // namespace

void Divisor::add(const GraphPoint& p, long mult) {
  if (!chain_) throw std::logic_error("divisor without a chain");
  if (mult == 0) return;
  GraphPoint q = canonicalize(p, *chain_);
  auto it = std::lower_bound(
      pts_.begin(), pts_.end(), q,
      [&](const auto& entry, const GraphPoint& v) { return point_less(entry.first, v, *chain_); });
  if (it != pts_.end() && it->first == q) {
    it->second += mult;
    if (it->second == 0) pts_.erase(it);
  } else {
    pts_.insert(it, {q, mult});
  }
}

long Divisor::multiplicity(const GraphPoint& p) const {
  if (!chain_) throw std::logic_error("divisor without a chain");
  GraphPoint q = canonicalize(p, *chain_);
  auto it = std::lower_bound(
      pts_.begin(), pts_.end(), q,
      [&](const auto& entry, const GraphPoint& v) { return point_less(entry.first, v, *chain_); });
  if (it != pts_.end() && it->first == q) return it->second;
  return 0;
}

long Divisor::degree() const {
  long d = 0;
  for (const auto& [p, m] : pts_) d += m;
  return d;
}

bool Divisor::is_effective() const {
  for (const auto& [p, m] : pts_)
    if (m < 0) return false;
  return true;
}

Divisor& Divisor::operator+=(const Divisor& other) {
  for (const auto& [p, m] : other.pts_) add(p, m);
  return *this;
}

Divisor Divisor::scaled(long factor) const {
  Divisor r(chain_);
  if (factor == 0) return r;
  r.pts_ = pts_;
  for (auto& [p, m] : r.pts_) m *= factor;
  return r;
}

json Divisor::to_json() const {
  json points = json::array();
  for (const auto& [p, m] : pts_) {
    json e = p.to_json();
    e["mult"] = m;
    points.push_back(e);
  }
  return json{{"points", points}};
}

Divisor Divisor::from_json(const json& j, std::shared_ptr<const ChainOfLoops> chain) {
  Divisor d(std::move(chain));
  for (const auto& e : j.at("points"))
    d.add(GraphPoint::from_json(e), e.at("mult").get<long>());
  return d;
}

PLFunction::PLFunction(std::shared_ptr<const ChainOfLoops> chain,
                       std::vector<std::vector<Breakpoint>> per_edge)
    : chain_(std::move(chain)), edges_(std::move(per_edge)) {
  validate_and_canonicalize();
}

PLFunction PLFunction::constant(std::shared_ptr<const ChainOfLoops> chain, const Rational& v) {
  std::vector<std::vector<Breakpoint>> edges(chain->edge_count());
  for (int i = 0; i < chain->edge_count(); ++i) {
    Rational len = chain->edge_length(chain->edge_at(i));
    edges[i] = {{Rational(0), v}, {len, v}};
  }
  return PLFunction(std::move(chain), std::move(edges));
}

void PLFunction::validate_and_canonicalize() {
  if (!chain_) throw std::invalid_argument("function without a chain");
  if ((int)edges_.size() != chain_->edge_count())
    throw std::invalid_argument("function must assign breakpoints to every edge");
  for (int i = 0; i < chain_->edge_count(); ++i) {
    auto& bps = edges_[i];
    EdgeId e = chain_->edge_at(i);
    Rational len = chain_->edge_length(e);
    if (bps.size() < 2 || bps.front().offset != 0 || bps.back().offset != len)
      throw std::invalid_argument("edge " + edge_id_string(e) +
                                  ": breakpoints must span the whole edge");
    std::vector<Rational> slope(bps.size() - 1);
    for (size_t j = 0; j + 1 < bps.size(); ++j) {
      if (bps[j].offset >= bps[j + 1].offset)
        throw std::invalid_argument("edge " + edge_id_string(e) +
                                    ": breakpoint offsets must strictly increase");
      slope[j] = (bps[j + 1].value - bps[j].value) / (bps[j + 1].offset - bps[j].offset);
      if (slope[j].get_den() != 1)
        throw std::invalid_argument("edge " + edge_id_string(e) + ": non-integer slope " +
                                    rational_to_string(slope[j]));
    }
    // Canonical form: drop interior breakpoints where the slope does not change.
    std::vector<Breakpoint> out;
    out.reserve(bps.size());
    out.push_back(bps.front());
    for (size_t j = 1; j + 1 < bps.size(); ++j)
      if (slope[j - 1] != slope[j]) out.push_back(bps[j]);
    out.push_back(bps.back());
    bps = std::move(out);
  }
  // Continuity at the interior vertices.
  auto value_at = [&](const EdgeId& e, bool at_start) -> const Rational& {
    const auto& bps = edges_[chain_->edge_index(e)];
    return at_start ? bps.front().value : bps.back().value;
  };
  for (int k = 1; k <= chain_->g; ++k) {
    const Rational& vk = value_at({EdgeKind::bridge, k}, false);
    if (value_at({EdgeKind::loop_top, k}, true) != vk ||
        value_at({EdgeKind::loop_bottom, k}, true) != vk)
      throw std::invalid_argument("discontinuity at v_" + std::to_string(k));
    const Rational& wk = value_at({EdgeKind::bridge, k + 1}, true);
    if (value_at({EdgeKind::loop_top, k}, false) != wk ||
        value_at({EdgeKind::loop_bottom, k}, false) != wk)
      throw std::invalid_argument("discontinuity at w_" + std::to_string(k));
  }
}

Rational PLFunction::eval(const GraphPoint& p) const {
  const auto& bps = edges_[chain_->edge_index(p.edge)];
  if (p.offset < 0 || p.offset > bps.back().offset)
    throw std::invalid_argument("eval: offset outside edge");
  auto it = std::upper_bound(bps.begin(), bps.end(), p.offset,
                             [](const Rational& o, const Breakpoint& b) { return o < b.offset; });
  if (it == bps.begin()) return bps.front().value;
  const Breakpoint& hi = (it == bps.end()) ? bps.back() : *it;
  const Breakpoint& lo = *(it - 1);
  if (p.offset == lo.offset) return lo.value;
  return lo.value + (hi.value - lo.value) * (p.offset - lo.offset) / (hi.offset - lo.offset);
}

long PLFunction::slope_along(const TangentVector& t) const {
  // Resolve the base offset along the tangent's edge.
  Rational off;
  if (t.edge == t.base.edge) {
    off = t.base.offset;
  } else {
    // The base must be a vertex incident to t.edge.
    GraphPoint q = canonicalize(t.base, *chain_);
    if (q.edge.kind != EdgeKind::bridge)
      throw std::invalid_argument("tangent base does not lie on its edge");
    int k = q.edge.k;
    bool is_w = (q.offset == 0);  // w_{k-1} if offset 0, v_k if offset n_k
    if (!is_w && q.offset != chain_->bridge(k))
      throw std::invalid_argument("tangent base does not lie on its edge");
    int loop = is_w ? k - 1 : k;
    if (t.edge.k != loop ||
        (t.edge.kind != EdgeKind::loop_top && t.edge.kind != EdgeKind::loop_bottom))
      throw std::invalid_argument("tangent edge not incident to base vertex");
    off = is_w ? chain_->edge_length(t.edge) : Rational(0);
  }
  const auto& bps = edges_[chain_->edge_index(t.edge)];
  auto segment_slope = [&](size_t j) {
    Rational s = (bps[j + 1].value - bps[j].value) / (bps[j + 1].offset - bps[j].offset);
    return (long)s.get_num().get_si();
  };
  if (t.increasing) {
    if (off >= bps.back().offset)
      throw std::invalid_argument("tangent leaves the edge");
    auto it = std::upper_bound(bps.begin(), bps.end(), off,
                               [](const Rational& o, const Breakpoint& b) { return o < b.offset; });
    size_t j = (it - bps.begin()) - 1;
    return segment_slope(j);
  }
  if (off <= 0) throw std::invalid_argument("tangent leaves the edge");
  auto it = std::lower_bound(bps.begin(), bps.end(), off,
                             [](const Breakpoint& b, const Rational& o) { return b.offset < o; });
  size_t j = (it - bps.begin()) - 1;
  return -segment_slope(j);
}

long PLFunction::ord_at(const GraphPoint& point) const {
  GraphPoint p = canonicalize(point, *chain_);
  long total = 0;
  for (const auto& t : outgoing_tangents(p, *chain_)) total -= slope_along(t);
  return total;
}

PLFunction& PLFunction::operator+=(const Rational& c) {
  for (auto& bps : edges_)
    for (auto& b : bps) b.value += c;
  return *this;
}

PLFunction pointwise_binary(const PLFunction& f, const PLFunction& g,
                            const std::function<Rational(const Rational&, const Rational&)>& op) {
  if (f.chain_ != g.chain_ && !(f.chain_ && g.chain_ && f.chain_->to_json() == g.chain_->to_json()))
    throw std::invalid_argument("functions on different chains");
  std::vector<std::vector<Breakpoint>> out(f.edges_.size());
  for (size_t i = 0; i < f.edges_.size(); ++i) {
    const auto& fa = f.edges_[i];
    const auto& ga = g.edges_[i];
    auto& o = out[i];
    size_t a = 0, b = 0;
    // Merge offsets; evaluate both by linear interpolation while walking.
    while (a < fa.size() || b < ga.size()) {
      Rational off;
      if (a == fa.size())
        off = ga[b].offset;
      else if (b == ga.size())
        off = fa[a].offset;
      else
        off = std::min(fa[a].offset, ga[b].offset);
      auto value_at = [&](const std::vector<Breakpoint>& bps, size_t idx,
                          const Rational& x) -> Rational {
        if (idx < bps.size() && bps[idx].offset == x) return bps[idx].value;
        const Breakpoint& lo = bps[idx - 1];
        const Breakpoint& hi = bps[idx];
        return lo.value + (hi.value - lo.value) * (x - lo.offset) / (hi.offset - lo.offset);
      };
      Rational fv = value_at(fa, a, off);
      Rational gv = value_at(ga, b, off);
      o.push_back({off, op(fv, gv)});
      if (a < fa.size() && fa[a].offset == off) ++a;
      if (b < ga.size() && ga[b].offset == off) ++b;
    }
  }
  return PLFunction(f.chain_, std::move(out));
}

PLFunction operator+(const PLFunction& f, const PLFunction& g) {
  return pointwise_binary(f, g, [](const Rational& a, const Rational& b) { return a + b; });
}

PLFunction operator-(const PLFunction& f, const PLFunction& g) {
  return pointwise_binary(f, g, [](const Rational& a, const Rational& b) { return a - b; });
}

json PLFunction::to_json() const {
  json edges = json::object();
  for (int i = 0; i < chain_->edge_count(); ++i) {
    json arr = json::array();
    for (const auto& b : edges_[i])
      arr.push_back(json{{"o", rational_to_string(b.offset)}, {"v", rational_to_string(b.value)}});
    edges[edge_id_string(chain_->edge_at(i))] = arr;
  }
  return json{{"edges", edges}};
}

PLFunction PLFunction::from_json(const json& j, std::shared_ptr<const ChainOfLoops> chain) {
  std::vector<std::vector<Breakpoint>> edges(chain->edge_count());
  for (const auto& [key, arr] : j.at("edges").items()) {
    EdgeId e = edge_id_from_string(key);
    auto& bps = edges[chain->edge_index(e)];
    for (const auto& b : arr)
      bps.push_back({rational_from_json(b.at("o")), rational_from_json(b.at("v"))});
  }
  return PLFunction(std::move(chain), std::move(edges));
}

Divisor principal_divisor(const PLFunction& f) {
  const auto& chain = f.chain();
  Divisor div(chain);
  for (int i = 0; i < chain->edge_count(); ++i) {
    EdgeId e = chain->edge_at(i);
    const auto& bps = f.edge_breakpoints(e);
    for (size_t j = 1; j + 1 < bps.size(); ++j) {
      Rational sl = (bps[j].value - bps[j - 1].value) / (bps[j].offset - bps[j - 1].offset);
      Rational sr = (bps[j + 1].value - bps[j].value) / (bps[j + 1].offset - bps[j].offset);
      Rational d = sl - sr;
      if (d != 0) div.add({e, bps[j].offset}, (long)d.get_num().get_si());
    }
  }
  for (int k = 0; k <= chain->g; ++k) {
    GraphPoint w = vertex_w(k, *chain);
    long o = f.ord_at(w);
    if (o != 0) div.add(w, o);
  }
  for (int k = 1; k <= chain->g + 1; ++k) {
    GraphPoint v = vertex_v(k, *chain);
    long o = f.ord_at(v);
    if (o != 0) div.add(v, o);
  }
  return div;
}

bool is_section(const PLFunction& f, const Divisor& D) {
  Divisor total = principal_divisor(f);
  total += D;
  return total.is_effective();
}

std::vector<EnvelopePiece> edge_envelope(const EdgeId& edge,
                                         const std::vector<const PLFunction*>& fs,
                                         const std::vector<Rational>& cs) {
  if (fs.empty()) throw std::invalid_argument("envelope of an empty family");
  if (fs.size() != cs.size()) throw std::invalid_argument("functions/coefficients mismatch");
  const auto& chain = *fs[0]->chain();
  int ei = chain.edge_index(edge);
  const int k = (int)fs.size();

  // Prune functions that stay strictly above the pointwise upper bound
  // min_i max(f_i + c_i): they can never touch the lower envelope here.
  std::vector<int> alive;
  {
    Rational ub;
    bool have_ub = false;
    std::vector<Rational> fmin(k), fmax(k);
    for (int i = 0; i < k; ++i) {
      const auto& bps = fs[i]->edge_breakpoints(edge);
      Rational mn = bps[0].value, mx = bps[0].value;
      for (const auto& b : bps) {
        if (b.value < mn) mn = b.value;
        if (b.value > mx) mx = b.value;
      }
      fmin[i] = mn + cs[i];
      fmax[i] = mx + cs[i];
      if (!have_ub || fmax[i] < ub) {
        ub = fmax[i];
        have_ub = true;
      }
    }
    for (int i = 0; i < k; ++i)
      if (fmin[i] <= ub) alive.push_back(i);
  }
  const int ka = (int)alive.size();

  // Merged breakpoint offsets of the surviving functions.
  std::vector<Rational> offs;
  for (int i : alive)
    for (const auto& b : fs[i]->edge_breakpoints(edge)) offs.push_back(b.offset);
  std::sort(offs.begin(), offs.end());
  offs.erase(std::unique(offs.begin(), offs.end()), offs.end());
  const int no = (int)offs.size();

  // Values of each surviving function at every merged offset.
  std::vector<std::vector<Rational>> val(ka, std::vector<Rational>(no));
  for (int a = 0; a < ka; ++a) {
    const auto& bps = fs[alive[a]]->edge_breakpoints(edge);
    size_t seg = 0;
    for (int j = 0; j < no; ++j) {
      while (seg + 2 < bps.size() && bps[seg + 1].offset <= offs[j]) ++seg;
      const Breakpoint& lo = bps[seg];
      const Breakpoint& hi = bps[seg + 1];
      if (offs[j] == lo.offset)
        val[a][j] = lo.value + cs[alive[a]];
      else if (offs[j] == hi.offset)
        val[a][j] = hi.value + cs[alive[a]];
      else
        val[a][j] = lo.value + cs[alive[a]] +
                    (hi.value - lo.value) * (offs[j] - lo.offset) / (hi.offset - lo.offset);
    }
  }

  std::vector<EnvelopePiece> pieces;
  auto emit = [&](const Rational& a, const Rational& b, const Rational& va, const Rational& vb,
                  std::vector<int> ids) {
    std::sort(ids.begin(), ids.end());
    if (!pieces.empty() && pieces.back().ids == ids) {
      // Merge with the previous piece when the envelope continues linearly
      // with the same achieving set.
      Rational sl = (pieces.back().vb - pieces.back().va) / (pieces.back().b - pieces.back().a);
      Rational sr = (vb - va) / (b - a);
      if (sl == sr && pieces.back().vb == va) {
        pieces.back().b = b;
        pieces.back().vb = vb;
        return;
      }
    }
    pieces.push_back({a, b, va, vb, std::move(ids)});
  };

  for (int j = 0; j + 1 < no; ++j) {
    const Rational& a = offs[j];
    const Rational& b = offs[j + 1];
    Rational seglen = b - a;
    // Slopes on [a, b] are compared through the value deltas; the shared
    // positive segment length drops out, and the division only happens at an
    // actual crossing.
    std::vector<Rational> vd(ka);
    for (int i = 0; i < ka; ++i) vd[i] = val[i][j + 1] - val[i][j];
    // Walk the lower envelope from a to b.
    Rational t = a;
    std::vector<Rational> vt(ka);
    for (int i = 0; i < ka; ++i) vt[i] = val[i][j];
    int active = 0;
    for (int i = 1; i < ka; ++i)
      if (vt[i] < vt[active] || (vt[i] == vt[active] && vd[i] < vd[active])) active = i;
    while (true) {
      // Earliest point in (t, b) where some function dips below `active`.
      bool found = false;
      Rational best;
      for (int i = 0; i < ka; ++i) {
        if (i == active || vd[i] >= vd[active]) continue;
        if (vt[i] <= vt[active]) continue;  // ties handled by slope choice above
        Rational tau = t + (vt[i] - vt[active]) * seglen / (vd[active] - vd[i]);
        if (tau < b && (!found || tau < best)) {
          best = tau;
          found = true;
        }
      }
      if (!found) {
        std::vector<int> ids;
        for (int i = 0; i < ka; ++i)
          if (vt[i] == vt[active] && vd[i] == vd[active]) ids.push_back(alive[i]);
        Rational v_end = t == a ? val[active][j + 1] : vt[active] + vd[active] * (b - t) / seglen;
        emit(t, b, vt[active], v_end, std::move(ids));
        break;
      }
      const Rational& end = best;
      Rational frac = (end - t) / seglen;
      Rational v_end_active = vt[active] + vd[active] * frac;
      // Everything that coincides with the envelope on all of [t, end].
      std::vector<int> ids;
      for (int i = 0; i < ka; ++i) {
        if (vt[i] == vt[active] && vd[i] == vd[active]) ids.push_back(alive[i]);
      }
      emit(t, end, vt[active], v_end_active, std::move(ids));
      for (int i = 0; i < ka; ++i) vt[i] += vd[i] * frac;
      t = end;
      for (int i = 0; i < ka; ++i)
        if (vt[i] < vt[active] || (vt[i] == vt[active] && vd[i] < vd[active])) active = i;
    }
  }
  return pieces;
}

PLFunction tropical_combination_value(const std::vector<const PLFunction*>& fs,
                                      const std::vector<Rational>& cs) {
  if (fs.empty()) throw std::invalid_argument("tropical combination of an empty family");
  auto chain = fs[0]->chain();
  for (const auto* f : fs)
    if (f->chain() != chain) throw std::invalid_argument("functions on different chains");
  std::vector<std::vector<Breakpoint>> edges(chain->edge_count());
  for (int i = 0; i < chain->edge_count(); ++i) {
    EdgeId e = chain->edge_at(i);
    auto pieces = edge_envelope(e, fs, cs);
    auto& bps = edges[i];
    bps.push_back({pieces.front().a, pieces.front().va});
    for (const auto& p : pieces) bps.push_back({p.b, p.vb});
  }
  return PLFunction(chain, std::move(edges));
}

PLFunction tropical_combination_value(const std::vector<PLFunction>& fs,
                                      const std::vector<Rational>& cs) {
  std::vector<const PLFunction*> ptrs;
  ptrs.reserve(fs.size());
  for (const auto& f : fs) ptrs.push_back(&f);
  return tropical_combination_value(ptrs, cs);
}

std::vector<Rational> break_divisor_coordinates(const Divisor& D, long d) {
  const auto& chain = D.chain();
  if (!chain) throw std::invalid_argument("divisor without a chain");
  int g = chain->g;
  if (D.degree() != d) throw std::invalid_argument("break divisor must have degree d");
  std::vector<std::optional<Rational>> x(g);
  long w0_mult = 0;
  for (const auto& [p, m] : D.points()) {
    if (m < 0) throw std::invalid_argument("break divisor must be effective");
    if (p == vertex_w(0, *chain)) {
      w0_mult = m;
      continue;
    }
    // Attribute the point to a loop; bridge-interior points are not allowed.
    int k;
    if (p.edge.kind == EdgeKind::bridge) {
      if (p.offset == 0)
        k = p.edge.k - 1;  // w_{k}
      else if (p.offset == chain->bridge(p.edge.k))
        k = p.edge.k;  // v_k
      else
        throw std::invalid_argument("break divisor point in a bridge interior");
      if (k < 1 || k > g)
        throw std::invalid_argument("break divisor point at a chain endpoint");
    } else {
      k = p.edge.k;
    }
    if (m != 1) throw std::invalid_argument("loop point of multiplicity != 1");
    if (x[k - 1]) throw std::invalid_argument("two points on loop " + std::to_string(k));
    x[k - 1] = *loop_coordinate(k, p, *chain);
  }
  if (w0_mult != d - g)
    throw std::invalid_argument("w_0 multiplicity must be d - g");
  std::vector<Rational> out;
  out.reserve(g);
  for (int k = 1; k <= g; ++k) {
    if (!x[k - 1]) throw std::invalid_argument("no point on loop " + std::to_string(k));
    out.push_back(*x[k - 1]);
  }
  return out;
}

}  // namespace tropbn
