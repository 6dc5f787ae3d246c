#include "tropbn/independence.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tropbn {

namespace {

std::vector<const PLFunction*> pointers(const std::vector<PLFunction>& fs) {
  std::vector<const PLFunction*> ps;
  ps.reserve(fs.size());
  for (const auto& f : fs) ps.push_back(&f);
  return ps;
}

}  // namespace

TropicalCombination::TropicalCombination(std::vector<PLFunction> fs, std::vector<Rational> cs)
    : functions(std::move(fs)),
      coefficients(std::move(cs)),
      value(tropical_combination_value(functions, coefficients)) {}

TropicalCombination::TropicalCombination(std::vector<PLFunction> fs, std::vector<Rational> cs,
                                         PLFunction v)
    : functions(std::move(fs)), coefficients(std::move(cs)), value(std::move(v)) {}

VerifyResult verify_independence(const TropicalCombination& tc) {
  const auto& chain = *tc.functions.front().chain();
  const int n = static_cast<int>(tc.functions.size());
  auto ps = pointers(tc.functions);

  VerifyResult res;
  res.witnesses.assign(n, GraphPoint{});
  std::vector<char> found(n, 0);
  int missing = n;
  for (int e = 0; e < chain.edge_count() && missing > 0; ++e) {
    auto pieces = edge_envelope(chain.edge_at(e), ps, tc.coefficients);
    for (const auto& piece : pieces) {
      if (piece.ids.size() != 1) continue;
      int id = piece.ids.front();
      if (found[id]) continue;
      found[id] = 1;
      --missing;
      res.witnesses[id] = GraphPoint{chain.edge_at(e), (piece.a + piece.b) / 2};
    }
  }
  if (missing == 0) {
    res.independent = true;
  } else {
    res.witnesses.clear();
    for (int i = 0; i < n; ++i)
      if (!found[i]) res.failing.push_back(i);
  }
  return res;
}

bool verify_dependence(const TropicalCombination& tc) {
  const auto& chain = *tc.functions.front().chain();
  auto ps = pointers(tc.functions);
  for (int e = 0; e < chain.edge_count(); ++e) {
    for (const auto& piece : edge_envelope(chain.edge_at(e), ps, tc.coefficients))
      if (piece.ids.size() < 2) return false;
  }
  return true;
}

long ThetaSlopeProfile::s_of(int k) const {
  if (k < 1 || k > g) throw std::invalid_argument("loop index outside 1..g");
  if (k <= z) return 4;
  if (k <= z_prime) return 3;
  return 2;
}

ThetaSlopeProfile theta_profile(const BlockBoundaries& bb, int g) {
  if (!(1 <= bb.z && bb.z < bb.z_prime && bb.z_prime <= g))
    throw std::invalid_argument("block boundaries outside 1 <= z < z' <= g");
  return ThetaSlopeProfile{g, bb.z, bb.z_prime};
}

std::vector<long> bridge_slopes(const PLFunction& psi) {
  const auto& chain = *psi.chain();
  std::vector<long> s;
  s.reserve(chain.g + 1);
  for (int k = 1; k <= chain.g + 1; ++k) {
    const auto& bps = psi.edge_breakpoints(EdgeId{EdgeKind::bridge, k});
    TangentVector t{GraphPoint{EdgeId{EdgeKind::bridge, k}, 0}, EdgeId{EdgeKind::bridge, k}, true};
    long slope = psi.slope_along(t);
    if (bps.size() != 2)
      throw std::invalid_argument("bridge " + std::to_string(k) + " slope is not constant");
    s.push_back(slope);
  }
  return s;
}

Permissibility classify_permissible(const std::vector<long>& slopes,
                                    const ThetaSlopeProfile& profile, int k) {
  const int g = profile.g;
  if (static_cast<int>(slopes.size()) != g + 1)
    throw std::invalid_argument("expected one slope per bridge");
  if (k < 1 || k > g) throw std::invalid_argument("loop index outside 1..g");

  auto permissible_at = [&](int kk) {
    for (int j = 1; j <= kk; ++j)
      if (slopes[j - 1] > profile.s_of(j)) return false;
    if (slopes[kk] < profile.s_of(kk)) return false;
    // A later dip below the profile must be preceded by a strict excess.
    for (int l = kk + 1; l <= g; ++l) {
      long diff = slopes[l - 1] - profile.s_of(l);
      if (diff > 0) break;
      if (diff < 0) return false;
    }
    return true;
  };

  if (!permissible_at(k)) return Permissibility::not_permissible;
  if (slopes[k] > profile.s_of(k)) return Permissibility::departing;
  if (k == 1 || !permissible_at(k - 1)) return Permissibility::new_permissible;
  return Permissibility::permissible;
}

Permissibility classify_permissible(const PLFunction& psi, const ThetaSlopeProfile& profile,
                                    int k) {
  return classify_permissible(bridge_slopes(psi), profile, k);
}

json IndependenceCertificate::to_json() const {
  json coeffs = json::object();
  json wits = json::object();
  for (size_t i = 0; i < labels.size(); ++i) {
    coeffs[labels[i]] = rational_to_string(combination.coefficients[i]);
    wits[labels[i]] = witnesses[i].to_json();
  }
  json j{{"coefficients", std::move(coeffs)}, {"witnesses", std::move(wits)}};
  if (!assignment.empty()) {
    json asg = json::object();
    for (const auto& [label, a] : assignment)
      asg[label] = json{{"kind", a.is_loop ? "loop" : "bridge"}, {"k", a.k}};
    j["assignment"] = std::move(asg);
  }
  return j;
}

namespace {

[[noreturn]] void build_fail(int k, const std::string& what) {
  std::ostringstream os;
  os << "independence construction failed at loop " << k << ": " << what;
  throw std::runtime_error(os.str());
}

struct Builder {
  const VertexAvoidingData& data;
  const ChainOfLoops& chain;
  int g;
  ThetaSlopeProfile prof;
  BlockBoundaries bb;

  std::vector<std::string> labels;            // "ij", lexicographic
  std::vector<std::pair<int, int>> pairs;     // (i, j), i <= j
  std::vector<PLFunction> fns;                // phi_i + phi_j
  std::vector<std::vector<long>> slopes;      // per function, bridge slopes
  std::vector<std::optional<Rational>> coef;  // unset = +infinity
  std::vector<std::optional<FunctionAssignment>> where;

  std::optional<GraphPoint> anchor_point;
  Rational anchor_value;

  explicit Builder(const VertexAvoidingData& d)
      : data(d), chain(*d.chain), g(d.tableau.g), bb(block_boundaries(d.tableau)) {
    prof = theta_profile(bb, g);
    for (int i = 0; i <= 6; ++i) {
      for (int j = i; j <= 6; ++j) {
        pairs.emplace_back(i, j);
        labels.push_back(std::to_string(i) + std::to_string(j));
        fns.push_back(data.distinguished[i] + data.distinguished[j]);
        std::vector<long> s(g + 1);
        for (int k = 1; k <= g + 1; ++k)
          s[k - 1] = data.slopes.at_v(k)[i] + data.slopes.at_v(k)[j];
        slopes.push_back(std::move(s));
      }
    }
    coef.assign(fns.size(), std::nullopt);
    where.assign(fns.size(), std::nullopt);
  }

  int index_of(int i, int j) const {
    // pairs are (0,0)..(0,6),(1,1)..: offset of row i is i*(13-i)/2 + ... use search
    for (size_t t = 0; t < pairs.size(); ++t)
      if (pairs[t] == std::make_pair(i, j)) return static_cast<int>(t);
    throw std::logic_error("pair index");
  }

  Rational value_at(int f, const GraphPoint& p) const { return fns[f].eval(p) + *coef[f]; }

  Rational theta_at(const GraphPoint& p) const {
    std::optional<Rational> best;
    for (size_t f = 0; f < fns.size(); ++f) {
      if (!coef[f]) continue;
      Rational v = value_at(static_cast<int>(f), p);
      if (!best || v < *best) best = v;
    }
    if (!best) throw std::logic_error("no finite coefficients");
    return *best;
  }

  std::vector<int> unassigned_permissible(int k) const {
    std::vector<int> out;
    for (size_t f = 0; f < fns.size(); ++f)
      if (!where[f] && classify_permissible(slopes[f], prof, k) != Permissibility::not_permissible)
        out.push_back(static_cast<int>(f));
    return out;
  }

  // Sets coef[f] so that fns[f] + coef[f] takes value v at p; rejects any
  // downward move of an already finite coefficient.
  void lift_to(int f, const GraphPoint& p, const Rational& v, int k) {
    Rational nc = v - fns[f].eval(p);
    if (coef[f] && nc < *coef[f]) build_fail(k, "coefficient of " + labels[f] + " moved down");
    coef[f] = nc;
  }

  // Lower envelope of all finite functions on one edge; ids refer to fns.
  std::vector<EnvelopePiece> finite_envelope(const EdgeId& e, std::vector<int>& live) const {
    std::vector<const PLFunction*> ps;
    std::vector<Rational> cs;
    live.clear();
    for (size_t f = 0; f < fns.size(); ++f) {
      if (!coef[f]) continue;
      live.push_back(static_cast<int>(f));
      ps.push_back(&fns[f]);
      cs.push_back(*coef[f]);
    }
    return edge_envelope(e, ps, cs);
  }

  void run_loop(int k);
  void finish_block(int k);
  IndependenceCertificate finish();
};

void Builder::run_loop(int k) {
  const bool lingering = !data.tableau.contains(k);
  std::vector<int> perm = unassigned_permissible(k);

  std::vector<int> departing;
  for (int f : perm)
    if (classify_permissible(slopes[f], prof, k) == Permissibility::departing)
      departing.push_back(f);
  if (departing.size() > 1) build_fail(k, "two departing functions");
  if (lingering) {
    if (!departing.empty()) build_fail(k, "departing function on a lingering loop");
    return;  // lingering loops get no assignment and no adjustment
  }

  if (perm.size() < 2) build_fail(k, "fewer than two permissible functions");

  // Functions first permissible after a block transition start unset; anchor
  // them to the target value at the midpoint of the incoming block bridge.
  bool any_finite = std::any_of(perm.begin(), perm.end(), [&](int f) { return bool(coef[f]); });
  if (!any_finite) {
    if (!anchor_point) build_fail(k, "no finite permissible function and no block anchor");
    for (int f : perm) coef[f] = anchor_value - fns[f].eval(*anchor_point);
  }

  // Re-initialize the pool to agree at w_k with its pointwise largest member.
  GraphPoint wk = vertex_w(k, chain);
  std::optional<Rational> M;
  for (int f : perm) {
    if (!coef[f]) continue;
    Rational v = value_at(f, wk);
    if (!M || v > *M) M = v;
  }
  for (int f : perm) lift_to(f, wk, *M, k);

  // The pool must now lie strictly below every other finite function on the
  // loop, so the envelope there mentions pool members only.
  std::vector<EnvelopePiece> pieces[2];
  std::vector<int> live;
  for (int side = 0; side < 2; ++side) {
    EdgeId e{side == 0 ? EdgeKind::loop_bottom : EdgeKind::loop_top, k};
    pieces[side] = finite_envelope(e, live);
    for (auto& piece : pieces[side])
      for (int& id : piece.ids) {
        id = live[id];
        if (!std::binary_search(perm.begin(), perm.end(), id))
          build_fail(k, "function " + labels[id] + " reaches the minimum on the loop");
      }
  }

  if (!departing.empty()) {
    int f = departing.front();
    where[f] = FunctionAssignment{true, k};
    // Carry the rest along: agree with the departing function halfway into
    // the next bridge.
    GraphPoint q{EdgeId{EdgeKind::bridge, k + 1}, chain.bottom(k) / 2};
    Rational base = value_at(f, q);
    for (int other : perm)
      if (other != f) lift_to(other, q, base, k);
    return;
  }

  if (perm.size() > 3) build_fail(k, "more than three functions left agreeing at w_k");

  // Some pool member dips strictly below the others on a segment of the top
  // edge; scanning from w_k towards v_k, the first such segment names the
  // function that takes the loop, nudged up by a third of the bottom length.
  // The top edge ends at w_k, so the scan runs through the pieces backwards.
  int f = -1;
  for (auto it = pieces[1].rbegin(); it != pieces[1].rend(); ++it) {
    if (it->ids.size() == 1) {
      f = it->ids.front();
      break;
    }
  }
  if (f < 0) build_fail(k, "no function is uniquely minimal on the upper half of the loop");
  *coef[f] += chain.bottom(k) / 3;
  where[f] = FunctionAssignment{true, k};
}

void Builder::finish_block(int k) {
  std::vector<int> leftover = unassigned_permissible(k);
  if (leftover.size() != 1)
    build_fail(k, "block end expects one leftover function, found " +
                      std::to_string(leftover.size()));
  int f = leftover.front();
  if (!coef[f]) build_fail(k, "block leftover " + labels[f] + " has no finite coefficient");
  if (slopes[f][k] != prof.s_of(k))
    build_fail(k, "block leftover " + labels[f] + " has outgoing slope " +
                      std::to_string(slopes[f][k]) + ", expected " +
                      std::to_string(prof.s_of(k)));
  where[f] = FunctionAssignment{false, k + 1};
  if (k < g) {
    anchor_point = GraphPoint{EdgeId{EdgeKind::bridge, k + 1}, chain.bridge(k + 1) / 2};
    anchor_value = theta_at(*anchor_point);
  }
}

IndependenceCertificate Builder::finish() {
  // Last bridge: the two all-negative-slope functions agree with the target
  // at the midpoint and the three-quarter point.
  int f01 = index_of(0, 1), f00 = index_of(0, 0);
  GraphPoint mid{EdgeId{EdgeKind::bridge, g + 1}, chain.bridge(g + 1) / 2};
  coef[f01] = theta_at(mid) - fns[f01].eval(mid);
  where[f01] = FunctionAssignment{false, g + 1};
  GraphPoint q34{EdgeId{EdgeKind::bridge, g + 1}, chain.bridge(g + 1) * 3 / 4};
  coef[f00] = theta_at(q34) - fns[f00].eval(q34);
  where[f00] = FunctionAssignment{false, g + 1};

  std::vector<Rational> cs;
  for (size_t f = 0; f < fns.size(); ++f) {
    if (!coef[f] || !where[f])
      build_fail(g, "function " + labels[f] + " was never placed");
    cs.push_back(*coef[f]);
  }

  // One sweep over the edges settles everything at once: each function must
  // achieve the minimum uniquely somewhere, the minimum region of a loop
  // function must not reach past v_{k+1} nor a bridge function's past its own
  // right endpoint (edge positions: bridge k at 2k-1, loop k at 2k), and the
  // envelope pieces chain together into the value of the combination.
  auto ps = pointers(fns);
  std::vector<GraphPoint> witnesses(fns.size());
  std::vector<char> found(fns.size(), 0);
  std::vector<std::vector<Breakpoint>> value_bps(chain.edge_count());
  for (int e = 0; e < chain.edge_count(); ++e) {
    EdgeId edge = chain.edge_at(e);
    int pos = edge.kind == EdgeKind::bridge ? 2 * edge.k - 1 : 2 * edge.k;
    auto& bps = value_bps[e];
    for (const auto& piece : edge_envelope(edge, ps, cs)) {
      if (bps.empty()) bps.push_back({piece.a, piece.va});
      bps.push_back({piece.b, piece.vb});
      if (piece.ids.size() == 1 && !found[piece.ids.front()]) {
        found[piece.ids.front()] = 1;
        witnesses[piece.ids.front()] = GraphPoint{edge, (piece.a + piece.b) / 2};
      }
      for (int id : piece.ids) {
        const auto& a = *where[id];
        int limit = a.is_loop ? 2 * (a.k + 1) - 1 : 2 * a.k - 1;
        if (pos > limit)
          build_fail(a.k, "minimum of " + labels[id] + " extends right of its assignment");
      }
    }
  }
  std::string who;
  for (size_t f = 0; f < fns.size(); ++f) {
    if (found[f]) continue;
    const auto& a = *where[f];
    who += (who.empty() ? "" : ", ") + labels[f] + (a.is_loop ? " (loop " : " (bridge ") +
           std::to_string(a.k) + ")";
  }
  if (!who.empty()) build_fail(g, "self-verification found no witness for " + who);

  PLFunction theta(data.chain, std::move(value_bps));
  TropicalCombination tc(std::move(fns), std::move(cs), std::move(theta));

  IndependenceCertificate cert{std::move(tc), labels, std::move(witnesses), {}};
  for (size_t f = 0; f < labels.size(); ++f) cert.assignment[labels[f]] = *where[f];
  return cert;
}

}  // namespace

IndependenceCertificate build_independence(const VertexAvoidingData& data) {
  const Tableau& T = data.tableau;
  if (T.r != 6 || T.d != T.g + 3)
    throw std::invalid_argument("construction requires r = 6, d = g + 3");
  if (T.g < 21 || T.g > 23)
    throw std::invalid_argument("construction requires 21 <= g <= 23");

  Builder b(data);
  const ChainOfLoops& chain = b.chain;

  // First bridge: slope-6 function at zero, slope-5 agreeing a third of the
  // way in, the two slope-4 functions agreeing at two thirds.
  int f66 = b.index_of(6, 6), f56 = b.index_of(5, 6);
  b.coef[f66] = 0;
  b.where[f66] = FunctionAssignment{false, 1};
  GraphPoint third{EdgeId{EdgeKind::bridge, 1}, chain.bridge(1) / 3};
  b.coef[f56] = b.value_at(f66, third) - b.fns[f56].eval(third);
  b.where[f56] = FunctionAssignment{false, 1};
  GraphPoint two_thirds{EdgeId{EdgeKind::bridge, 1}, chain.bridge(1) * 2 / 3};
  Rational v = b.value_at(f56, two_thirds);
  for (auto [i, j] : {std::pair{4, 6}, std::pair{5, 5}}) {
    int f = b.index_of(i, j);
    b.coef[f] = v - b.fns[f].eval(two_thirds);
  }

  for (int k = 1; k <= b.g; ++k) {
    b.run_loop(k);
    if (k == b.bb.z || k == b.bb.z_prime || k == b.g) b.finish_block(k);
  }
  return b.finish();
}

TropicalCombination best_approximation(const PLFunction& theta,
                                       const std::vector<PLFunction>& fs) {
  if (fs.empty()) throw std::invalid_argument("empty function list");
  std::vector<Rational> cs;
  cs.reserve(fs.size());
  for (const auto& f : fs) {
    PLFunction diff = f - theta;
    std::optional<Rational> low;
    const auto& chain = *theta.chain();
    for (int e = 0; e < chain.edge_count(); ++e) {
      for (const auto& bp : diff.edge_breakpoints(chain.edge_at(e)))
        if (!low || bp.value < *low) low = bp.value;
    }
    cs.push_back(-*low);
  }
  return TropicalCombination(fs, std::move(cs));
}

}  // namespace tropbn
