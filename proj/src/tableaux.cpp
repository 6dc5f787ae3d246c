#include "tropbn/tableaux.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace tropbn {

int Tableau::column_of(int entry) const {
  for (const auto& row : rows)
    for (int c = 0; c < (int)row.size(); ++c)
      if (row[c] == entry) return c + 1;
  return 0;
}

std::vector<int> Tableau::column(int c) const {
  std::vector<int> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row.at(c - 1));
  return out;
}

std::vector<int> Tableau::entries() const {
  std::vector<int> out;
  for (const auto& row : rows) out.insert(out.end(), row.begin(), row.end());
  std::sort(out.begin(), out.end());
  return out;
}

void Tableau::validate() const {
  if (rows.empty() || rows[0].empty()) throw std::invalid_argument("tableau: empty shape");
  size_t cols = rows[0].size();
  for (const auto& row : rows)
    if (row.size() != cols) throw std::invalid_argument("tableau: ragged rows");
  if (r != (int)cols - 1) throw std::invalid_argument("tableau: r must be cols - 1");
  if (d != g + r - (int)rows.size())
    throw std::invalid_argument("tableau: d must equal g + r - rows");
  std::set<int> seen;
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols; ++j) {
      int e = rows[i][j];
      if (e < 1 || e > g) throw std::invalid_argument("tableau: entry out of range");
      if (!seen.insert(e).second) throw std::invalid_argument("tableau: repeated entry");
      if (j > 0 && rows[i][j - 1] >= e) throw std::invalid_argument("tableau: row not increasing");
      if (i > 0 && rows[i - 1][j] >= e)
        throw std::invalid_argument("tableau: column not increasing");
    }
}

json Tableau::to_json() const {
  return json{{"g", g}, {"r", r}, {"d", d}, {"rows", rows}};
}

Tableau Tableau::from_json(const json& j) {
  Tableau t;
  t.g = j.at("g").get<int>();
  t.r = j.at("r").get<int>();
  t.d = j.at("d").get<int>();
  t.rows = j.at("rows").get<std::vector<std::vector<int>>>();
  t.validate();
  return t;
}

Integer count_standard_rectangles(int rows, int cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("rectangle sides must be positive");
  Integer count = factorial(rows * cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      Integer hook = (rows - 1 - i) + (cols - 1 - j) + 1;
      mpz_divexact(count.get_mpz_t(), count.get_mpz_t(), hook.get_mpz_t());
    }
  return count;
}

Integer count_standard_rectangles_dp(int rows, int cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("rectangle sides must be positive");
  // Completions of a partial shape, memoized on the row-length profile.
  std::map<std::vector<int>, Integer> memo;
  std::function<Integer(std::vector<int>&)> f = [&](std::vector<int>& lens) -> Integer {
    bool full = true;
    for (int v : lens)
      if (v != cols) full = false;
    if (full) return 1;
    auto it = memo.find(lens);
    if (it != memo.end()) return it->second;
    Integer total = 0;
    for (int i = 0; i < rows; ++i) {
      if (lens[i] == cols) continue;
      if (i > 0 && lens[i - 1] <= lens[i]) continue;
      ++lens[i];
      total += f(lens);
      --lens[i];
    }
    memo[lens] = total;
    return total;
  };
  std::vector<int> start(rows, 0);
  return f(start);
}

Integer count_tableaux(int rows, int cols, long n) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("rectangle sides must be positive");
  if ((long)rows * cols > n) throw std::invalid_argument("rectangle larger than the entry pool");
  return binomial(n, rows * cols) * count_standard_rectangles(rows, cols);
}

void enumerate_tableaux(int rows, int cols, long n,
                        const std::function<void(const Tableau&)>& visit, int shard,
                        int num_shards) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("rectangle sides must be positive");
  if ((long)rows * cols > n) throw std::invalid_argument("rectangle larger than the entry pool");
  if (num_shards < 1 || shard < 0 || shard >= num_shards)
    throw std::invalid_argument("bad shard");
  const long cells = (long)rows * cols;
  std::vector<std::vector<int>> content(rows);
  std::vector<int> lens(rows, 0);
  long placed = 0;
  long first_row_counter = 0;
  Tableau t;
  t.g = (int)n;
  t.r = cols - 1;
  t.d = (int)(n + cols - 1 - rows);
  std::function<void(long)> rec = [&](long v) {
    if (placed == cells) {
      t.rows = content;
      visit(t);
      return;
    }
    if (n - v + 1 < cells - placed) return;
    for (int i = 0; i < rows; ++i) {
      if (lens[i] == cols) continue;
      if (i > 0 && lens[i - 1] <= lens[i]) continue;
      content[i].push_back((int)v);
      ++lens[i];
      ++placed;
      bool mine = true;
      if (num_shards > 1 && i == 0 && lens[0] == cols)
        mine = (first_row_counter++ % num_shards) == shard;
      if (mine) rec(v + 1);
      content[i].pop_back();
      --lens[i];
      --placed;
    }
    rec(v + 1);
  };
  rec(1);
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("empty range");
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % bound;
}

Tableau sample_tableau(int rows, int cols, long n, std::uint64_t seed) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("rectangle sides must be positive");
  const long cells = (long)rows * cols;
  if (cells > n) throw std::invalid_argument("rectangle larger than the entry pool");
  SplitMix64 rng(seed);
  // Uniform subset of {1..n} by partial shuffle.
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 1);
  for (long i = 0; i < cells; ++i)
    std::swap(pool[i], pool[i + (long)rng.next_below(n - i)]);
  std::vector<int> chosen(pool.begin(), pool.begin() + cells);
  std::sort(chosen.begin(), chosen.end());
  // Uniform standard filling: repeatedly hook-walk to a corner and give it
  // the largest unplaced entry.
  std::vector<int> len(rows, cols);
  std::vector<std::vector<int>> content(rows, std::vector<int>(cols, 0));
  for (long v = cells - 1; v >= 0; --v) {
    long remaining = v + 1;
    long pick = (long)rng.next_below(remaining);
    int i = 0;
    while (pick >= len[i]) pick -= len[i++];
    int j = (int)pick;
    while (true) {
      int arm = len[i] - 1 - j;
      int leg = 0;
      for (int ii = i + 1; ii < rows && len[ii] > j; ++ii) ++leg;
      if (arm + leg == 0) break;
      long t = (long)rng.next_below(arm + leg);
      if (t < arm)
        j += 1 + (int)t;
      else
        i += 1 + (int)(t - arm);
    }
    content[i][j] = chosen[v];
    --len[i];
  }
  Tableau t;
  t.g = (int)n;
  t.r = cols - 1;
  t.d = (int)(n + cols - 1 - rows);
  t.rows = std::move(content);
  t.validate();
  return t;
}

SlopeVectorPair slope_table(const Tableau& T) {
  T.validate();
  const int shape_rows = T.row_count();
  SlopeVectorPair sv;
  sv.g = T.g;
  sv.r = T.r;
  sv.d = T.d;
  sv.incoming.assign(T.g + 1, std::vector<long>(T.r + 1));
  for (int k = 1; k <= T.g + 1; ++k)
    for (int i = 0; i <= T.r; ++i) {
      int c = T.r + 1 - i;
      long below = 0;
      for (int row = 0; row < shape_rows; ++row)
        if (T.rows[row][c - 1] < k) ++below;
      sv.incoming[k - 1][i] = i - shape_rows + below;
    }
  sv.outgoing = sv.incoming;
  return sv;
}

// The left-to-right assignment walks each block consuming one pair per
// non-lingering loop plus one for the closing bridge, so a block must offer
// exactly (loops + 1) pairs and the running pool may never drain early.
// The entry-ranked boundaries below are the anchors; they usually satisfy
// both conditions, but not always, so the final values come from a search
// that starts at the anchors and stays as close to them as possible.
namespace {

struct BoundaryCensus {
  const Tableau& T;
  int shift;
  explicit BoundaryCensus(const Tableau& t) : T(t), shift(2 * (t.g - t.d + t.r)) {}

  long pair_slope(int i, int j, int k) const {
    long s = i + j - shift;
    for (int row = 0; row < 3; ++row) {
      if (T.rows[row][6 - i] < k) ++s;
      if (T.rows[row][6 - j] < k) ++s;
    }
    return s;
  }

  // First loop of [lo, hi] where the pair is permissible against a constant
  // profile slope, or 0.  Pair slopes only grow, so the first hit is the
  // start of the permissible stretch.
  int first_permissible(int i, int j, int lo, int hi, long prof) const {
    for (int k = lo; k <= hi; ++k)
      if (pair_slope(i, j, k) <= prof && prof <= pair_slope(i, j, k + 1)) return k;
    return 0;
  }

  // A block works when each of its non-lingering loops consumes one pair,
  // the pool stays at two or more until the last loop, and exactly one pair
  // is left for the closing bridge.
  bool block_viable(int lo, int hi, long prof) const {
    std::vector<int> news;
    for (int i = 0; i <= 6; ++i)
      for (int j = i; j <= 6; ++j)
        if (int k = first_permissible(i, j, lo, hi, prof)) news.push_back(k);
    std::sort(news.begin(), news.end());
    size_t t = 0;
    int entered = 0;
    for (int k = lo; k <= hi; ++k) {
      while (t < news.size() && news[t] <= k) ++t, ++entered;
      if (!T.contains(k)) continue;
      if (entered < 2) return false;  // pool after prior assignments
      --entered;                      // this loop consumes one pair
    }
    return t == news.size() && entered == 1;
  }

  bool viable(int z, int zp) const {
    return block_viable(1, z, 4) && block_viable(z + 1, zp, 3) &&
           block_viable(zp + 1, T.g, 2);
  }
};

// Candidate order: the anchor itself, then downward, then upward.
std::vector<int> near_first(int anchor, int lo, int hi) {
  std::vector<int> out;
  for (int v = std::min(anchor, hi); v >= lo; --v) out.push_back(v);
  for (int v = anchor + 1; v <= hi; ++v) out.push_back(v);
  return out;
}

}  // namespace

BlockBoundaries block_boundaries(const Tableau& T) {
  T.validate();
  if (T.r != 6 || T.row_count() != 3)
    throw std::invalid_argument("block boundaries need the 3 x 7 shape");
  auto merged = [&](int a, int b) {
    std::vector<int> out(T.rows[a]);
    out.insert(out.end(), T.rows[b].begin(), T.rows[b].end());
    std::sort(out.begin(), out.end());
    return out;
  };
  std::vector<int> r12 = merged(0, 1), r23 = merged(1, 2), r13 = merged(0, 2);
  // Anchors: the 6th smallest entry of the top two rows ends the first
  // block, and the second block ends two non-lingering loops below the 10th
  // smallest entry of the bottom two rows.
  int z0 = r12[5];
  int zp0 = r23[9];
  for (int step = 0; step < 2; ++step) {
    --zp0;
    while (!T.contains(zp0)) --zp0;
  }
  BoundaryCensus census(T);
  for (int z : near_first(z0, 2, T.g - 2)) {
    if (!census.block_viable(1, z, 4)) continue;
    for (int zp : near_first(zp0, z + 1, T.g - 1))
      if (census.viable(z, zp)) return BlockBoundaries{z, zp, r12[6], r13[7]};
  }
  throw std::logic_error("no viable block boundaries");
}

std::vector<int> lingering_loops(const Tableau& T) {
  std::vector<int> out;
  for (int k = 1; k <= T.g; ++k)
    if (!T.contains(k)) out.push_back(k);
  return out;
}

long MultWeights::total() const {
  long t = wt_start + wt_end;
  for (long v : loop_mult) t += v;
  for (long v : bridge_mult) t += v;
  return t;
}

MultWeights multiplicities_and_weights(const SlopeVectorPair& sv) {
  MultWeights mw;
  mw.loop_mult.resize(sv.g);
  mw.bridge_mult.resize(sv.g + 1);
  for (int k = 1; k <= sv.g; ++k) {
    long s = 1;
    for (int i = 0; i <= sv.r; ++i) s -= sv.at_w(k)[i] - sv.at_v(k)[i];
    mw.loop_mult[k - 1] = s;
  }
  for (int k = 1; k <= sv.g + 1; ++k) {
    long s = 0;
    for (int i = 0; i <= sv.r; ++i) s -= sv.at_v(k)[i] - sv.at_w(k - 1)[i];
    mw.bridge_mult[k - 1] = s;
  }
  for (int i = 0; i <= sv.r; ++i) {
    mw.wt_start += (sv.d - sv.g - sv.r + i) - sv.at_w(0)[i];
    mw.wt_end += sv.at_v(sv.g + 1)[i] - i;
  }
  return mw;
}

namespace {

// Restriction of a distinguished function to one loop, in the ccw parameter
// t on [0, L]; bottom edge is [0, m], top edge is [m, L] reversed.
struct LoopSolution {
  std::vector<Breakpoint> bottom;  // offsets 0..m
  std::vector<Breakpoint> top;     // offsets 0..l, measured from v_k
  Rational w_value;
};

// Solves for the loop restriction given the incoming slope alpha, outgoing
// slope beta and the divisor point at ccw coordinate x. Effectivity forces
// the bend budget P = 1 + alpha - beta, to be distributed among v_k, w_k,
// the divisor point, and at most one free peak; the circle closure condition
// then pins the starting slope (and the free peak position). Exactly one
// distribution may admit a solution; zero or several mean the divisor is
// not vertex avoiding.
LoopSolution solve_loop(const ChainOfLoops& c, int k, const Rational& v_value, long alpha,
                        long beta, const Rational& x) {
  const Rational m = c.m[k - 1], l = c.l[k - 1], L = l + m;
  const long P = 1 + alpha - beta;
  auto fail = [&](const std::string& why) {
    throw std::runtime_error("loop " + std::to_string(k) + ": " + why);
  };
  if (x < 0 || x >= L) fail("divisor coordinate out of range");
  if (P < 0) fail("slope gain above one");
  const bool x_interior = (x != 0 && x != m);
  const long Dw = (x == m) ? 1 : 0;
  const long Dv = (x == 0) ? 1 : 0;

  struct Candidate {
    std::vector<Breakpoint> circle;  // t from 0 to L inclusive
  };
  std::vector<Candidate> found;

  // Builds and checks one candidate given the full bend placement.
  auto try_candidate = [&](long sigma0, long dv, long dw, long dx, long dxi,
                           const Rational& xi) {
    std::vector<std::pair<Rational, long>> kinks;  // (position, slope jump)
    if (x_interior && 1 - dx != 0) kinks.emplace_back(x, 1 - dx);
    long jw = Dw - dw - beta;
    if (jw != 0) kinks.emplace_back(m, jw);
    if (dxi > 0) kinks.emplace_back(xi, -dxi);
    std::sort(kinks.begin(), kinks.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Candidate cand;
    long slope = sigma0;
    Rational t = 0, val = v_value;
    cand.circle.push_back({t, val});
    for (const auto& [pos, jump] : kinks) {
      val += slope * (pos - t);
      t = pos;
      cand.circle.push_back({t, val});
      slope += jump;
    }
    val += slope * (L - t);
    cand.circle.push_back({L, val});
    if (val != v_value) fail("closure bookkeeping broke");
    if (slope != sigma0 - alpha + dv - Dv) fail("wrap bookkeeping broke");
    for (const auto& prev : found)
      if (prev.circle == cand.circle) return;
    found.push_back(std::move(cand));
  };

  // All placements of the P divisor units.
  for (long dv = 0; dv <= P; ++dv)
    for (long dw = 0; dw + dv <= P; ++dw)
      for (long dx = 0; dx + dw + dv <= P; ++dx) {
        if (dx > 0 && !x_interior) continue;
        const long dxi = P - dv - dw - dx;
        // Closure: sigma0*L + sum of jump*(L - position) = 0.
        Rational known = Rational(Dw - dw - beta) * (L - m);
        if (x_interior) known += Rational(1 - dx) * (L - x);
        if (dxi == 0) {
          Rational s0 = -known / L;
          if (s0.get_den() == 1)
            try_candidate(s0.get_num().get_si(), dv, dw, dx, dxi, Rational(0));
          continue;
        }
        // Free peak: xi = L - (sigma0*L + known)/dxi must land strictly
        // inside an arc between consecutive fixed points of the circle.
        std::vector<Rational> cuts{Rational(0), m, L};
        if (x_interior) cuts.push_back(x);
        std::sort(cuts.begin(), cuts.end());
        for (size_t a = 0; a + 1 < cuts.size(); ++a) {
          // (L - hi)*dxi < sigma0*L + known < (L - lo)*dxi
          Rational lo = ((L - cuts[a + 1]) * dxi - known) / L;
          Rational hi = ((L - cuts[a]) * dxi - known) / L;
          Integer first, last;
          mpz_fdiv_q(first.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
          first += 1;
          mpz_cdiv_q(last.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
          last -= 1;
          for (Integer s0 = first; s0 <= last; ++s0) {
            Rational xi = L - (s0 * L + known) / dxi;
            if (xi <= cuts[a] || xi >= cuts[a + 1]) continue;
            try_candidate(s0.get_si(), dv, dw, dx, dxi, xi);
          }
        }
      }

  if (found.empty()) fail("no valid loop restriction: divisor is not vertex avoiding");
  if (found.size() > 1)
    fail("ambiguous loop restriction: divisor is not vertex avoiding");

  // Split the circle at w_k into the two edges.
  const auto& circle = found[0].circle;
  LoopSolution sol;
  auto value_at = [&](const Rational& t) -> Rational {
    for (size_t j = 0; j + 1 < circle.size(); ++j)
      if (t >= circle[j].offset && t <= circle[j + 1].offset)
        return circle[j].value + (circle[j + 1].value - circle[j].value) *
                                     (t - circle[j].offset) /
                                     (circle[j + 1].offset - circle[j].offset);
    throw std::logic_error("parameter off the circle");
  };
  sol.w_value = value_at(m);
  sol.bottom.push_back({Rational(0), v_value});
  for (const auto& bp : circle)
    if (bp.offset > 0 && bp.offset < m) sol.bottom.push_back(bp);
  sol.bottom.push_back({m, sol.w_value});
  sol.top.push_back({Rational(0), v_value});
  for (auto it = circle.rbegin(); it != circle.rend(); ++it)
    if (it->offset > m && it->offset < L) sol.top.push_back({L - it->offset, it->value});
  sol.top.push_back({l, sol.w_value});
  return sol;
}

}  // namespace

VertexAvoidingData vertex_avoiding_divisor(const Tableau& T,
                                           std::shared_ptr<const ChainOfLoops> chain,
                                           std::uint64_t seed) {
  T.validate();
  if (!chain || chain->g != T.g) throw std::invalid_argument("chain genus mismatch");
  if (!is_admissible(*chain)) throw std::invalid_argument("chain is not admissible");
  if (T.d < T.g) throw std::invalid_argument("need d >= g for a break divisor");
  SlopeVectorPair sv = slope_table(T);

  // Divisor coordinates, one point per loop.
  std::vector<Rational> x(T.g + 1);
  for (int k = 1; k <= T.g; ++k) {
    const Rational m = chain->m[k - 1];
    const Rational L = chain->l[k - 1] + m;
    int c = T.column_of(k);
    if (c != 0) {
      int i = T.r + 1 - c;
      x[k] = rational_mod(Rational(sv.at_v(k)[i] + 1) * m, L);
    } else {
      // Generic point: seeded start on the grid L*t/(2d+3), t = 1..2d+2,
      // advancing past the forbidden residues j*m mod L.
      SplitMix64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (std::uint64_t)k));
      const long slots = 2L * T.d + 2;
      long t0 = (long)rng.next_below(slots);
      bool placed = false;
      for (long step = 0; step < slots && !placed; ++step) {
        long t = 1 + (t0 + step) % slots;
        Rational cand = L * t / (2 * T.d + 3);
        bool forbidden = false;
        for (long j = 0; j <= T.d && !forbidden; ++j)
          if (rational_mod(cand - j * m, L) == 0) forbidden = true;
        if (!forbidden) {
          x[k] = cand;
          placed = true;
        }
      }
      if (!placed) throw std::runtime_error("no generic point available on loop " +
                                            std::to_string(k));
    }
  }

  VertexAvoidingData data{T, chain, Divisor(chain), {}, sv};
  if (T.d > T.g) data.divisor.add(vertex_w(0, *chain), T.d - T.g);
  for (int k = 1; k <= T.g; ++k) data.divisor.add(loop_point(k, x[k], *chain), 1);

  for (int i = 0; i <= T.r; ++i) {
    std::vector<std::vector<Breakpoint>> edges(chain->edge_count());
    Rational val = 0;
    for (int k = 1; k <= T.g + 1; ++k) {
      Rational next = val + Rational(sv.at_v(k)[i]) * chain->n[k - 1];
      edges[chain->edge_index({EdgeKind::bridge, k})] = {{Rational(0), val},
                                                         {chain->n[k - 1], next}};
      val = next;
      if (k <= T.g) {
        LoopSolution sol =
            solve_loop(*chain, k, val, sv.at_v(k)[i], sv.at_v(k + 1)[i], x[k]);
        edges[chain->edge_index({EdgeKind::loop_bottom, k})] = std::move(sol.bottom);
        edges[chain->edge_index({EdgeKind::loop_top, k})] = std::move(sol.top);
        val = sol.w_value;
      }
    }
    data.distinguished.emplace_back(chain, std::move(edges));
  }
  return data;
}

}  // namespace tropbn
