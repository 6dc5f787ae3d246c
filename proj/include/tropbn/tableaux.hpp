#pragma once

#include <cstdint>
#include <functional>

#include "tropbn/plfunc.hpp"

namespace tropbn {

// Standard filling of a (g-d+r) x (r+1) rectangle by distinct entries from
// {1..g}, strictly increasing along rows and columns. Stored row-major; the
// 1-based column c collects the entries governing the function index
// i = r+1-c, so column 1 belongs to the top index i = r.
struct Tableau {
  int g = 0, r = 0, d = 0;
  std::vector<std::vector<int>> rows;

  int row_count() const { return (int)rows.size(); }
  int col_count() const { return rows.empty() ? 0 : (int)rows[0].size(); }
  bool contains(int entry) const { return column_of(entry) != 0; }
  int column_of(int entry) const;        // 1-based column, 0 if absent
  std::vector<int> column(int c) const;  // entries of the 1-based column c
  std::vector<int> entries() const;      // sorted
  void validate() const;                 // throws std::invalid_argument
  json to_json() const;
  static Tableau from_json(const json& j);
  bool operator==(const Tableau&) const = default;
};

// Number of standard fillings of the rows x cols rectangle by 1..rows*cols:
// the hook product formula, and an independent shape-lattice DP used to
// cross-check it on small rectangles.
Integer count_standard_rectangles(int rows, int cols);
Integer count_standard_rectangles_dp(int rows, int cols);

// C(n, rows*cols) times the rectangle count. Requires rows*cols <= n.
Integer count_tableaux(int rows, int cols, long n);

// Visits every tableau exactly once, depth first: values 1..n in order, each
// placed into the lowest feasible row before being skipped. `shard` and
// `num_shards` partition the traversal into disjoint pieces at the moment
// the first row completes, so sweeps can run the shards in parallel.
void enumerate_tableaux(int rows, int cols, long n,
                        const std::function<void(const Tableau&)>& visit,
                        int shard = 0, int num_shards = 1);

struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next();
  std::uint64_t next_below(std::uint64_t bound);  // uniform on [0, bound)
};

// Uniformly random tableau: a uniform rows*cols-subset of {1..n} filled by a
// uniform standard filling (corner hook walk). Deterministic in the seed.
Tableau sample_tableau(int rows, int cols, long n, std::uint64_t seed);

// Bridge slope data of the distinguished functions. incoming[k-1][i] is the
// slope of function i arriving at v_k along bridge k (k = 1..g+1);
// outgoing[k][i] is the slope leaving w_k (k = 0..g). For tableau data the
// two matrices coincide entry-wise since the slope is constant per bridge.
struct SlopeVectorPair {
  int g = 0, r = 0, d = 0;
  std::vector<std::vector<long>> incoming;
  std::vector<std::vector<long>> outgoing;
  const std::vector<long>& at_v(int k) const { return incoming.at(k - 1); }
  const std::vector<long>& at_w(int k) const { return outgoing.at(k); }
};

// incoming slope of function i at v_k = i - (g-d+r) + #{entries < k in the
// column of index i}.
SlopeVectorPair slope_table(const Tableau& T);

// Block boundaries of the minimum of the distinguished functions, read off
// the tableau: z is the 6th smallest entry of rows 1-2 and b the 7th;
// z'+2 is the 10th smallest of rows 2-3; b' is the 8th smallest of rows
// 1 and 3. Requires the 3 x 7 shape; guarantees z < b < b' <= z'.
struct BlockBoundaries {
  int z, z_prime, b, b_prime;
};
BlockBoundaries block_boundaries(const Tableau& T);

// Loops whose index is not an entry; all slopes stall across them.
std::vector<int> lingering_loops(const Tableau& T);

// Local multiplicities and endpoint ramification weights of a slope pair.
// Their total is the Brill-Noether number g - (r+1)(g-d+r).
struct MultWeights {
  std::vector<long> loop_mult;    // index k-1 for loop k, k = 1..g
  std::vector<long> bridge_mult;  // index k-1 for bridge k, k = 1..g+1
  long wt_start = 0;              // w_0
  long wt_end = 0;                // v_{g+1}
  long total() const;
};
MultWeights multiplicities_and_weights(const SlopeVectorPair& sv);

// A degree-d break divisor D together with the distinguished functions
// phi_0..phi_r (normalized to 0 at w_0) and their slope table. On the loop
// with entry in column r+1-i the divisor point sits at (s_k[i]+1)m_k going
// counterclockwise; lingering loops get a seeded generic point.
struct VertexAvoidingData {
  Tableau tableau;
  std::shared_ptr<const ChainOfLoops> chain;
  Divisor divisor;
  std::vector<PLFunction> distinguished;
  SlopeVectorPair slopes;
};

VertexAvoidingData vertex_avoiding_divisor(const Tableau& T,
                                           std::shared_ptr<const ChainOfLoops> chain,
                                           std::uint64_t seed);

}  // namespace tropbn
