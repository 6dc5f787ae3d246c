#pragma once

#include <map>
#include <optional>

#include "tropbn/tableaux.hpp"

namespace tropbn {

// theta = min over i of (functions[i] + coefficients[i]), cached exactly.
struct TropicalCombination {
  std::vector<PLFunction> functions;
  std::vector<Rational> coefficients;
  PLFunction value;
  TropicalCombination(std::vector<PLFunction> fs, std::vector<Rational> cs);
  // Caller-supplied minimum; `v` must equal the pointwise minimum exactly.
  TropicalCombination(std::vector<PLFunction> fs, std::vector<Rational> cs, PLFunction v);
};

// Outcome of the independence test: either every function achieves the
// minimum uniquely somewhere (with an interior witness point per index), or
// the set of indices that never do.
struct VerifyResult {
  bool independent = false;
  std::vector<GraphPoint> witnesses;
  std::vector<int> failing;
};

VerifyResult verify_independence(const TropicalCombination& tc);

// True iff the minimum is achieved at least twice at every point, checked
// segment-wise with exact endpoint comparisons.
bool verify_dependence(const TropicalCombination& tc);

// Slope profile of the target combination: 4 on loops up to z, 3 up to
// z_prime, 2 after.
struct ThetaSlopeProfile {
  int g = 0;
  int z = 0, z_prime = 0;
  long s_of(int k) const;
};

ThetaSlopeProfile theta_profile(const BlockBoundaries& bb, int g);

enum class Permissibility { not_permissible, permissible, new_permissible, departing };

// Constant slope of psi along each bridge, index k-1 for bridge k.
// Throws if any bridge slope is non-constant.
std::vector<long> bridge_slopes(const PLFunction& psi);

// Classification on loop k. Permissible means: no bridge slope up to k
// exceeds the profile, the outgoing slope at k is at least the profile
// there, and any later dip below the profile is preceded by an excess.
// "New" marks the first loop of permissibility; "departing" an outgoing
// slope strictly above the profile (takes precedence over "new").
Permissibility classify_permissible(const PLFunction& psi, const ThetaSlopeProfile& profile,
                                    int k);
Permissibility classify_permissible(const std::vector<long>& slopes,
                                    const ThetaSlopeProfile& profile, int k);

struct FunctionAssignment {
  bool is_loop = false;
  int k = 0;
  bool operator==(const FunctionAssignment&) const = default;
};

struct IndependenceCertificate {
  TropicalCombination combination;
  std::vector<std::string> labels;     // "ij" for built certificates
  std::vector<GraphPoint> witnesses;   // per index
  std::map<std::string, FunctionAssignment> assignment;  // built certificates only
  json to_json() const;
};

// Runs the full constructive algorithm on vertex-avoiding data with r = 6,
// d = g+3 and at most two lingering loops: assigns each of the 28 pairwise
// sums phi_i + phi_j to a loop or bridge, producing coefficients whose
// minimum certifies independence. The result is self-verified; internal
// counting violations raise diagnostics carrying the loop index.
IndependenceCertificate build_independence(const VertexAvoidingData& data);

// Coefficients -min(f - theta) per function: the least combination that
// dominates theta, touching it once per function.
TropicalCombination best_approximation(const PLFunction& theta,
                                       const std::vector<PLFunction>& fs);

}  // namespace tropbn
