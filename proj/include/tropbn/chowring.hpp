#pragma once

// Exact arithmetic in the graded ring generated by eta, gamma, theta and
// Chern-class symbols c_1, c_2, ..., subject to
//
//   eta^2 = 0,   eta * gamma = 0,   gamma^2 = -2 * eta * theta.
//
// Monomials are kept in normal form (eta and gamma exponents 0 or 1) and
// ordered graded-lexicographically on (eta, gamma, theta, e_1, e_2, ...).
// Degrees: eta, gamma, theta count 1, c_i counts i.
//
// On top of the ring sit the intersection-number evaluators: ordered
// Chern-root monomials against theta powers (the Harris-Tu determinantal
// formula), their elementary-symmetric expansions, and the genus-22 rank-2
// reduction that rewrites c_i in terms of two roots and theta.

#include <array>
#include <map>
#include <vector>

#include "tropbn/rational.hpp"

namespace tropbn {

struct ChowMono {
  int eta = 0;
  int gamma = 0;
  int theta = 0;
  std::vector<int> c;  // c[i] = exponent of c_{i+1}, trailing zeros trimmed

  long degree() const;
  friend bool operator==(const ChowMono&, const ChowMono&) = default;
  bool operator<(const ChowMono& o) const;
};

class ChowExpr {
 public:
  ChowExpr() = default;  // zero

  // coef * eta^e gamma^h theta^t prod c_i^{c.at(i)}; exponents may be raw
  // (the term is normalized on construction).
  static ChowExpr term(const Rational& coef, int e = 0, int h = 0, int t = 0,
                       const std::map<int, int>& c = {});

  const std::map<ChowMono, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // coefficient of a normal-form monomial (0 if absent)
  Rational coefficient(const ChowMono& m) const;
  // sub-expression of the given total degree
  ChowExpr graded_part(long degree) const;

  ChowExpr scaled(const Rational& c) const;
  friend ChowExpr operator+(const ChowExpr&, const ChowExpr&);
  friend ChowExpr operator-(const ChowExpr&, const ChowExpr&);
  friend ChowExpr operator*(const ChowExpr&, const ChowExpr&);
  friend bool operator==(const ChowExpr&, const ChowExpr&) = default;

  json to_json() const;
  static ChowExpr from_json(const json& j);

 private:
  void add_term(const ChowMono& m, const Rational& coef);
  std::map<ChowMono, Rational> terms_;

  friend ChowExpr normalize(const ChowExpr&);
};

// Rewrites eta^2 -> 0, eta*gamma -> 0, gamma^2 -> -2 eta theta to a fixpoint.
// ChowExpr values are already normal, so this is idempotent; it is the entry
// point for raw monomial data.
ChowExpr normalize(const ChowExpr& e);

// Multiplicative inverse of a truncated total Chern class (constant term 1)
// as a series under the ring relations, up to and including top_degree.
// Throws std::invalid_argument if the constant term is not 1.
ChowExpr total_chern_inverse(const ChowExpr& c, int top_degree);

// Chern classes of Sym^2 E for a bundle E of rank r+1 with the given
// c_1, c_2, c_3:
//   c_1' = (r+2) c_1
//   c_2' = r(r+3)/2 c_1^2 + (r+3) c_2
//   c_3' = r(r+4)(r-1)/6 c_1^3 + (r+5) c_3 + (r^2+4r-1) c_1 c_2
struct Sym2Chern {
  ChowExpr c1, c2, c3;
};
Sym2Chern sym2_chern(const ChowExpr& c1, const ChowExpr& c2, const ChowExpr& c3, int r);

// Intersection numbers on the degeneracy locus W^r_d over a genus-g curve,
// rho = g - (r+1)(g-d+r) >= 0.  Monomials in the r+1 ordered Chern roots
// x_1..x_{r+1} of the dual tautological bundle, against the implicit power
// theta^{rho - sum of exponents}, evaluate by the determinantal formula
//
//   g! * prod_{j<k} (a_j - a_k) / prod_j (a_j + r + 1)!
//
// with a_j = g - d + r + i_j - j (j = 1..r+1).  A negative factorial
// argument makes the value 0; the flag records that this convention fired.
class HarrisTu {
 public:
  HarrisTu(int g, int r, int d);

  int g() const { return g_; }
  int r() const { return r_; }
  int d() const { return d_; }
  int rho() const { return rho_; }

  struct RootMonomialValue {
    Rational value;
    bool negative_factorial = false;
  };
  RootMonomialValue root_monomial_info(const std::vector<int>& exps) const;
  Rational root_monomial(const std::vector<int>& exps) const;
  // The formula with the denominator one step lower, prod_j (a_j + r)!;
  // kept for diagnosis only: it contradicts the recorded table values.
  Rational root_monomial_printed(const std::vector<int>& exps) const;

  // theta^t * prod c_i^{cvec[i-1]} where c_i is the i-th elementary
  // symmetric function of the roots; t + sum i*cvec[i-1] must equal rho.
  Rational chern_monomial(int t, const std::vector<int>& cvec) const;

 private:
  int g_, r_, d_, n_, rho_;
  Integer gfact_;
  mutable std::map<std::vector<int>, Rational> root_cache_;
  mutable std::map<std::vector<int>, std::map<std::vector<int>, long long>> sym_cache_;
};

// Chern numbers of the dual tautological bundle on the rank-2 locus W^6_26
// over a genus-22 curve (dimension 8): c_i rewrites into the two Chern
// roots u_1, u_2 of the degree-16 pencil locus and theta via
//   c_1 = theta - (u_1 + u_2)
//   c_{i+2} = u_1 u_2 theta^i/i! - (u_1+u_2) theta^{i+1}/(i+1)! + theta^{i+2}/(i+2)!
// and each (u_1^a u_2^b theta^t) evaluates at (g,r,d) = (22,1,16).
class ChernNumbersG22 {
 public:
  ChernNumbersG22();
  int rho() const { return 8; }
  const HarrisTu& roots() const { return roots_; }
  Rational chern_monomial(int t, const std::vector<int>& cvec) const;

 private:
  HarrisTu roots_;
  // c_1..c_7 as polynomials in (u1-exp, u2-exp, theta-exp)
  std::vector<std::map<std::array<int, 3>, Rational>> rep_;
  mutable std::map<std::vector<int>, std::map<std::array<int, 3>, Rational>> poly_cache_;
};

// Monomial in c_1..c_7 and theta of total degree 8 on the genus-22 locus.
Rational chern_number_g22(int theta_exp, const std::vector<int>& cvec);

// Monomial in c_1..c_{2s+1} and theta of total degree 2s+1 on the rho = 1
// family locus W^{2s}_{2s^2+2s+1} over a genus 2s^2+s curve.
Rational chern_number_general(int s, int theta_exp, const std::vector<int>& cvec);

// Integral over the product of the curve and the locus: only terms with an
// eta and no gamma survive, and their (theta, c) parts evaluate through the
// given evaluator.  Every term must have total degree rho + 1.
Rational integrate(const ChowExpr& p, const HarrisTu& ht);
Rational integrate(const ChowExpr& p, const ChernNumbersG22& ev);

}  // namespace tropbn
