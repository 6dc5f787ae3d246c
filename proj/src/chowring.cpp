#include "tropbn/chowring.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace tropbn {

long ChowMono::degree() const {
  long d = eta + gamma + theta;
  for (size_t i = 0; i < c.size(); ++i) d += (long)(i + 1) * c[i];
  return d;
}

bool ChowMono::operator<(const ChowMono& o) const {
  long da = degree(), db = o.degree();
  if (da != db) return da < db;
  if (eta != o.eta) return eta < o.eta;
  if (gamma != o.gamma) return gamma < o.gamma;
  if (theta != o.theta) return theta < o.theta;
  size_t n = std::max(c.size(), o.c.size());
  for (size_t i = 0; i < n; ++i) {
    int a = i < c.size() ? c[i] : 0;
    int b = i < o.c.size() ? o.c[i] : 0;
    if (a != b) return a < b;
  }
  return false;
}

namespace {

void trim(std::vector<int>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

// Rewrites raw exponents to normal form and returns the induced coefficient
// factor (0 when the monomial dies).
Rational normal_form(ChowMono& m) {
  if (m.eta < 0 || m.gamma < 0 || m.theta < 0)
    throw std::invalid_argument("negative exponent in monomial");
  for (int e : m.c)
    if (e < 0) throw std::invalid_argument("negative exponent in monomial");
  trim(m.c);
  if (m.eta >= 2) return 0;
  if (m.gamma >= 3) return 0;  // gamma^3 = -2 eta gamma theta = 0
  Rational f = 1;
  if (m.gamma == 2) {
    if (m.eta >= 1) return 0;  // eta gamma^2 = -2 eta^2 theta = 0
    m.eta = 1;
    m.gamma = 0;
    m.theta += 1;
    f = -2;
  }
  if (m.eta == 1 && m.gamma == 1) return 0;
  return f;
}

}  // namespace

void ChowExpr::add_term(const ChowMono& m, const Rational& coef) {
  if (coef == 0) return;
  auto [it, fresh] = terms_.try_emplace(m, coef);
  if (!fresh) {
    it->second += coef;
    if (it->second == 0) terms_.erase(it);
  }
}

ChowExpr ChowExpr::term(const Rational& coef, int e, int h, int t, const std::map<int, int>& c) {
  ChowMono m{e, h, t, {}};
  for (const auto& [i, mult] : c) {
    if (i < 1) throw std::invalid_argument("Chern symbol index must be >= 1");
    if ((int)m.c.size() < i) m.c.resize(i, 0);
    m.c[i - 1] += mult;
  }
  Rational f = normal_form(m);
  ChowExpr out;
  out.add_term(m, coef * f);
  return out;
}

Rational ChowExpr::coefficient(const ChowMono& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

ChowExpr ChowExpr::graded_part(long degree) const {
  ChowExpr out;
  for (const auto& [m, v] : terms_)
    if (m.degree() == degree) out.terms_.emplace(m, v);
  return out;
}

ChowExpr ChowExpr::scaled(const Rational& c) const {
  ChowExpr out;
  if (c == 0) return out;
  for (const auto& [m, v] : terms_) out.terms_.emplace(m, v * c);
  return out;
}

ChowExpr operator+(const ChowExpr& a, const ChowExpr& b) {
  ChowExpr out = a;
  for (const auto& [m, v] : b.terms_) out.add_term(m, v);
  return out;
}

ChowExpr operator-(const ChowExpr& a, const ChowExpr& b) {
  ChowExpr out = a;
  for (const auto& [m, v] : b.terms_) out.add_term(m, -v);
  return out;
}

ChowExpr operator*(const ChowExpr& a, const ChowExpr& b) {
  ChowExpr out;
  for (const auto& [ma, va] : a.terms_) {
    for (const auto& [mb, vb] : b.terms_) {
      ChowMono m{ma.eta + mb.eta, ma.gamma + mb.gamma, ma.theta + mb.theta, ma.c};
      if (m.c.size() < mb.c.size()) m.c.resize(mb.c.size(), 0);
      for (size_t i = 0; i < mb.c.size(); ++i) m.c[i] += mb.c[i];
      Rational f = normal_form(m);
      if (f != 0) out.add_term(m, va * vb * f);
    }
  }
  return out;
}

ChowExpr normalize(const ChowExpr& e) {
  ChowExpr out;
  for (const auto& [m0, v] : e.terms_) {
    ChowMono m = m0;
    Rational f = normal_form(m);
    if (f != 0) out.add_term(m, v * f);
  }
  return out;
}

json ChowExpr::to_json() const {
  json terms = json::array();
  for (const auto& [m, v] : terms_) {
    json c = json::object();
    for (size_t i = 0; i < m.c.size(); ++i)
      if (m.c[i]) c[std::to_string(i + 1)] = m.c[i];
    terms.push_back({{"eta", m.eta},
                     {"gamma", m.gamma},
                     {"theta", m.theta},
                     {"c", c},
                     {"coeff", rational_to_string(v)}});
  }
  return json{{"terms", terms}};
}

ChowExpr ChowExpr::from_json(const json& j) {
  ChowExpr out;
  for (const auto& t : j.at("terms")) {
    std::map<int, int> c;
    for (const auto& [k, v] : t.at("c").items()) c[std::stoi(k)] = v.get<int>();
    out = out + term(rational_from_json(t.at("coeff")), t.at("eta").get<int>(),
                     t.at("gamma").get<int>(), t.at("theta").get<int>(), c);
  }
  return out;
}

ChowExpr total_chern_inverse(const ChowExpr& c, int top_degree) {
  if (top_degree < 0) throw std::invalid_argument("negative truncation degree");
  ChowExpr one = ChowExpr::term(1);
  if (c.graded_part(0) != one)
    throw std::invalid_argument("total Chern class must have constant term 1");
  std::vector<ChowExpr> inv(top_degree + 1);
  inv[0] = one;
  ChowExpr out = one;
  for (int k = 1; k <= top_degree; ++k) {
    ChowExpr acc;
    for (int j = 1; j <= k; ++j) acc = acc + c.graded_part(j) * inv[k - j];
    inv[k] = acc.scaled(-1);
    out = out + inv[k];
  }
  return out;
}

Sym2Chern sym2_chern(const ChowExpr& c1, const ChowExpr& c2, const ChowExpr& c3, int r) {
  if (r < 0) throw std::invalid_argument("negative rank parameter");
  Sym2Chern out;
  out.c1 = c1.scaled(r + 2);
  out.c2 = (c1 * c1).scaled(rational_ratio(r * (r + 3), 2)) + c2.scaled(r + 3);
  out.c3 = (c1 * c1 * c1).scaled(rational_ratio(r * (r + 4) * (r - 1), 6)) + c3.scaled(r + 5) +
           (c1 * c2).scaled(r * r + 4 * r - 1);
  return out;
}

HarrisTu::HarrisTu(int g, int r, int d)
    : g_(g), r_(r), d_(d), n_(r + 1), rho_(g - (r + 1) * (g - d + r)) {
  if (g < 0 || r < 0) throw std::invalid_argument("need g >= 0 and r >= 0");
  gfact_ = factorial(g);
}

HarrisTu::RootMonomialValue HarrisTu::root_monomial_info(const std::vector<int>& exps) const {
  if ((int)exps.size() > n_) throw std::invalid_argument("more exponents than roots");
  std::vector<int> e(exps);
  e.resize(n_, 0);
  long total = 0;
  for (int x : e) {
    if (x < 0) throw std::invalid_argument("negative root exponent");
    total += x;
  }
  if (total > rho_) throw std::invalid_argument("root exponents exceed the locus dimension");

  std::vector<long> a(n_);
  for (int j = 0; j < n_; ++j) a[j] = g_ - d_ + r_ + e[j] - (j + 1);
  for (long aj : a)
    if (aj + n_ < 0) return {Rational(0), true};

  auto it = root_cache_.find(e);
  if (it != root_cache_.end()) return {it->second, false};

  Integer num = 1;
  for (int j = 0; j < n_; ++j)
    for (int k = j + 1; k < n_; ++k) num *= Integer(a[j] - a[k]);
  Integer den = 1;
  for (long aj : a) den *= factorial(aj + n_);
  Integer nn = gfact_ * num;
  Rational v(nn, den);
  v.canonicalize();
  root_cache_.emplace(std::move(e), v);
  return {v, false};
}

Rational HarrisTu::root_monomial(const std::vector<int>& exps) const {
  return root_monomial_info(exps).value;
}

Rational HarrisTu::root_monomial_printed(const std::vector<int>& exps) const {
  if ((int)exps.size() > n_) throw std::invalid_argument("more exponents than roots");
  std::vector<int> e(exps);
  e.resize(n_, 0);
  std::vector<long> a(n_);
  for (int j = 0; j < n_; ++j) a[j] = g_ - d_ + 2 * r_ + e[j] - (j + 1);
  for (long aj : a)
    if (aj < 0) return 0;
  Integer num = 1;
  for (int j = 0; j < n_; ++j)
    for (int k = j + 1; k < n_; ++k) num *= Integer(e[j] - e[k] + (k - j));
  Integer den = 1;
  for (long aj : a) den *= factorial(aj);
  Integer nn = gfact_ * num;
  Rational v(nn, den);
  v.canonicalize();
  return v;
}

Rational HarrisTu::chern_monomial(int t, const std::vector<int>& cvec) const {
  long deg = t;
  for (size_t i = 0; i < cvec.size(); ++i) {
    if (cvec[i] < 0) throw std::invalid_argument("negative Chern exponent");
    deg += (long)(i + 1) * cvec[i];
  }
  if (t < 0 || deg != rho_)
    throw std::invalid_argument("Chern monomial degree " + std::to_string(deg) +
                                " does not match locus dimension " + std::to_string(rho_));

  std::vector<int> key(cvec);
  trim(key);
  auto it = sym_cache_.find(key);
  if (it == sym_cache_.end()) {
    // expand prod_i e_i(x_1..x_n)^{cvec[i-1]} into root compositions
    std::map<std::vector<int>, long long> acc{{std::vector<int>(n_, 0), 1}};
    for (size_t idx = 0; idx < key.size(); ++idx) {
      int i = (int)idx + 1;
      for (int rep = 0; rep < key[idx]; ++rep) {
        std::map<std::vector<int>, long long> next;
        if (i <= n_) {
          std::vector<int> sel(i);
          for (int j = 0; j < i; ++j) sel[j] = j;
          while (true) {
            for (const auto& [ex, cnt] : acc) {
              std::vector<int> ex2(ex);
              for (int p : sel) ++ex2[p];
              next[std::move(ex2)] += cnt;
            }
            // next i-subset of {0..n-1} in lexicographic order
            int pos = i - 1;
            while (pos >= 0 && sel[pos] == n_ - i + pos) --pos;
            if (pos < 0) break;
            ++sel[pos];
            for (int q = pos + 1; q < i; ++q) sel[q] = sel[q - 1] + 1;
          }
        }
        acc = std::move(next);  // i > n: e_i = 0, the product vanishes
      }
    }
    it = sym_cache_.emplace(key, std::move(acc)).first;
  }
  Rational total = 0;
  for (const auto& [ex, cnt] : it->second) total += Rational((long)cnt) * root_monomial(ex);
  return total;
}

ChernNumbersG22::ChernNumbersG22() : roots_(22, 1, 16) {
  rep_.resize(7);
  rep_[0][{0, 0, 1}] = 1;
  rep_[0][{1, 0, 0}] = -1;
  rep_[0][{0, 1, 0}] = -1;
  for (int i = 0; i <= 5; ++i) {
    auto& m = rep_[i + 1];
    m[{1, 1, i}] = Rational(1, Integer(factorial(i)));
    m[{1, 0, i + 1}] = -Rational(1, Integer(factorial(i + 1)));
    m[{0, 1, i + 1}] = -Rational(1, Integer(factorial(i + 1)));
    m[{0, 0, i + 2}] = Rational(1, Integer(factorial(i + 2)));
  }
}

Rational ChernNumbersG22::chern_monomial(int t, const std::vector<int>& cvec) const {
  long deg = t;
  for (size_t i = 0; i < cvec.size(); ++i) {
    if (cvec[i] < 0) throw std::invalid_argument("negative Chern exponent");
    deg += (long)(i + 1) * cvec[i];
  }
  if ((int)cvec.size() > 7 && std::any_of(cvec.begin() + 7, cvec.end(), [](int x) { return x; }))
    throw std::invalid_argument("no Chern symbols beyond c_7 on this locus");
  if (t < 0 || deg != rho())
    throw std::invalid_argument("Chern monomial degree " + std::to_string(deg) +
                                " does not match locus dimension 8");

  std::vector<int> key(cvec);
  trim(key);
  auto it = poly_cache_.find(key);
  if (it == poly_cache_.end()) {
    std::map<std::array<int, 3>, Rational> poly{{{0, 0, 0}, Rational(1)}};
    for (size_t idx = 0; idx < key.size(); ++idx)
      for (int rep = 0; rep < key[idx]; ++rep) {
        std::map<std::array<int, 3>, Rational> next;
        for (const auto& [k1, v1] : poly)
          for (const auto& [k2, v2] : rep_[idx]) {
            std::array<int, 3> k{k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2]};
            auto [pos, fresh] = next.try_emplace(k, v1 * v2);
            if (!fresh) pos->second += v1 * v2;
          }
        poly = std::move(next);
      }
    it = poly_cache_.emplace(key, std::move(poly)).first;
  }
  Rational total = 0;
  for (const auto& [k, v] : it->second) {
    if (v == 0) continue;
    total += v * roots_.root_monomial({k[0], k[1]});
  }
  return total;
}

Rational chern_number_g22(int theta_exp, const std::vector<int>& cvec) {
  static const ChernNumbersG22 ev;
  return ev.chern_monomial(theta_exp, cvec);
}

Rational chern_number_general(int s, int theta_exp, const std::vector<int>& cvec) {
  if (s < 1) throw std::invalid_argument("need s >= 1");
  HarrisTu ht(2 * s * s + s, 2 * s, 2 * s * s + 2 * s + 1);
  return ht.chern_monomial(theta_exp, cvec);
}

namespace {

template <class Eval>
Rational integrate_impl(const ChowExpr& p, const Eval& ev, int rho) {
  Rational total = 0;
  for (const auto& [m, coef] : p.terms()) {
    if (m.degree() != rho + 1)
      throw std::invalid_argument("integrand term of degree " + std::to_string(m.degree()) +
                                  ", expected " + std::to_string(rho + 1));
    if (m.eta == 1 && m.gamma == 0) total += coef * ev.chern_monomial(m.theta, m.c);
  }
  return total;
}

}  // namespace

Rational integrate(const ChowExpr& p, const HarrisTu& ht) {
  return integrate_impl(p, ht, ht.rho());
}

Rational integrate(const ChowExpr& p, const ChernNumbersG22& ev) {
  return integrate_impl(p, ev, ev.rho());
}

}  // namespace tropbn
