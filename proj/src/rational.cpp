#include "tropbn/rational.hpp"

#include <stdexcept>

namespace tropbn {

Rational rational_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  mpq_class q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("malformed rational literal: " + s);
  if (q.get_den() == 0)
    throw std::invalid_argument("zero denominator in rational literal: " + s);
  q.canonicalize();
  return q;
}

std::string rational_to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_from_json(const json& j) {
  if (j.is_string()) return rational_from_string(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw std::invalid_argument("rational JSON value must be a string or integer");
}

Rational rational_pow(const Rational& a, long e) {
  if (e == 0) return Rational(1);
  bool inv = e < 0;
  unsigned long k = inv ? -(unsigned long)e : (unsigned long)e;
  if (inv && a == 0) throw std::invalid_argument("0 to a negative power");
  Rational base = a, acc(1);
  while (k) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  if (inv) acc = 1 / acc;
  return acc;
}

Rational rational_mod(const Rational& q, const Rational& p) {
  if (p <= 0) throw std::invalid_argument("modulus must be positive");
  // floor(q/p)
  Rational t = q / p;
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), t.get_num().get_mpz_t(), t.get_den().get_mpz_t());
  Rational r = q - Rational(fl) * p;
  return r;
}

Rational rational_ratio(const Integer& n, const Integer& d) {
  if (d == 0) throw std::invalid_argument("zero denominator");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Integer factorial(unsigned long n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

}  // namespace tropbn
