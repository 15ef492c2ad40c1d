#pragma once
#include <complex>
#include <map>
#include <optional>
#include <string>

#include "halfrib/gaussian.hpp"

namespace halfrib {

// Laurent polynomial in a formal variable v with v^L = q, coefficients in Q(i).
// Terms map exponent -> nonzero coefficient; zero coefficients are never stored,
// so equality is structural. L = 0 marks a v-free constant, compatible with any
// root order.
struct LaurentPoly {
  int L = 0;
  std::map<long, GaussianRational> terms;

  LaurentPoly() = default;
  static LaurentPoly constant(const GaussianRational& c);
  static LaurentPoly monomial(long exp, const GaussianRational& c, int L);

  bool is_zero() const { return terms.empty(); }
  bool is_constant() const { return terms.empty() || (terms.size() == 1 && terms.begin()->first == 0); }
  bool is_monomial() const { return terms.size() == 1; }
  long min_exp() const;  // requires nonzero
  long max_exp() const;
  GaussianRational coeff(long e) const;
  GaussianRational lead_coeff() const { return coeff(max_exp()); }

  void set(long e, const GaussianRational& c);  // inserts/erases keeping the no-zero invariant
  LaurentPoly shifted(long k) const;            // multiply by v^k

  LaurentPoly operator-() const;
  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly scaled(const GaussianRational& c) const;

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  std::complex<double> eval(std::complex<double> v) const;

  // normalize() drops L to 0 on constants
  void normalize();
};

// Root-order compatibility: equal, or one side is a constant (L = 0).
int merge_root_order(int a, int b);

// gcd of two nonzero Laurent polynomials: the monic ordinary-polynomial gcd of
// their v-shifted forms (no v factor, nonzero constant term).
LaurentPoly laurent_gcd(const LaurentPoly& a, const LaurentPoly& b);

// Exact division; throws if the division leaves a remainder.
LaurentPoly laurent_exact_div(const LaurentPoly& a, const LaurentPoly& b);

// Division attempt: the quotient when b divides a exactly, nullopt otherwise.
std::optional<LaurentPoly> laurent_try_div(const LaurentPoly& a, const LaurentPoly& b);

}  // namespace halfrib
