#pragma once
#include <complex>
#include <string>

#include "halfrib/laurent.hpp"

#include "json.hpp"

namespace halfrib {

// Element of the fraction field of Laurent polynomials in v (v^L = q) over Q(i).
// Canonical form: numerator and denominator coprime, denominator an ordinary
// monic polynomial with nonzero constant term. Equality is structural.
class Scalar {
 public:
  Scalar() : num_(), den_(LaurentPoly::constant(1)) {}
  Scalar(long n) : Scalar(LaurentPoly::constant(GaussianRational(n))) {}  // NOLINT
  explicit Scalar(const GaussianRational& c) : Scalar(LaurentPoly::constant(c)) {}
  explicit Scalar(LaurentPoly p) : num_(std::move(p)), den_(LaurentPoly::constant(1)) { reduce(); }
  Scalar(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }

  // v^k in root order L
  static Scalar v_power(long k, int L) { return Scalar(LaurentPoly::monomial(k, 1, L)); }

  // q^r as the monomial v^(r*L); errors when r*L is not an integer.
  static Scalar q_power(const mpq_class& r, int L);

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  int root_order() const { return merge_root_order(num_.L, den_.L); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_ == den_; }

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  Scalar inverse() const;
  Scalar pow(long k) const;

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  bool operator<(const Scalar& b) const;  // arbitrary total order for map keys

  // Substitute v = sample. Throws PoleError when the denominator vanishes there.
  std::complex<double> eval_numeric(std::complex<double> sample) const;

  // {"L":., "num":[[exp,[re_n,re_d,im_n,im_d]],...], "den":[...]} exponents ascending.
  // ambient_L stamps constants that carry no root order of their own.
  nlohmann::json to_json(int ambient_L = 0) const;
  static Scalar from_json(const nlohmann::json& j);

  // Human-readable Laurent string, q-exponents when every exponent is a
  // multiple of L ("-q - q^-1"), v-exponents otherwise.
  std::string str() const;

 private:
  void reduce();
  LaurentPoly num_, den_;
};

}  // namespace halfrib
