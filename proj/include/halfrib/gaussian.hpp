#pragma once
#include <gmpxx.h>

#include <complex>
#include <string>

namespace halfrib {

// Element a + b*i of the Gaussian rationals. GMP keeps each component
// reduced with a positive denominator, so equality is structural.
struct GaussianRational {
  mpq_class re, im;

  GaussianRational() : re(0), im(0) {}
  GaussianRational(long n) : re(n), im(0) {}  // NOLINT: implicit by design
  GaussianRational(const mpq_class& r) : re(r), im(0) { re.canonicalize(); }
  GaussianRational(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }

  static GaussianRational i() { return {mpq_class(0), mpq_class(1)}; }
  static GaussianRational i_power(long k);

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_one() const { return re == 1 && im == 0; }
  bool is_real() const { return im == 0; }

  GaussianRational conj() const { return {re, -im}; }
  mpq_class norm() const { return re * re + im * im; }

  GaussianRational operator-() const { return {-re, -im}; }
  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

  // "3", "-1/2", "i", "-2i", "1/2+i", "2-3i"
  std::string str() const;
};

}  // namespace halfrib
