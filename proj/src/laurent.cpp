#include "halfrib/laurent.hpp"

#include <vector>

#include "halfrib/errors.hpp"

namespace halfrib {

int merge_root_order(int a, int b) {
  if (a == b) return a;
  if (a == 0) return b;
  if (b == 0) return a;
  throw Error("mixed root orders: L=" + std::to_string(a) + " vs L=" + std::to_string(b));
}

LaurentPoly LaurentPoly::constant(const GaussianRational& c) {
  LaurentPoly p;
  if (!c.is_zero()) p.terms[0] = c;
  return p;
}

LaurentPoly LaurentPoly::monomial(long exp, const GaussianRational& c, int L) {
  LaurentPoly p;
  p.L = (exp == 0) ? 0 : L;
  if (!c.is_zero()) p.terms[exp] = c;
  p.normalize();
  return p;
}

long LaurentPoly::min_exp() const { return terms.begin()->first; }
long LaurentPoly::max_exp() const { return terms.rbegin()->first; }

GaussianRational LaurentPoly::coeff(long e) const {
  auto it = terms.find(e);
  return it == terms.end() ? GaussianRational() : it->second;
}

void LaurentPoly::set(long e, const GaussianRational& c) {
  if (c.is_zero())
    terms.erase(e);
  else
    terms[e] = c;
}

void LaurentPoly::normalize() {
  if (is_constant()) L = 0;
}

LaurentPoly LaurentPoly::shifted(long k) const {
  LaurentPoly r;
  r.L = L;
  for (const auto& [e, c] : terms) r.terms[e + k] = c;
  if (k != 0 && !r.is_constant() && r.L == 0) r.L = L;
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r;
  r.L = L;
  for (const auto& [e, c] : terms) r.terms[e] = -c;
  return r;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  r.L = merge_root_order(a.L, b.L);
  r.terms = a.terms;
  for (const auto& [e, c] : b.terms) {
    auto it = r.terms.find(e);
    if (it == r.terms.end()) {
      r.terms[e] = c;
    } else {
      it->second += c;
      if (it->second.is_zero()) r.terms.erase(it);
    }
  }
  r.normalize();
  return r;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  r.L = merge_root_order(a.L, b.L);
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) {
      long e = ea + eb;
      GaussianRational prod = ca * cb;
      auto it = r.terms.find(e);
      if (it == r.terms.end()) {
        if (!prod.is_zero()) r.terms[e] = prod;
      } else {
        it->second += prod;
        if (it->second.is_zero()) r.terms.erase(it);
      }
    }
  r.normalize();
  return r;
}

LaurentPoly LaurentPoly::scaled(const GaussianRational& c) const {
  LaurentPoly r;
  if (c.is_zero()) return r;
  r.L = L;
  for (const auto& [e, co] : terms) r.terms[e] = co * c;
  return r;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.terms != b.terms) return false;
  merge_root_order(a.L, b.L);  // throws on genuinely incompatible orders
  return true;
}

std::complex<double> LaurentPoly::eval(std::complex<double> v) const {
  std::complex<double> acc = 0.0;
  for (const auto& [e, c] : terms) acc += c.to_complex() * std::pow(v, static_cast<double>(e));
  return acc;
}

namespace {

// Dense ordinary-polynomial view used by gcd/division. coeffs[k] multiplies x^k.
using Dense = std::vector<GaussianRational>;

Dense to_dense(const LaurentPoly& p, long shift) {
  Dense d(static_cast<size_t>(p.max_exp() - shift) + 1);
  for (const auto& [e, c] : p.terms) d[static_cast<size_t>(e - shift)] = c;
  return d;
}

void trim(Dense& d) {
  while (!d.empty() && d.back().is_zero()) d.pop_back();
}

// a mod b, b nonzero and trimmed
Dense poly_mod(Dense a, const Dense& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    GaussianRational f = a.back() / b.back();
    size_t off = a.size() - b.size();
    for (size_t k = 0; k < b.size(); ++k) a[off + k] -= f * b[k];
    trim(a);
  }
  return a;
}

Dense make_monic(Dense d) {
  trim(d);
  if (d.empty()) return d;
  GaussianRational lead = d.back();
  for (auto& c : d) c = c / lead;
  return d;
}

LaurentPoly from_dense(const Dense& d, long shift, int L) {
  LaurentPoly p;
  p.L = L;
  for (size_t k = 0; k < d.size(); ++k)
    if (!d[k].is_zero()) p.terms[static_cast<long>(k) + shift] = d[k];
  p.normalize();
  return p;
}

}  // namespace

LaurentPoly laurent_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) throw Error("gcd of zero polynomial");
  int L = merge_root_order(a.L, b.L);
  if (a.is_monomial() || b.is_monomial()) return LaurentPoly::constant(1);
  Dense x = to_dense(a, a.min_exp());
  Dense y = to_dense(b, b.min_exp());
  while (!y.empty()) {
    y = make_monic(std::move(y));  // keeps the remainder coefficients tame
    Dense r = poly_mod(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return from_dense(make_monic(x), 0, L);
}

std::optional<LaurentPoly> laurent_try_div(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw DivideByZeroError("polynomial division by zero");
  if (a.is_zero()) return LaurentPoly();
  int L = merge_root_order(a.L, b.L);
  long shift = a.min_exp() - b.min_exp();
  Dense num = to_dense(a, a.min_exp());
  Dense den = to_dense(b, b.min_exp());
  trim(num);
  trim(den);
  if (num.size() < den.size()) return std::nullopt;
  Dense quot(num.size() - den.size() + 1);
  while (num.size() >= den.size() && !num.empty()) {
    GaussianRational f = num.back() / den.back();
    size_t off = num.size() - den.size();
    quot[off] = f;
    for (size_t k = 0; k < den.size(); ++k) num[off + k] -= f * den[k];
    trim(num);
  }
  if (!num.empty()) return std::nullopt;
  return from_dense(quot, shift, L);
}

LaurentPoly laurent_exact_div(const LaurentPoly& a, const LaurentPoly& b) {
  std::optional<LaurentPoly> q = laurent_try_div(a, b);
  if (!q) throw Error("inexact polynomial division");
  return std::move(*q);
}

}  // namespace halfrib
