#include "halfrib/scalar.hpp"

#include <sstream>

#include "halfrib/errors.hpp"

namespace halfrib {

void Scalar::reduce() {
  merge_root_order(num_.L, den_.L);
  if (den_.is_zero()) throw DivideByZeroError("scalar with zero denominator");
  if (num_.is_zero()) {
    num_ = LaurentPoly();
    den_ = LaurentPoly::constant(1);
    return;
  }
  long a = num_.min_exp(), b = den_.min_exp();
  if (den_.is_monomial()) {  // the dominant case: polynomial over a unit
    GaussianRational c = den_.lead_coeff();
    if (b != 0 || !c.is_one()) {
      num_ = num_.shifted(-b);
      if (!c.is_one()) num_ = num_.scaled(GaussianRational(1) / c);
      den_ = LaurentPoly::constant(1);
    }
    num_.normalize();
    den_.normalize();
    return;
  }
  LaurentPoly n0 = num_.shifted(-a);
  LaurentPoly d0 = den_.shifted(-b);
  // the fraction frequently collapses to a polynomial (divided powers);
  // a straight division attempt is far cheaper than the gcd route
  if (std::optional<LaurentPoly> q = laurent_try_div(n0, d0)) {
    num_ = q->shifted(a - b);
    den_ = LaurentPoly::constant(1);
    num_.normalize();
    den_.normalize();
    return;
  }
  if (!n0.is_monomial()) {  // gcd against a unit numerator is always 1
    LaurentPoly g = laurent_gcd(n0, d0);
    if (!(g.is_constant() && g.coeff(0).is_one())) {
      n0 = laurent_exact_div(n0, g);
      d0 = laurent_exact_div(d0, g);
      if (d0.is_monomial()) {  // fraction collapsed to a polynomial
        num_ = n0.shifted(a - b).scaled(GaussianRational(1) / d0.lead_coeff());
        den_ = LaurentPoly::constant(1);
        num_.normalize();
        den_.normalize();
        return;
      }
    }
  }
  GaussianRational lead = d0.lead_coeff();
  if (lead.is_one()) {
    num_ = n0.shifted(a - b);
    den_ = d0;
  } else {
    GaussianRational inv = GaussianRational(1) / lead;
    num_ = n0.shifted(a - b).scaled(inv);
    den_ = d0.scaled(inv);
  }
  num_.normalize();
  den_.normalize();
}

Scalar Scalar::q_power(const mpq_class& r, int L) {
  mpq_class e = r * L;
  if (e.get_den() != 1)
    throw Error("q-power exponent " + r.get_str() + " does not resolve at root order L=" +
                std::to_string(L));
  if (!e.get_num().fits_slong_p()) throw Error("q-power exponent out of range");
  return v_power(e.get_num().get_si(), L);
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = -r.num_;
  return r;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.den_ == b.den_) return Scalar(a.num_ + b.num_, a.den_);
  return Scalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  return Scalar(a.num_ * b.num_, a.den_ * b.den_);
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) throw DivideByZeroError("scalar division by zero");
  return Scalar(a.num_ * b.den_, a.den_ * b.num_);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivideByZeroError("inverse of zero");
  return Scalar(den_, num_);
}

Scalar Scalar::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  Scalar acc(1);
  Scalar base = *this;
  for (long e = k; e > 0; e >>= 1) {
    if (e & 1) acc *= base;
    base *= base;
  }
  return acc;
}

bool Scalar::operator<(const Scalar& b) const {
  auto cmp_poly = [](const LaurentPoly& x, const LaurentPoly& y) -> int {
    auto ix = x.terms.begin(), iy = y.terms.begin();
    for (; ix != x.terms.end() && iy != y.terms.end(); ++ix, ++iy) {
      if (ix->first != iy->first) return ix->first < iy->first ? -1 : 1;
      if (ix->second.re != iy->second.re) return ix->second.re < iy->second.re ? -1 : 1;
      if (ix->second.im != iy->second.im) return ix->second.im < iy->second.im ? -1 : 1;
    }
    if (ix != x.terms.end()) return 1;
    if (iy != y.terms.end()) return -1;
    return 0;
  };
  int c = cmp_poly(num_, b.num_);
  if (c != 0) return c < 0;
  return cmp_poly(den_, b.den_) < 0;
}

std::complex<double> Scalar::eval_numeric(std::complex<double> sample) const {
  std::complex<double> d = den_.eval(sample);
  if (std::abs(d) < 1e-12) throw PoleError("denominator vanishes at sample");
  return num_.eval(sample) / d;
}

namespace {

nlohmann::json coeff_to_json(const GaussianRational& c) {
  auto big = [](const mpz_class& z) -> nlohmann::json {
    if (z.fits_slong_p()) return static_cast<long>(z.get_si());
    return z.get_str();  // decimal string fallback for out-of-range integers
  };
  return nlohmann::json::array(
      {big(c.re.get_num()), big(c.re.get_den()), big(c.im.get_num()), big(c.im.get_den())});
}

mpz_class json_to_big(const nlohmann::json& j) {
  if (j.is_string()) return mpz_class(j.get<std::string>());
  return mpz_class(static_cast<long>(j.get<long long>()));
}

GaussianRational coeff_from_json(const nlohmann::json& j) {
  mpq_class re(json_to_big(j.at(0)), json_to_big(j.at(1)));
  mpq_class im(json_to_big(j.at(2)), json_to_big(j.at(3)));
  re.canonicalize();
  im.canonicalize();
  return {re, im};
}

nlohmann::json poly_to_json(const LaurentPoly& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [e, c] : p.terms) arr.push_back(nlohmann::json::array({e, coeff_to_json(c)}));
  return arr;
}

LaurentPoly poly_from_json(const nlohmann::json& j, int L) {
  LaurentPoly p;
  p.L = L;
  for (const auto& term : j) p.set(term.at(0).get<long>(), coeff_from_json(term.at(1)));
  p.normalize();
  return p;
}

}  // namespace

nlohmann::json Scalar::to_json(int ambient_L) const {
  int L = merge_root_order(root_order(), ambient_L);
  return nlohmann::json{{"L", L}, {"num", poly_to_json(num_)}, {"den", poly_to_json(den_)}};
}

Scalar Scalar::from_json(const nlohmann::json& j) {
  int L = j.at("L").get<int>();
  return Scalar(poly_from_json(j.at("num"), L), poly_from_json(j.at("den"), L));
}

namespace {

// One Laurent polynomial, exponents descending: "-q - q^-1", "v^3 + 2".
std::string poly_str(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  int L = p.L;
  bool use_q = L > 0;
  if (use_q)
    for (const auto& [e, c] : p.terms)
      if (e % L != 0) {
        use_q = false;
        break;
      }
  std::ostringstream out;
  bool first = true;
  for (auto it = p.terms.rbegin(); it != p.terms.rend(); ++it) {
    long e = it->first;
    GaussianRational c = it->second;
    std::string sign;
    if (first) {
      sign = "";
    } else {
      // pull a leading minus out of pure-real or pure-imaginary coefficients
      bool negative = (c.im == 0 && c.re < 0) || (c.re == 0 && c.im < 0);
      sign = negative ? " - " : " + ";
      if (negative) c = -c;
    }
    std::string cs = c.str();
    bool needs_parens = cs.find('+') != std::string::npos ||
                        (cs.rfind('-') != std::string::npos && cs.rfind('-') > 0);
    if (needs_parens) cs = "(" + cs + ")";
    std::string var;
    if (e != 0) {
      long shown = use_q ? e / L : e;
      var = use_q ? "q" : "v";
      if (shown != 1) var += "^" + std::to_string(shown);
    }
    out << sign;
    if (var.empty())
      out << cs;
    else if (cs == "1")
      out << var;
    else if (cs == "-1")
      out << "-" << var;
    else
      out << cs << " " << var;
    first = false;
  }
  return out.str();
}

}  // namespace

std::string Scalar::str() const {
  if (den_.is_constant() && den_.coeff(0).is_one()) return poly_str(num_);
  return "(" + poly_str(num_) + ") / (" + poly_str(den_) + ")";
}

}  // namespace halfrib
