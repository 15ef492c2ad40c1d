#include "halfrib/gaussian.hpp"

#include "halfrib/errors.hpp"

namespace halfrib {

GaussianRational GaussianRational::i_power(long k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return GaussianRational(1);
    case 1: return i();
    case 2: return GaussianRational(-1);
    default: return -i();
  }
}

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
  if (b.is_zero()) throw DivideByZeroError("division by zero Gaussian rational");
  mpq_class n = b.norm();
  GaussianRational c = a * b.conj();
  return {c.re / n, c.im / n};
}

std::string GaussianRational::str() const {
  auto rat = [](const mpq_class& q) { return q.get_str(); };
  if (is_zero()) return "0";
  if (im == 0) return rat(re);
  std::string imag;
  if (im == 1)
    imag = "i";
  else if (im == -1)
    imag = "-i";
  else
    imag = rat(im) + "i";
  if (re == 0) return imag;
  if (im > 0) return rat(re) + "+" + imag;
  return rat(re) + imag;  // imag already carries the minus sign
}

}  // namespace halfrib
