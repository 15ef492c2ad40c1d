#pragma once
#include <gmpxx.h>

#include <string>
#include <vector>

#include "halfrib/gaussian.hpp"

#include "json.hpp"

namespace halfrib {

// Integer vector in the fundamental-weight basis.
struct Weight {
  std::vector<long> coords;

  Weight() = default;
  explicit Weight(std::vector<long> c) : coords(std::move(c)) {}
  static Weight zero(int rank) { return Weight(std::vector<long>(rank, 0)); }
  static Weight fundamental(int rank, int node);

  size_t rank() const { return coords.size(); }
  bool is_zero() const;

  friend Weight operator+(const Weight& a, const Weight& b);
  friend Weight operator-(const Weight& a, const Weight& b);
  Weight operator-() const;
  Weight scaled(long k) const;
  friend bool operator==(const Weight& a, const Weight& b) { return a.coords == b.coords; }
  friend bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }
  friend bool operator<(const Weight& a, const Weight& b) { return a.coords < b.coords; }

  std::string str() const;  // "(1,-2)"
};

// Character of P/Q with values in {+1,-1}, stored by its signs on the
// fundamental weights. Trivial on the root lattice by construction.
struct WeightCharacter {
  std::vector<int> signs;

  bool is_trivial() const;
  int eval_sign(const Weight& w) const;          // phi(w) in {+1,-1}
  GaussianRational eval(const Weight& w) const { return GaussianRational(eval_sign(w)); }
  friend bool operator==(const WeightCharacter& a, const WeightCharacter& b) {
    return a.signs == b.signs;
  }
  std::string str() const;
};

// Cartan/weight-lattice data for one finite simple type. Immutable after
// construction; construction cross-checks the table against the Weyl-group
// invariants and throws on any inconsistency.
struct RootDatum {
  char type = 'A';
  int rank = 0;
  std::vector<std::vector<long>> cartan;        // a_ij
  std::vector<long> d;                          // d_i, with d_i*a_ij symmetric
  std::vector<std::vector<mpq_class>> cartan_inv;
  std::vector<std::vector<mpq_class>> fw_form;  // (w_i, w_j)
  Weight rho;                                   // all-ones in fw coords
  std::vector<mpq_class> rho_check;             // <w_i, rho^vee>
  std::vector<int> longest_word;                // node indices, 0-based
  std::vector<int> theta;                       // w0(alpha_i) = -alpha_theta(i)
  long pq_order = 1;                            // |P/Q| = det(cartan)
  std::string pq_description;                   // e.g. "Z/4"
  int L = 0;                                    // root order for scalars
  std::vector<Weight> positive_roots;           // fw coords

  // Cached construction; A series any rank plus B2 and G2 structurally,
  // anything else rejected.
  static const RootDatum& get(char type, int rank);

  std::string key() const { return std::string(1, type) + std::to_string(rank); }

  Weight simple_root(int i) const;              // alpha_i in fw coords
  mpq_class form(const Weight& a, const Weight& b) const;
  mpq_class form_with_rho(const Weight& a) const;
  // (lam,lam)/2 + (lam,rho): the half-twist diagonal exponent
  mpq_class j_exponent(const Weight& lam) const;
  long coroot_pairing(const Weight& w, int i) const;   // <w, alpha_i^vee>, integer
  long two_rho_check_pairing(const Weight& w) const;   // <2w, rho^vee>, asserts integrality
  Weight reflect(int i, const Weight& w) const;        // s_i(w)
  Weight w0_action(const Weight& w) const;
  bool dominant(const Weight& w) const;
  bool in_root_lattice(const Weight& w) const;
  unsigned long weyl_dim(const Weight& lam) const;

  // All characters phi of P/Q with phi^2 trivial, trivial character first,
  // then in lexicographic sign order.
  std::vector<WeightCharacter> order2_characters() const;

  nlohmann::json to_json() const;
};

Weight parse_weight(const std::string& text, int rank);  // "1,0,2"

}  // namespace halfrib
