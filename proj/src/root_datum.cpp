#include "halfrib/root_datum.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>

#include "halfrib/errors.hpp"

namespace halfrib {

Weight Weight::fundamental(int rank, int node) {
  Weight w = zero(rank);
  w.coords.at(node) = 1;
  return w;
}

bool Weight::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](long c) { return c == 0; });
}

Weight operator+(const Weight& a, const Weight& b) {
  Weight r = a;
  for (size_t k = 0; k < r.coords.size(); ++k) r.coords[k] += b.coords.at(k);
  return r;
}

Weight operator-(const Weight& a, const Weight& b) { return a + (-b); }

Weight Weight::operator-() const {
  Weight r = *this;
  for (auto& c : r.coords) c = -c;
  return r;
}

Weight Weight::scaled(long k) const {
  Weight r = *this;
  for (auto& c : r.coords) c *= k;
  return r;
}

std::string Weight::str() const {
  std::string s = "(";
  for (size_t k = 0; k < coords.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(coords[k]);
  }
  return s + ")";
}

bool WeightCharacter::is_trivial() const {
  return std::all_of(signs.begin(), signs.end(), [](int s) { return s == 1; });
}

int WeightCharacter::eval_sign(const Weight& w) const {
  int sign = 1;
  for (size_t k = 0; k < signs.size(); ++k)
    if (signs[k] == -1 && (w.coords.at(k) % 2 != 0)) sign = -sign;
  return sign;
}

std::string WeightCharacter::str() const {
  std::string s;
  for (int sg : signs) s += (sg == 1 ? '+' : '-');
  return s;
}

namespace {

std::vector<std::vector<mpq_class>> invert_rational(std::vector<std::vector<mpq_class>> m) {
  size_t n = m.size();
  std::vector<std::vector<mpq_class>> inv(n, std::vector<mpq_class>(n, 0));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) throw Error("singular Cartan matrix");
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    mpq_class p = m[col][col];
    for (size_t j = 0; j < n; ++j) {
      m[col][j] /= p;
      inv[col][j] /= p;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      mpq_class f = m[r][col];
      for (size_t j = 0; j < n; ++j) {
        m[r][j] -= f * m[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

struct TypeTable {
  std::vector<std::vector<long>> cartan;
  std::vector<long> d;
  std::vector<int> longest_word;
  std::string pq_description;
};

TypeTable make_table(char type, int rank) {
  TypeTable t;
  if (type == 'A' && rank >= 1 && rank <= 8) {
    t.cartan.assign(rank, std::vector<long>(rank, 0));
    for (int i = 0; i < rank; ++i) {
      t.cartan[i][i] = 2;
      if (i + 1 < rank) t.cartan[i][i + 1] = t.cartan[i + 1][i] = -1;
    }
    t.d.assign(rank, 1);
    // (1)(2,1)(3,2,1)... , verified below against w0(alpha_i) = -alpha_theta(i)
    for (int k = 0; k < rank; ++k)
      for (int i = k; i >= 0; --i) t.longest_word.push_back(i);
    t.pq_description = "Z/" + std::to_string(rank + 1);
    return t;
  }
  if (type == 'B' && rank == 2) {
    t.cartan = {{2, -1}, {-2, 2}};
    t.d = {2, 1};
    t.longest_word = {0, 1, 0, 1};
    t.pq_description = "Z/2";
    return t;
  }
  if (type == 'G' && rank == 2) {
    t.cartan = {{2, -1}, {-3, 2}};
    t.d = {3, 1};
    t.longest_word = {0, 1, 0, 1, 0, 1};
    t.pq_description = "1";
    return t;
  }
  throw Error(std::string("unsupported root datum ") + type + std::to_string(rank) +
              " (A1..A8, B2, G2 available)");
}

RootDatum build(char type, int rank) {
  TypeTable t = make_table(type, rank);
  RootDatum rd;
  rd.type = type;
  rd.rank = rank;
  rd.cartan = t.cartan;
  rd.d = t.d;
  rd.pq_description = t.pq_description;
  rd.longest_word = t.longest_word;

  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      if (rd.d[i] * rd.cartan[i][j] != rd.d[j] * rd.cartan[j][i])
        throw Error("d_i a_ij not symmetric");

  std::vector<std::vector<mpq_class>> a(rank, std::vector<mpq_class>(rank));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) a[i][j] = rd.cartan[i][j];
  rd.cartan_inv = invert_rational(a);

  // (w_i, w_k) = (A^-1)_{ki} d_k ; symmetric because D A is
  rd.fw_form.assign(rank, std::vector<mpq_class>(rank));
  for (int i = 0; i < rank; ++i)
    for (int k = 0; k < rank; ++k) rd.fw_form[i][k] = rd.cartan_inv[k][i] * rd.d[k];
  for (int i = 0; i < rank; ++i)
    for (int k = 0; k < rank; ++k)
      if (rd.fw_form[i][k] != rd.fw_form[k][i]) throw Error("fundamental-weight form not symmetric");

  rd.rho = Weight(std::vector<long>(rank, 1));

  // <w_i, rho^vee> = column sums of A^-1
  rd.rho_check.assign(rank, 0);
  for (int i = 0; i < rank; ++i)
    for (int k = 0; k < rank; ++k) rd.rho_check[i] += rd.cartan_inv[k][i];

  // root order: twice the lcm of the form denominators
  mpz_class lcm_den = 1;
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) {
      mpz_class den = rd.fw_form[i][j].get_den();
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), lcm_den.get_mpz_t(), den.get_mpz_t());
      lcm_den = lcm_den * den / g;
    }
  mpz_class Lz = 2 * lcm_den;
  if (!Lz.fits_sint_p()) throw Error("root order out of range");
  rd.L = static_cast<int>(Lz.get_si());

  mpz_class det = 1;  // |P/Q| = det A, from the echelon of the integer matrix
  {
    std::vector<std::vector<mpq_class>> m = a;
    for (size_t col = 0; col < m.size(); ++col) {
      size_t piv = col;
      while (piv < m.size() && m[piv][col] == 0) ++piv;
      if (piv != col) {
        std::swap(m[piv], m[col]);
        det = -det;
      }
      for (size_t r = col + 1; r < m.size(); ++r) {
        if (m[r][col] == 0) continue;
        mpq_class f = m[r][col] / m[col][col];
        for (size_t j = col; j < m.size(); ++j) m[r][j] -= f * m[col][j];
      }
    }
    mpq_class dq = 1;
    for (size_t k = 0; k < m.size(); ++k) dq *= m[k][k];
    dq.canonicalize();
    if (dq.get_den() != 1) throw Error("non-integer Cartan determinant");
    det *= dq.get_num() < 0 ? -dq.get_num() : dq.get_num();
  }
  rd.pq_order = det.get_si();

  // theta from the longest word acting on simple roots
  rd.theta.assign(rank, -1);
  for (int i = 0; i < rank; ++i) {
    Weight w = rd.simple_root(i);
    for (auto it = rd.longest_word.rbegin(); it != rd.longest_word.rend(); ++it)
      w = rd.reflect(*it, w);
    bool found = false;
    for (int j = 0; j < rank && !found; ++j)
      if (w == -rd.simple_root(j)) {
        rd.theta[i] = j;
        found = true;
      }
    if (!found) throw Error("longest word table broken: w0(alpha_i) is not a negative simple root");
  }
  for (int i = 0; i < rank; ++i)
    if (rd.theta[rd.theta[i]] != i) throw Error("theta is not an involution");

  // positive roots by reflection closure, sorted for determinism
  {
    std::set<Weight> pos;
    std::vector<Weight> queue;
    for (int i = 0; i < rank; ++i) {
      pos.insert(rd.simple_root(i));
      queue.push_back(rd.simple_root(i));
    }
    while (!queue.empty()) {
      Weight w = queue.back();
      queue.pop_back();
      for (int i = 0; i < rank; ++i) {
        Weight r = rd.reflect(i, w);
        bool positive = false, negative = false;
        // positivity read off in the root basis: x = A^-1 * coords
        for (int row = 0; row < rank; ++row) {
          mpq_class x = 0;
          for (int col = 0; col < rank; ++col) x += rd.cartan_inv[row][col] * r.coords[col];
          if (x > 0) positive = true;
          if (x < 0) negative = true;
        }
        if (negative || !positive) continue;
        if (pos.insert(r).second) queue.push_back(r);
      }
    }
    rd.positive_roots.assign(pos.begin(), pos.end());
  }
  if (rd.positive_roots.size() != rd.longest_word.size())
    throw Error("longest word length disagrees with the positive-root count");

  return rd;
}

}  // namespace

const RootDatum& RootDatum::get(char type, int rank) {
  static std::mutex mu;
  static std::map<std::pair<char, int>, std::unique_ptr<RootDatum>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(type, rank);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<RootDatum>(build(type, rank))).first;
  return *it->second;
}

Weight RootDatum::simple_root(int i) const {
  Weight w = Weight::zero(rank);
  for (int k = 0; k < rank; ++k) w.coords[k] = cartan[k][i];
  return w;
}

mpq_class RootDatum::form(const Weight& a, const Weight& b) const {
  mpq_class s = 0;
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      if (a.coords[i] != 0 && b.coords[j] != 0) s += fw_form[i][j] * a.coords[i] * b.coords[j];
  return s;
}

mpq_class RootDatum::form_with_rho(const Weight& a) const { return form(a, rho); }

mpq_class RootDatum::j_exponent(const Weight& lam) const {
  return form(lam, lam) / 2 + form_with_rho(lam);
}

long RootDatum::coroot_pairing(const Weight& w, int i) const {
  // <w, alpha_i^vee> = coordinate i in the fundamental-weight basis
  return w.coords.at(i);
}

long RootDatum::two_rho_check_pairing(const Weight& w) const {
  mpq_class s = 0;
  for (int i = 0; i < rank; ++i) s += rho_check[i] * w.coords[i];
  s *= 2;
  s.canonicalize();
  if (s.get_den() != 1) throw Error("<2w, rho^vee> not an integer for " + w.str());
  return s.get_num().get_si();
}

Weight RootDatum::reflect(int i, const Weight& w) const {
  return w - simple_root(i).scaled(coroot_pairing(w, i));
}

Weight RootDatum::w0_action(const Weight& w) const {
  Weight r = Weight::zero(rank);
  for (int i = 0; i < rank; ++i) r.coords[theta[i]] = -w.coords[i];
  return r;
}

bool RootDatum::dominant(const Weight& w) const {
  return std::all_of(w.coords.begin(), w.coords.end(), [](long c) { return c >= 0; });
}

bool RootDatum::in_root_lattice(const Weight& w) const {
  for (int row = 0; row < rank; ++row) {
    mpq_class x = 0;
    for (int col = 0; col < rank; ++col) x += cartan_inv[row][col] * w.coords[col];
    x.canonicalize();
    if (x.get_den() != 1) return false;
  }
  return true;
}

unsigned long RootDatum::weyl_dim(const Weight& lam) const {
  mpq_class prod = 1;
  Weight shifted = lam + rho;
  for (const Weight& beta : positive_roots) prod *= form(shifted, beta) / form(rho, beta);
  prod.canonicalize();
  if (prod.get_den() != 1 || prod < 0) throw Error("Weyl dimension not a positive integer");
  return prod.get_num().get_ui();
}

std::vector<WeightCharacter> RootDatum::order2_characters() const {
  std::vector<WeightCharacter> out;
  for (long mask = 0; mask < (1L << rank); ++mask) {
    WeightCharacter phi;
    phi.signs.assign(rank, 1);
    for (int i = 0; i < rank; ++i)
      if (mask & (1L << i)) phi.signs[i] = -1;
    bool trivial_on_roots = true;
    for (int j = 0; j < rank && trivial_on_roots; ++j)
      if (phi.eval_sign(simple_root(j)) != 1) trivial_on_roots = false;
    if (trivial_on_roots) out.push_back(phi);
  }
  std::sort(out.begin(), out.end(), [](const WeightCharacter& a, const WeightCharacter& b) {
    return b.signs < a.signs;  // all-plus (trivial) first
  });
  return out;
}

nlohmann::json RootDatum::to_json() const {
  nlohmann::json j;
  j["type"] = std::string(1, type) + std::to_string(rank);
  j["cartan"] = cartan;
  j["d"] = d;
  nlohmann::json form_rows = nlohmann::json::array();
  for (const auto& row : fw_form) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& q : row) r.push_back(q.get_str());
    form_rows.push_back(r);
  }
  j["fw_form"] = form_rows;
  nlohmann::json rc = nlohmann::json::array();
  for (const auto& q : rho_check) rc.push_back(q.get_str());
  j["rho_check"] = rc;
  nlohmann::json lw = nlohmann::json::array();
  for (int i : longest_word) lw.push_back(i + 1);  // 1-based in output
  j["longest_word"] = lw;
  nlohmann::json th = nlohmann::json::array();
  for (int i : theta) th.push_back(i + 1);
  j["theta"] = th;
  j["pq"] = pq_description;
  j["pq_order"] = pq_order;
  j["L"] = L;
  j["positive_roots"] = positive_roots.size();
  return j;
}

Weight parse_weight(const std::string& text, int rank) {
  std::vector<long> coords;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t pos = 0;
    long val = std::stol(tok, &pos);
    if (pos != tok.size()) throw Error("bad weight coordinate '" + tok + "'");
    coords.push_back(val);
  }
  if (static_cast<int>(coords.size()) != rank)
    throw Error("weight '" + text + "' has " + std::to_string(coords.size()) +
                " coordinates, expected " + std::to_string(rank));
  return Weight(coords);
}

}  // namespace halfrib
