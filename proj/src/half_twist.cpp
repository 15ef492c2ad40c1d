#include "halfrib/half_twist.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>

#include "halfrib/errors.hpp"

namespace halfrib {

namespace {

// operator cache keyed by datum/module label (modules are interned by label)
class OpCache {
 public:
  bool find(const std::string& key, SparseMat* out) const {
    std::shared_lock lock(mu_);
    auto it = map_.find(key);
    if (it == map_.end()) return false;
    *out = it->second;
    return true;
  }
  void put(const std::string& key, const SparseMat& m) {
    std::unique_lock lock(mu_);
    map_.emplace(key, m);
  }
  static OpCache& instance() {
    static OpCache c;
    return c;
  }

 private:
  mutable std::shared_mutex mu_;
  std::map<std::string, SparseMat> map_;
};

thread_local bool g_in_self_test = false;

SparseMat braid_matrix(const ModulePtr& m, int node);

// Lemma-level sanity of the calibrated T_i convention, checked once per
// process on the 2- and 3-dimensional A1 modules before any operator is
// handed out.
void run_self_test_once() {
  if (g_in_self_test) return;
  static std::once_flag flag;
  std::call_once(flag, [] {
    g_in_self_test = true;
    const RootDatum& rd = RootDatum::get('A', 1);
    for (long c = 1; c <= 2; ++c) {
      Weight lam({c});
      ModulePtr v = irrep(rd, lam);
      SparseMat t = braid_matrix(v, 0);
      SparseMat j = v->weight_diag(
          [&](const Weight& w) { return Scalar::q_power(rd.j_exponent(w), rd.L); });
      SparseMat x = j * t;
      SparseVec top;
      top[0] = Scalar(1);
      SparseVec low = t.inverse().apply(top);
      Scalar k = Scalar::q_power(rd.j_exponent(lam), rd.L);
      long par = rd.two_rho_check_pairing(lam);
      Scalar signed_k = (par % 2 == 0) ? k : -k;
      bool ok = x.apply(low) == vec_scaled(top, k) &&
                x.apply(top) == vec_scaled(low, signed_k);
      Scalar sq;
      ok = ok && (x * x).is_scalar_multiple_of_identity(&sq) && sq == signed_k * k;
      if (!ok)
        throw Error("half-twist self-test failed on the A1 module of highest weight " +
                    std::to_string(c) + "; operator convention has drifted");
    }
    g_in_self_test = false;
  });
}

SparseMat braid_matrix(const ModulePtr& m, int node) {
  const RootDatum& rd = *m->datum;
  std::string key = rd.key() + "/" + m->label + "/T" + std::to_string(node);
  SparseMat cached;
  if (OpCache::instance().find(key, &cached)) return cached;

  int L = rd.L;
  long di = rd.d[node];
  auto divided_powers = [&](const SparseMat& x) {
    std::vector<SparseMat> pows{SparseMat::identity(m->dim())};
    SparseMat p = SparseMat::identity(m->dim());
    for (long a = 1;; ++a) {
      p = p * x;
      if (p.is_zero()) break;
      pows.push_back(p.scaled(quantum_factorial(a, di, L).inverse()));
    }
    return pows;
  };
  std::vector<SparseMat> epow = divided_powers(m->e_action[node]);
  std::vector<SparseMat> fpow = divided_powers(m->f_action[node]);

  // T_i(v) = sum over a,b,c >= 0 with a - b + c = -<wt(v), alpha_i^vee> of
  //          (-1)^b q_i^(b - a c) E^(a) F^(b) E^(c) v
  SparseMat t(m->dim(), m->dim());
  for (int col = 0; col < m->dim(); ++col) {
    long n = rd.coroot_pairing(m->weights[col], node);
    SparseVec e0;
    e0[col] = Scalar(1);
    for (long c = 0; c < static_cast<long>(epow.size()); ++c) {
      SparseVec vc = epow[c].apply(e0);
      if (vc.empty()) continue;
      for (long b = 0; b < static_cast<long>(fpow.size()); ++b) {
        SparseVec vb = fpow[b].apply(vc);
        if (vb.empty()) continue;
        long a = b - c - n;
        if (a < 0 || a >= static_cast<long>(epow.size())) continue;
        SparseVec va = epow[a].apply(vb);
        if (va.empty()) continue;
        Scalar coeff = Scalar::v_power(L * di * (b - a * c), L);
        if (b % 2 == 1) coeff = -coeff;
        for (const auto& [r, s] : va) t.add_to(r, col, s * coeff);
      }
    }
  }
  OpCache::instance().put(key, t);
  return t;
}

SparseMat half_twist_matrix(const ModulePtr& m) {
  const RootDatum& rd = *m->datum;
  std::string key = rd.key() + "/" + m->label + "/X";
  SparseMat cached;
  if (OpCache::instance().find(key, &cached)) return cached;

  SparseMat t = SparseMat::identity(m->dim());
  for (int i : rd.longest_word) t = t * braid_matrix(m, i);
  SparseMat j =
      m->weight_diag([&](const Weight& w) { return Scalar::q_power(rd.j_exponent(w), rd.L); });
  SparseMat x = j * t;
  for (int r = 0; r < m->dim(); ++r)
    for (const auto& [c, s] : x.row(r)) {
      (void)s;
      if (m->weights[r] != rd.w0_action(m->weights[c]))
        throw Error(m->label + ": X fails to send the mu weight space to w0(mu)");
    }
  OpCache::instance().put(key, x);
  return x;
}

}  // namespace

ModuleOp braid_operator(const ModulePtr& m, int node) {
  run_self_test_once();
  if (node < 0 || node >= m->datum->rank) throw Error("braid operator node out of range");
  return {m, m, braid_matrix(m, node)};
}

ModuleOp half_twist(const ModulePtr& m) {
  run_self_test_once();
  return {m, m, half_twist_matrix(m)};
}

ModuleOp half_twist_via_decomposition(const ModulePtr& m) {
  run_self_test_once();
  const RootDatum& rd = *m->datum;
  std::vector<ModuleVec> sing = singular_vectors(m);
  SparseMat psi(m->dim(), m->dim());
  SparseMat blocks(m->dim(), m->dim());
  int offset = 0;
  for (const ModuleVec& sv : sing) {
    // locate the (dominant) weight of the seed
    Weight nu = m->weights[sv.entries.begin()->first];
    if (!rd.dominant(nu)) throw Error("singular vector with non-dominant weight");
    ModulePtr standalone = irrep(rd, nu);
    SparseVec top;
    top[0] = Scalar(1);
    GeneratedSubmodule inside = generate_submodule(*m, sv.entries, nu);
    GeneratedSubmodule reference = generate_submodule(*standalone, top, nu);
    if (inside.words != reference.words)
      throw Error("summand transport: F-word structure mismatch for " + nu.str());
    int d = static_cast<int>(inside.basis.size());
    // X on the standalone copy, conjugated into its generated basis
    SparseMat gen_basis(standalone->dim(), d);
    for (int k = 0; k < d; ++k)
      for (const auto& [r, s] : reference.basis[k]) gen_basis.set(r, k, s);
    // gen_basis is square: the generated set spans the irreducible
    SparseMat x_local =
        gen_basis.inverse() * half_twist_matrix(standalone) * gen_basis;
    for (int k = 0; k < d; ++k)
      for (const auto& [r, s] : inside.basis[k]) psi.set(r, offset + k, s);
    for (int rr = 0; rr < d; ++rr)
      for (const auto& [cc, s] : x_local.row(rr)) blocks.set(offset + rr, offset + cc, s);
    offset += d;
  }
  if (offset != m->dim())
    throw Error("summand decomposition does not exhaust the module (dim " +
                std::to_string(offset) + " of " + std::to_string(m->dim()) + ")");
  return {m, m, psi * blocks * psi.inverse()};
}

Braiding braiding(const ModulePtr& m, const ModulePtr& n) {
  if (m->datum != n->datum) throw Error("braiding across different root data");
  ModulePtr mn = tensor(m, n);
  SparseMat x_mn = half_twist_matrix(mn);
  SparseMat r =
      kron(half_twist_matrix(m).inverse(), half_twist_matrix(n).inverse()) * x_mn;
  std::vector<int> image(static_cast<size_t>(m->dim()) * n->dim());
  for (int a = 0; a < m->dim(); ++a)
    for (int b = 0; b < n->dim(); ++b) image[a * n->dim() + b] = b * m->dim() + a;
  SparseMat flip = SparseMat::from_permutation(image);
  ModulePtr nm = tensor(n, m);
  Braiding out;
  out.R = ModuleOp(mn, mn, r);
  out.sigma = ModuleOp(mn, nm, flip * r);
  return out;
}

RibbonChoice RibbonChoice::x_squared_inverse(const RootDatum& rd) {
  WeightCharacter phi;
  phi.signs.assign(rd.rank, 1);
  return RibbonChoice{phi};
}

RibbonChoice RibbonChoice::standard_c(const RootDatum& rd) {
  WeightCharacter phi;
  phi.signs.resize(rd.rank);
  for (int i = 0; i < rd.rank; ++i) {
    long p = rd.two_rho_check_pairing(Weight::fundamental(rd.rank, i));
    phi.signs[i] = (p % 2 == 0) ? 1 : -1;
  }
  return RibbonChoice{phi};
}

std::string RibbonChoice::str() const {
  if (character.is_trivial()) return "X^-2";
  return "s(" + character.str() + ") X^-2";
}

Scalar ribbon_scalar(const RootDatum& rd, const RibbonChoice& c, const Weight& lam) {
  long par = rd.two_rho_check_pairing(lam);
  int sign = c.character.eval_sign(lam) * ((par % 2 == 0) ? 1 : -1);
  mpq_class exponent = -(rd.form(lam, lam) + 2 * rd.form(lam, rd.rho));
  return Scalar(sign) * Scalar::q_power(exponent, rd.L);
}

SparseMat ribbon_matrix(const RibbonChoice& c, const ModulePtr& m) {
  const RootDatum& rd = *m->datum;
  SparseMat x = half_twist_matrix(m);
  SparseMat phi = m->weight_diag([&](const Weight& w) { return Scalar(c.character.eval(w)); });
  return phi * (x * x).inverse();
}

namespace {

// u via the contraction of R on M (x) M*: u[i][j] = sum_k R[(k,k)][(j,i)].
SparseMat drinfeld_u_from_braiding(const ModulePtr& m) {
  ModulePtr mstar = dual(m, DualSide::left);
  Braiding b = braiding(m, mstar);
  int d = m->dim();
  SparseMat u(d, d);
  for (int k = 0; k < d; ++k) {
    int row = k * d + k;
    for (const auto& [col, s] : b.R.mat.row(row)) {
      int j = col / d, i = col % d;
      u.add_to(i, j, s);
    }
  }
  return u;
}

}  // namespace

SparseMat drinfeld_u(const ModulePtr& m) {
  std::string key = m->datum->key() + "/" + m->label + "/u";
  SparseMat cached;
  if (OpCache::instance().find(key, &cached)) return cached;
  ModulePtr mstar = dual(m, DualSide::left);
  // S(X^-1) X^-1 with the antipode realized as a dual-module transpose
  SparseMat route_antipode =
      half_twist_matrix(mstar).inverse().transpose() * half_twist_matrix(m).inverse();
  SparseMat route_braiding = drinfeld_u_from_braiding(m);
  if (route_antipode != route_braiding)
    throw Error(m->label + ": u from R disagrees with S(X^-1) X^-1; convention drift");
  OpCache::instance().put(key, route_antipode);
  return route_antipode;
}

ModuleOp pivotal_operator(const RibbonChoice& c, const ModulePtr& m) {
  SparseMat u = drinfeld_u(m);
  SparseMat g = ribbon_matrix(c, m).inverse() * u;
  if (c.is_half_ribbon()) {
    ModulePtr mstar = dual(m, DualSide::left);
    SparseMat alt = half_twist_matrix(mstar).transpose() * half_twist_matrix(m).inverse();
    if (g != alt) throw Error(m->label + ": pivotal element mismatch, S(X) X^-1 != v^-1 u");
  }
  return {m, m, g};
}

int fs_indicator(const RootDatum& rd, const RibbonChoice& c, const Weight& lam) {
  if (!rd.dominant(lam)) throw Error("fs_indicator requires a dominant weight");
  ModulePtr v = irrep(rd, lam);
  ModulePtr vstar = dual(v, DualSide::left);
  std::vector<Intertwiner> homs = hom_space(v, vstar);
  if (homs.empty()) return 0;
  if (homs.size() > 1) throw Error("hom space of an irreducible has dimension > 1");
  const SparseMat& f = homs[0].matrix;
  SparseMat rhs = f.transpose() * pivotal_operator(c, v).mat;
  // f = FS * f^* p; read FS off the first nonzero entry and verify globally
  Scalar fs;
  bool found = false;
  for (int r = 0; r < f.rows() && !found; ++r)
    for (const auto& [cc, s] : f.row(r)) {
      fs = s / rhs.at(r, cc);
      found = true;
      break;
    }
  if (!found) throw Error("zero intertwiner");
  if (f != rhs.scaled(fs)) throw Error("FS indicator is not a scalar: pivotal mismatch");
  if (fs == Scalar(1)) return 1;
  if (fs == Scalar(-1)) return -1;
  throw Error("FS indicator is not +-1: " + fs.str());
}

SparseMat RibbonCandidate::action(const ModulePtr& m) const {
  if (kind == Kind::x_inverse) return half_twist_matrix(m).inverse();
  return ribbon_matrix(choice, m);
}

namespace {

bool commutes_with_generators(const SparseMat& a, const Module& m) {
  for (int i = 0; i < m.datum->rank; ++i) {
    if (!(a * m.e_action[i] == m.e_action[i] * a)) return false;
    if (!(a * m.f_action[i] == m.f_action[i] * a)) return false;
  }
  return true;
}

}  // namespace

RibbonAxiomReport verify_ribbon_axioms(const RootDatum& rd, const RibbonCandidate& cand,
                                       const std::vector<Weight>& family) {
  RibbonAxiomReport rep;
  rep.central = rep.square_is_u_su = rep.antipode_fixed = rep.counit_one = rep.coproduct_ok = true;

  // counit: the candidate acts as 1 on the trivial module
  {
    SparseMat v = cand.action(trivial_module(rd));
    rep.counit_one = v == SparseMat::identity(1);
  }

  std::vector<ModulePtr> mods;
  for (const Weight& lam : family) mods.push_back(irrep(rd, lam));
  for (const ModulePtr& m : mods) {
    SparseMat v = cand.action(m);
    if (!commutes_with_generators(v, *m)) rep.central = false;

    SparseMat u = drinfeld_u(m);
    ModulePtr mstar = dual(m, DualSide::left);
    SparseMat su = drinfeld_u(mstar).transpose();  // S(u) on m
    if (!(v * v == u * su)) rep.square_is_u_su = false;

    SparseMat v_on_dual = cand.action(mstar);
    if (!(v_on_dual.transpose() == v)) rep.antipode_fixed = false;
  }

  for (const ModulePtr& a : mods)
    for (const ModulePtr& b : mods) {
      ModulePtr ab = tensor(a, b);
      SparseMat v_ab = cand.action(ab);
      Braiding r12 = braiding(a, b);
      Braiding r21rev = braiding(b, a);
      std::vector<int> image(static_cast<size_t>(a->dim()) * b->dim());
      for (int i = 0; i < a->dim(); ++i)
        for (int j = 0; j < b->dim(); ++j) image[i * b->dim() + j] = j * a->dim() + i;
      SparseMat p = SparseMat::from_permutation(image);  // a(x)b -> b(x)a
      SparseMat r21 = p.inverse() * r21rev.R.mat * p;
      SparseMat rhs = kron(cand.action(a), cand.action(b)) * (r21 * r12.R.mat).inverse();
      if (!(v_ab == rhs)) rep.coproduct_ok = false;
    }
  return rep;
}

std::string RibbonAxiomReport::str() const {
  std::ostringstream out;
  auto line = [&](const char* name, bool v) { out << name << ": " << (v ? "pass" : "FAIL") << "\n"; };
  line("central", central);
  line("v^2 = u S(u)", square_is_u_su);
  line("S(v) = v", antipode_fixed);
  line("eps(v) = 1", counit_one);
  line("Delta(v) = (v x v)(R21 R12)^-1", coproduct_ok);
  return out.str();
}

std::vector<Weight> default_family(const RootDatum& rd) {
  std::vector<Weight> fam;
  if (rd.rank == 1) {
    fam.push_back(Weight({1}));
    fam.push_back(Weight({2}));
  } else {
    for (int i = 0; i < rd.rank; ++i) fam.push_back(Weight::fundamental(rd.rank, i));
  }
  return fam;
}

std::vector<ClassifiedRibbon> classify_ribbons(const RootDatum& rd) {
  std::vector<ClassifiedRibbon> out;
  std::vector<Weight> fam = default_family(rd);
  for (const WeightCharacter& phi : rd.order2_characters()) {
    ClassifiedRibbon cr;
    cr.choice = RibbonChoice::twisted(phi);
    cr.axioms_pass =
        verify_ribbon_axioms(rd, RibbonCandidate::from_choice(cr.choice), fam).all();
    cr.equals_standard_c = true;
    for (int i = 0; i < rd.rank; ++i) {
      Weight wi = Weight::fundamental(rd.rank, i);
      Scalar c_scalar =
          Scalar::q_power(-(rd.form(wi, wi) + 2 * rd.form(wi, rd.rho)), rd.L);
      if (ribbon_scalar(rd, cr.choice, wi) != c_scalar) cr.equals_standard_c = false;
    }
    out.push_back(std::move(cr));
  }
  return out;
}

namespace {

// Laurent polynomials in a formal grouplike parameter a, with Scalar
// coefficients; enough ring structure for the K_a conjugation identity.
using APoly = std::map<long, Scalar>;

APoly ap_scalar(const Scalar& s) {
  APoly p;
  if (!s.is_zero()) p[0] = s;
  return p;
}

APoly ap_mul(const APoly& x, const APoly& y) {
  APoly r;
  for (const auto& [ea, ca] : x)
    for (const auto& [eb, cb] : y) {
      Scalar prod = ca * cb;
      if (prod.is_zero()) continue;
      auto it = r.find(ea + eb);
      if (it == r.end())
        r[ea + eb] = prod;
      else {
        it->second += prod;
        if (it->second.is_zero()) r.erase(it);
      }
    }
  return r;
}

void ap_add_to(APoly& x, const APoly& y) {
  for (const auto& [e, c] : y) {
    auto it = x.find(e);
    if (it == x.end())
      x[e] = c;
    else {
      it->second += c;
      if (it->second.is_zero()) x.erase(it);
    }
  }
}

using AMat = std::vector<std::map<int, APoly>>;

AMat am_from_sparse(const SparseMat& m) {
  AMat r(m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (const auto& [c, s] : m.row(i)) r[i][c] = ap_scalar(s);
  return r;
}

AMat am_mul(const AMat& a, const AMat& b) {
  AMat r(a.size());
  for (size_t i = 0; i < a.size(); ++i)
    for (const auto& [k, pa] : a[i])
      for (const auto& [c, pb] : b[k]) ap_add_to(r[i][c], ap_mul(pa, pb));
  for (auto& row : r)
    for (auto it = row.begin(); it != row.end();)
      it = it->second.empty() ? row.erase(it) : std::next(it);
  return r;
}

bool am_eq(const AMat& a, const AMat& b) { return a == b; }

}  // namespace

bool Sl2UniquenessReport::all() const {
  if (!(formal_identity && grouplike_on_tensor && x2_differs_from_c)) return false;
  for (const auto& [name, ok] : sample_results)
    if (!ok) return false;
  return true;
}

std::string Sl2UniquenessReport::str() const {
  std::ostringstream out;
  out << "(X K_a)^2 = X^2 with formal a: " << (formal_identity ? "pass" : "FAIL") << "\n";
  out << "K_a grouplike on V (x) V: " << (grouplike_on_tensor ? "pass" : "FAIL") << "\n";
  out << "X^-2 differs from C on V: " << (x2_differs_from_c ? "pass" : "FAIL") << "\n";
  for (const auto& [name, ok] : sample_results)
    out << "sample a = " << name << ": " << (ok ? "pass" : "FAIL") << "\n";
  out << "conclusion: every half-ribbon square is X^-2, and C is not it\n";
  return out.str();
}

Sl2UniquenessReport sl2_uniqueness_check(const std::vector<Scalar>& samples) {
  const RootDatum& rd = RootDatum::get('A', 1);
  Sl2UniquenessReport rep;
  rep.formal_identity = true;

  for (long c = 1; c <= 3; ++c) {
    ModulePtr v = irrep(rd, Weight({c}));
    AMat x = am_from_sparse(half_twist_matrix(v));
    AMat ka(v->dim());
    for (int b = 0; b < v->dim(); ++b) {
      APoly p;
      p[v->weights[b].coords[0]] = Scalar(1);  // a^(weight)
      ka[b][b] = p;
    }
    AMat xka = am_mul(x, ka);
    if (!am_eq(am_mul(xka, xka), am_mul(x, x))) rep.formal_identity = false;
  }

  {
    ModulePtr v = irrep(rd, Weight({1}));
    ModulePtr vv = tensor(v, v);
    // K_a on the tensor module is diagonal in the total weight; grouplike
    // means it matches the Kronecker square of K_a on the factors.
    AMat big(vv->dim());
    for (int b = 0; b < vv->dim(); ++b) {
      APoly p;
      p[vv->weights[b].coords[0]] = Scalar(1);
      big[b][b] = p;
    }
    AMat small(vv->dim());
    for (int i = 0; i < v->dim(); ++i)
      for (int j = 0; j < v->dim(); ++j) {
        APoly p;
        p[v->weights[i].coords[0] + v->weights[j].coords[0]] = Scalar(1);
        small[i * v->dim() + j][i * v->dim() + j] = p;
      }
    rep.grouplike_on_tensor = am_eq(big, small);
  }

  rep.x2_differs_from_c =
      ribbon_scalar(rd, RibbonChoice::x_squared_inverse(rd), Weight({1})) !=
      ribbon_scalar(rd, RibbonChoice::standard_c(rd), Weight({1}));

  for (const Scalar& a0 : samples) {
    if (a0.is_zero()) throw Error("sl2 uniqueness samples must be nonzero");
    bool ok = true;
    for (long c = 1; c <= 3; ++c) {
      ModulePtr v = irrep(rd, Weight({c}));
      SparseMat x = half_twist_matrix(v);
      SparseMat ka = v->weight_diag([&](const Weight& w) { return a0.pow(w.coords[0]); });
      SparseMat xka = x * ka;
      if (!(xka * xka == x * x)) ok = false;
    }
    rep.sample_results.push_back({a0.str(), ok});
  }
  return rep;
}

}  // namespace halfrib
