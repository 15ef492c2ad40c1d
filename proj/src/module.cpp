#include "halfrib/module.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <shared_mutex>

#include "halfrib/errors.hpp"

namespace halfrib {

namespace {

// Process-wide module registry keyed by datum/label. Insertions are
// serialized; lookups take the shared lock.
class ModuleCache {
 public:
  ModulePtr find(const std::string& key) const {
    std::shared_lock lock(mu_);
    auto it = map_.find(key);
    return it == map_.end() ? nullptr : it->second;
  }
  ModulePtr put(const std::string& key, ModulePtr m) {
    std::unique_lock lock(mu_);
    auto [it, _] = map_.emplace(key, std::move(m));
    return it->second;
  }
  static ModuleCache& instance() {
    static ModuleCache c;
    return c;
  }

 private:
  mutable std::shared_mutex mu_;
  std::map<std::string, ModulePtr> map_;
};

std::string cache_key(const RootDatum& rd, const std::string& label) {
  return rd.key() + "/" + label;
}

ModulePtr intern(const RootDatum& rd, Module&& m) {
  std::string key = cache_key(rd, m.label);
  if (ModulePtr hit = ModuleCache::instance().find(key)) return hit;
  return ModuleCache::instance().put(key, std::make_shared<Module>(std::move(m)));
}

}  // namespace

SparseMat Module::k_matrix(int node, int sign) const {
  const RootDatum& rd = *datum;
  Weight alpha = rd.simple_root(node);
  return weight_diag([&](const Weight& w) {
    return Scalar::q_power(rd.form(alpha, w) * sign, rd.L);
  });
}

Scalar q_form_power(const RootDatum& rd, const mpq_class& exponent) {
  return Scalar::q_power(exponent, rd.L);
}

Scalar quantum_integer(long n, long d_i, int L) {
  // [n] = (q_i^n - q_i^-n) / (q_i - q_i^-1), a Laurent polynomial
  Scalar acc;
  long sign = n < 0 ? -1 : 1;  // [-n] = -[n]
  long m = n < 0 ? -n : n;
  for (long k = 0; k < m; ++k)
    acc += Scalar::v_power(static_cast<long>(L) * d_i * (m - 1 - 2 * k), L);
  return acc * Scalar(sign);
}

Scalar quantum_factorial(long n, long d_i, int L) {
  Scalar acc(1);
  for (long k = 2; k <= n; ++k) acc *= quantum_integer(k, d_i, L);
  return acc;
}

Scalar quantum_binomial(long m, long k, long d_i, int L) {
  if (k < 0 || k > m) return Scalar(0);
  return quantum_factorial(m, d_i, L) /
         (quantum_factorial(k, d_i, L) * quantum_factorial(m - k, d_i, L));
}

nlohmann::json Module::to_json() const {
  nlohmann::json j;
  j["datum"] = datum->key();
  j["label"] = label;
  nlohmann::json ws = nlohmann::json::array();
  for (const Weight& w : weights) ws.push_back(w.coords);
  j["weights"] = ws;
  nlohmann::json es = nlohmann::json::array(), fs = nlohmann::json::array();
  for (const auto& m : e_action) es.push_back(m.to_json(datum->L));
  for (const auto& m : f_action) fs.push_back(m.to_json(datum->L));
  j["e"] = es;
  j["f"] = fs;
  return j;
}

ModulePtr trivial_module(const RootDatum& rd) {
  if (ModulePtr hit = ModuleCache::instance().find(cache_key(rd, "1"))) return hit;
  Module m;
  m.datum = &rd;
  m.label = "1";
  m.weights = {Weight::zero(rd.rank)};
  m.e_action.assign(rd.rank, SparseMat(1, 1));
  m.f_action.assign(rd.rank, SparseMat(1, 1));
  return intern(rd, std::move(m));
}

ModulePtr fundamental(const RootDatum& rd, int node) {
  if (rd.type != 'A') throw Error("fundamental modules are realized for type A only");
  if (node < 0 || node >= rd.rank) throw Error("fundamental node out of range");
  std::string label = "f" + std::to_string(node + 1);
  if (ModulePtr hit = ModuleCache::instance().find(cache_key(rd, label))) return hit;

  int n = rd.rank + 1;      // letters 1..n
  int k = node + 1;         // wedge degree
  // epsilon_j = w_j - w_{j-1} with w_0 = w_n = 0
  std::vector<Weight> eps(n + 1, Weight::zero(rd.rank));
  for (int j = 1; j <= n; ++j) {
    Weight w = Weight::zero(rd.rank);
    if (j <= rd.rank) w.coords[j - 1] += 1;
    if (j - 2 >= 0 && j - 2 < rd.rank) w.coords[j - 2] -= 1;
    eps[j] = w;
  }

  // k-subsets of {1..n} in lexicographic order
  std::vector<std::vector<int>> subsets;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      subsets.push_back(cur);
      return;
    }
    for (int j = start; j <= n; ++j) {
      cur.push_back(j);
      rec(j + 1);
      cur.pop_back();
    }
  };
  rec(1);

  std::map<std::vector<int>, int> index;
  for (size_t s = 0; s < subsets.size(); ++s) index[subsets[s]] = static_cast<int>(s);

  Module m;
  m.datum = &rd;
  m.label = label;
  for (const auto& s : subsets) {
    Weight w = Weight::zero(rd.rank);
    for (int j : s) w = w + eps[j];
    m.weights.push_back(w);
  }
  int dim = static_cast<int>(subsets.size());
  m.e_action.assign(rd.rank, SparseMat(dim, dim));
  m.f_action.assign(rd.rank, SparseMat(dim, dim));
  for (int s = 0; s < dim; ++s) {
    const auto& sub = subsets[s];
    for (int i = 1; i <= rd.rank; ++i) {
      bool has_i = std::binary_search(sub.begin(), sub.end(), i);
      bool has_i1 = std::binary_search(sub.begin(), sub.end(), i + 1);
      if (has_i1 && !has_i) {  // E_i: replace i+1 by i
        std::vector<int> t = sub;
        *std::find(t.begin(), t.end(), i + 1) = i;
        std::sort(t.begin(), t.end());
        m.e_action[i - 1].set(index.at(t), s, Scalar(1));
      }
      if (has_i && !has_i1) {  // F_i: replace i by i+1
        std::vector<int> t = sub;
        *std::find(t.begin(), t.end(), i) = i + 1;
        std::sort(t.begin(), t.end());
        m.f_action[i - 1].set(index.at(t), s, Scalar(1));
      }
    }
  }
  return intern(rd, std::move(m));
}

GeneratedSubmodule generate_submodule(const Module& ambient, const SparseVec& seed,
                                      const Weight& seed_weight) {
  GeneratedSubmodule out;
  SpanSolver span(ambient.dim());
  if (!span.insert(seed)) throw Error("generate_submodule: zero seed");
  out.basis.push_back(seed);
  out.words.push_back({});
  out.basis_weights.push_back(seed_weight);
  const RootDatum& rd = *ambient.datum;
  for (size_t head = 0; head < out.basis.size(); ++head) {
    SparseVec u = out.basis[head];  // copy: the vector list grows below
    for (int i = 0; i < rd.rank; ++i) {
      SparseVec w = ambient.f_action[i].apply(u);
      if (w.empty()) continue;
      if (!span.insert(w)) continue;
      out.basis.push_back(w);
      std::vector<int> word = out.words[head];
      word.push_back(i);
      out.words.push_back(std::move(word));
      out.basis_weights.push_back(out.basis_weights[head] - rd.simple_root(i));
    }
  }
  return out;
}

namespace {

std::string weight_label(const Weight& w) {
  std::string s = "V(";
  for (size_t k = 0; k < w.coords.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(w.coords[k]);
  }
  return s + ")";
}

Module build_irrep(const RootDatum& rd, const Weight& lam) {
  std::vector<ModulePtr> factors;
  for (int i = 0; i < rd.rank; ++i)
    for (long c = 0; c < lam.coords[i]; ++c) factors.push_back(fundamental(rd, i));

  if (factors.empty()) {
    Module m = *trivial_module(rd);
    m.label = weight_label(lam);
    return m;
  }
  ModulePtr amb = factors[0];
  for (size_t k = 1; k < factors.size(); ++k) amb = tensor(amb, factors[k]);

  if (amb->weights[0] != lam) throw Error("irrep construction: ambient top weight mismatch");
  SparseVec top;
  top[0] = Scalar(1);
  GeneratedSubmodule gen = generate_submodule(*amb, top, lam);

  unsigned long expect = rd.weyl_dim(lam);
  if (gen.basis.size() != expect)
    throw Error("irrep dimension mismatch for " + weight_label(lam) + ": built " +
                std::to_string(gen.basis.size()) + ", Weyl formula gives " +
                std::to_string(expect));

  SpanSolver span(amb->dim());
  for (const auto& b : gen.basis) span.insert(b);

  Module m;
  m.datum = &rd;
  m.label = weight_label(lam);
  m.weights = gen.basis_weights;
  int dim = static_cast<int>(gen.basis.size());
  m.e_action.assign(rd.rank, SparseMat(dim, dim));
  m.f_action.assign(rd.rank, SparseMat(dim, dim));
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < rd.rank; ++i) {
      for (int which = 0; which < 2; ++which) {
        const SparseMat& act = which == 0 ? amb->e_action[i] : amb->f_action[i];
        SparseVec img = act.apply(gen.basis[j]);
        if (img.empty()) continue;
        auto coeffs = span.express(img);
        if (!coeffs) throw Error("irrep construction: generator image escapes the span");
        SparseMat& target = which == 0 ? m.e_action[i] : m.f_action[i];
        for (const auto& [kk, s] : *coeffs) target.set(kk, j, s);
      }
    }
  }
  return m;
}

std::filesystem::path irrep_cache_path(const RootDatum& rd, const Weight& lam,
                                       const std::string& dir) {
  std::string key = rd.key() + "/" + weight_label(lam);
  unsigned long long h = 1469598103934665603ull;  // FNV-1a
  for (char c : key) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  std::string coords;
  for (size_t k = 0; k < lam.coords.size(); ++k)
    coords += (k ? "-" : "") + std::to_string(lam.coords[k]);
  char hex[17];
  snprintf(hex, sizeof hex, "%016llx", h);
  return std::filesystem::path(dir) / (rd.key() + "_" + coords + "_" + hex + ".json");
}

Module module_from_json(const RootDatum& rd, const nlohmann::json& j) {
  Module m;
  m.datum = &rd;
  m.label = j.at("label").get<std::string>();
  for (const auto& w : j.at("weights")) m.weights.push_back(Weight(w.get<std::vector<long>>()));
  for (const auto& e : j.at("e")) m.e_action.push_back(SparseMat::from_json(e));
  for (const auto& f : j.at("f")) m.f_action.push_back(SparseMat::from_json(f));
  if (static_cast<int>(m.e_action.size()) != rd.rank || m.e_action.size() != m.f_action.size())
    throw Error("module JSON rank mismatch");
  return m;
}

}  // namespace

ModulePtr irrep(const RootDatum& rd, const Weight& lam) {
  if (static_cast<int>(lam.rank()) != rd.rank) throw Error("weight rank mismatch");
  if (!rd.dominant(lam)) throw Error("irrep requires a dominant weight, got " + lam.str());
  std::string label = weight_label(lam);
  if (ModulePtr hit = ModuleCache::instance().find(cache_key(rd, label))) return hit;

  const char* dir = std::getenv("HALFRIB_CACHE_DIR");
  if (dir && *dir) {
    std::filesystem::path path = irrep_cache_path(rd, lam, dir);
    std::error_code ec;
    if (std::filesystem::exists(path, ec)) {
      try {
        std::ifstream in(path);
        nlohmann::json j = nlohmann::json::parse(in);
        Module m = module_from_json(rd, j);
        if (m.label == label && m.weights.size() == rd.weyl_dim(lam))
          return intern(rd, std::move(m));
      } catch (const std::exception&) {
        // unreadable cache entry: rebuild and overwrite below
      }
    }
    Module m = build_irrep(rd, lam);
    try {
      std::filesystem::create_directories(dir, ec);
      std::filesystem::path tmp = path;
      tmp += ".tmp";
      {
        std::ofstream out(tmp);
        out << m.to_json().dump();
      }
      std::filesystem::rename(tmp, path, ec);
    } catch (const std::exception&) {
      // cache write failures are non-fatal
    }
    return intern(rd, std::move(m));
  }
  return intern(rd, build_irrep(rd, lam));
}

ModulePtr tensor(const ModulePtr& a, const ModulePtr& b) {
  if (a->datum != b->datum) throw Error("tensor of modules over different root data");
  const RootDatum& rd = *a->datum;
  std::string label = "ten(" + a->label + "," + b->label + ")";
  if (ModulePtr hit = ModuleCache::instance().find(cache_key(rd, label))) return hit;

  Module m;
  m.datum = &rd;
  m.label = label;
  m.weights.reserve(static_cast<size_t>(a->dim()) * b->dim());
  for (const Weight& wa : a->weights)
    for (const Weight& wb : b->weights) m.weights.push_back(wa + wb);
  SparseMat ia = SparseMat::identity(a->dim()), ib = SparseMat::identity(b->dim());
  for (int i = 0; i < rd.rank; ++i) {
    m.e_action.push_back(kron(a->e_action[i], b->k_matrix(i, 1)) + kron(ia, b->e_action[i]));
    m.f_action.push_back(kron(a->f_action[i], ib) + kron(a->k_matrix(i, -1), b->f_action[i]));
  }
  return intern(rd, std::move(m));
}

ModulePtr dual(const ModulePtr& mod, DualSide side) {
  const RootDatum& rd = *mod->datum;
  std::string label =
      (side == DualSide::left ? "dual(" : "rdual(") + mod->label + ")";
  if (ModulePtr hit = ModuleCache::instance().find(cache_key(rd, label))) return hit;

  Module m;
  m.datum = &rd;
  m.label = label;
  for (const Weight& w : mod->weights) m.weights.push_back(-w);
  for (int i = 0; i < rd.rank; ++i) {
    if (side == DualSide::left) {
      // S(E_i) = -E_i K_i^-1, S(F_i) = -K_i F_i
      m.e_action.push_back((-(mod->e_action[i] * mod->k_matrix(i, -1))).transpose());
      m.f_action.push_back((-(mod->k_matrix(i, 1) * mod->f_action[i])).transpose());
    } else {
      // S^-1(E_i) = -K_i^-1 E_i, S^-1(F_i) = -F_i K_i
      m.e_action.push_back((-(mod->k_matrix(i, -1) * mod->e_action[i])).transpose());
      m.f_action.push_back((-(mod->f_action[i] * mod->k_matrix(i, 1))).transpose());
    }
  }
  return intern(rd, std::move(m));
}

ModulePtr conjugation_twist(const ModulePtr& mod) {
  const RootDatum& rd = *mod->datum;
  std::string label = "tw(" + mod->label + ")";
  if (ModulePtr hit = ModuleCache::instance().find(cache_key(rd, label))) return hit;

  Module m;
  m.datum = &rd;
  m.label = label;
  for (const Weight& w : mod->weights) m.weights.push_back(rd.w0_action(w));
  m.e_action.resize(rd.rank);
  m.f_action.resize(rd.rank);
  for (int i = 0; i < rd.rank; ++i) {
    m.e_action[i] = -mod->f_action[rd.theta[i]];
    m.f_action[i] = -mod->e_action[rd.theta[i]];
  }
  return intern(rd, std::move(m));
}

std::vector<ModuleVec> singular_vectors(const ModulePtr& mod) {
  const RootDatum& rd = *mod->datum;
  std::vector<Weight> seen;
  std::vector<ModuleVec> out;
  for (int b = 0; b < mod->dim(); ++b) {
    const Weight& mu = mod->weights[b];
    if (std::find(seen.begin(), seen.end(), mu) != seen.end()) continue;
    seen.push_back(mu);
    std::vector<int> local;  // basis ordinals in this weight space
    for (int c = 0; c < mod->dim(); ++c)
      if (mod->weights[c] == mu) local.push_back(c);
    std::map<int, int> local_of;
    for (size_t k = 0; k < local.size(); ++k) local_of[local[k]] = static_cast<int>(k);

    std::vector<SparseVec> rows;
    for (int i = 0; i < rd.rank; ++i) {
      // rows of E_i restricted to columns in this weight space
      std::map<int, SparseVec> by_target;
      for (int c : local) {
        for (int r = 0; r < mod->dim(); ++r) {
          const Scalar& s = mod->e_action[i].at(r, c);
          if (!s.is_zero()) by_target[r][local_of[c]] = s;
        }
      }
      for (auto& [r, row] : by_target) rows.push_back(std::move(row));
    }
    for (const SparseVec& k : nullspace(rows, static_cast<int>(local.size()))) {
      ModuleVec mv;
      mv.module = mod;
      for (const auto& [li, s] : k) mv.entries[local[li]] = s;
      out.push_back(std::move(mv));
    }
  }
  return out;
}

std::vector<Intertwiner> hom_space(const ModulePtr& a, const ModulePtr& b) {
  if (a->datum != b->datum) throw Error("hom_space across different root data");
  const RootDatum& rd = *a->datum;
  // unknowns: entries Phi[t][s], nonzero only where weights match
  std::vector<std::pair<int, int>> vars;  // (t, s)
  for (int t = 0; t < b->dim(); ++t)
    for (int s = 0; s < a->dim(); ++s)
      if (b->weights[t] == a->weights[s]) vars.push_back({t, s});

  // Phi * X_a - X_b * Phi = 0; entry (r,c) gives one linear row:
  //   variable (t=r, s) enters with  X_a[s][c],
  //   variable (t, s=c) enters with -X_b[r][t].
  std::vector<SparseVec> rows;
  for (int i = 0; i < rd.rank; ++i) {
    for (int which = 0; which < 2; ++which) {
      const SparseMat& xa = which == 0 ? a->e_action[i] : a->f_action[i];
      const SparseMat& xb = which == 0 ? b->e_action[i] : b->f_action[i];
      SparseMat xbt = xb.transpose();
      std::map<std::pair<int, int>, SparseVec> row_map;
      for (size_t idx = 0; idx < vars.size(); ++idx) {
        auto [t, s] = vars[idx];
        for (const auto& [c, val] : xa.row(s)) {
          auto& row = row_map[{t, c}];
          auto it = row.find(static_cast<int>(idx));
          if (it == row.end())
            row[static_cast<int>(idx)] = val;
          else {
            it->second += val;
            if (it->second.is_zero()) row.erase(it);
          }
        }
        for (const auto& [r, val] : xbt.row(t)) {
          auto& row = row_map[{r, s}];
          auto it = row.find(static_cast<int>(idx));
          if (it == row.end())
            row[static_cast<int>(idx)] = -val;
          else {
            it->second -= val;
            if (it->second.is_zero()) row.erase(it);
          }
        }
      }
      for (auto& [rc, row] : row_map)
        if (!row.empty()) rows.push_back(std::move(row));
    }
  }

  std::vector<Intertwiner> out;
  for (const SparseVec& k : nullspace(std::move(rows), static_cast<int>(vars.size()))) {
    Intertwiner iw;
    iw.source = a;
    iw.target = b;
    iw.matrix = SparseMat(b->dim(), a->dim());
    for (const auto& [idx, s] : k) iw.matrix.set(vars[idx].first, vars[idx].second, s);
    out.push_back(std::move(iw));
  }
  return out;
}

void verify_module_relations(const Module& m) {
  const RootDatum& rd = *m.datum;
  int L = rd.L;
  for (int i = 0; i < rd.rank; ++i) {
    Weight alpha = rd.simple_root(i);
    for (int r = 0; r < m.dim(); ++r) {
      for (const auto& [c, s] : m.e_action[i].row(r)) {
        (void)s;
        if (m.weights[r] != m.weights[c] + alpha)
          throw Error(m.label + ": E_" + std::to_string(i + 1) + " breaks the weight grading");
      }
      for (const auto& [c, s] : m.f_action[i].row(r)) {
        (void)s;
        if (m.weights[r] != m.weights[c] - alpha)
          throw Error(m.label + ": F_" + std::to_string(i + 1) + " breaks the weight grading");
      }
    }
  }
  for (int i = 0; i < rd.rank; ++i) {
    for (int j = 0; j < rd.rank; ++j) {
      SparseMat comm = m.e_action[i] * m.f_action[j] - m.f_action[j] * m.e_action[i];
      if (i == j) {
        SparseMat rhs = m.weight_diag([&](const Weight& w) {
          return quantum_integer(rd.coroot_pairing(w, i), rd.d[i], L);
        });
        if (comm != rhs)
          throw Error(m.label + ": [E,F] relation fails at node " + std::to_string(i + 1));
      } else if (!comm.is_zero()) {
        throw Error(m.label + ": [E_i, F_j] nonzero for i != j");
      }
    }
  }
  for (int i = 0; i < rd.rank; ++i) {
    for (int j = 0; j < rd.rank; ++j) {
      if (i == j) continue;
      long mij = 1 - rd.cartan[i][j];
      for (int which = 0; which < 2; ++which) {
        const SparseMat& xi = which == 0 ? m.e_action[i] : m.f_action[i];
        const SparseMat& xj = which == 0 ? m.e_action[j] : m.f_action[j];
        SparseMat acc(m.dim(), m.dim());
        for (long k = 0; k <= mij; ++k) {
          Scalar coeff = quantum_binomial(mij, k, rd.d[i], L);
          if (k % 2 == 1) coeff = -coeff;
          acc = acc + (xi.pow(mij - k) * xj * xi.pow(k)).scaled(coeff);
        }
        if (!acc.is_zero())
          throw Error(m.label + ": quantum Serre relation fails for nodes " +
                      std::to_string(i + 1) + "," + std::to_string(j + 1));
      }
    }
  }
}

}  // namespace halfrib
