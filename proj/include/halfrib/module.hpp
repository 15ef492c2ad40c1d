#pragma once
#include <memory>
#include <string>
#include <vector>

#include "halfrib/root_datum.hpp"
#include "halfrib/sparse.hpp"

namespace halfrib {

struct Module;
using ModulePtr = std::shared_ptr<const Module>;

// Finite-dimensional Type-1 module: weight-graded basis plus exact sparse
// generator matrices. K_mu never needs storing; it is diagonal with entries
// q^((mu, wt_b)) read off the grading. Immutable once built.
struct Module {
  const RootDatum* datum = nullptr;
  std::string label;
  std::vector<Weight> weights;               // per basis ordinal
  std::vector<SparseMat> e_action, f_action; // per node

  int dim() const { return static_cast<int>(weights.size()); }
  int root_order() const { return datum->L; }

  // diag q^(sign * (alpha_i, wt_b))
  SparseMat k_matrix(int node, int sign = 1) const;
  // diag of an arbitrary exact function of the basis weight
  template <typename F>
  SparseMat weight_diag(F&& f) const {
    std::vector<Scalar> d;
    d.reserve(weights.size());
    for (const Weight& w : weights) d.push_back(f(w));
    return SparseMat::diagonal(std::move(d));
  }

  bool is_trivial() const { return dim() == 1 && weights[0].is_zero(); }

  nlohmann::json to_json() const;
};

struct ModuleVec {
  ModulePtr module;
  SparseVec entries;
};

struct Intertwiner {
  ModulePtr source, target;
  SparseMat matrix;
};

ModulePtr trivial_module(const RootDatum& rd);

// k-th fundamental module of a type-A datum as the quantum wedge power of the
// standard representation: basis indexed by k-subsets, generator coefficients
// all 0 or 1. node is 0-based.
ModulePtr fundamental(const RootDatum& rd, int node);

// Irreducible module with dominant highest weight lam, realized inside a
// tensor product of fundamentals by breadth-first F-application from the top
// vector with exact rank bookkeeping. Dimension is asserted against the Weyl
// dimension formula. Memoized process-wide; optionally persisted under
// $HALFRIB_CACHE_DIR.
ModulePtr irrep(const RootDatum& rd, const Weight& lam);

ModulePtr tensor(const ModulePtr& a, const ModulePtr& b);

enum class DualSide { left, right };
ModulePtr dual(const ModulePtr& m, DualSide side);

// V^{C_t}: same space, generators conjugated through the half-twist
// automorphism E_i -> -F_theta(i), F_i -> -E_theta(i), K_i -> K_theta(i)^-1.
ModulePtr conjugation_twist(const ModulePtr& m);

// Joint kernel of all raising operators, organized by weight. Deterministic:
// weights in first-occurrence order, vectors in reduced echelon order with
// leading coefficient 1.
std::vector<ModuleVec> singular_vectors(const ModulePtr& m);

// Basis of the space of module maps a -> b (exact nullspace computation).
std::vector<Intertwiner> hom_space(const ModulePtr& a, const ModulePtr& b);

// Checks the defining relations as exact matrix identities; throws with a
// description on the first violation.
void verify_module_relations(const Module& m);

// F-generated submodule machinery, shared by irrep construction and the
// summand-decomposition route for the half twist.
struct GeneratedSubmodule {
  std::vector<SparseVec> basis;           // vectors in ambient coordinates
  std::vector<std::vector<int>> words;    // F-word producing each basis vector
  std::vector<Weight> basis_weights;
};
GeneratedSubmodule generate_submodule(const Module& ambient, const SparseVec& seed,
                                      const Weight& seed_weight);

// quantum integer [n], factorial and binomial in q_i = q^(d_i)
Scalar quantum_integer(long n, long d_i, int L);
Scalar quantum_factorial(long n, long d_i, int L);
Scalar quantum_binomial(long m, long k, long d_i, int L);

Scalar q_form_power(const RootDatum& rd, const mpq_class& exponent);  // q^exponent

}  // namespace halfrib
