#pragma once
#include <map>
#include <optional>
#include <vector>

#include "halfrib/scalar.hpp"

namespace halfrib {

using SparseVec = std::map<int, Scalar>;  // index -> nonzero entry

SparseVec vec_add(const SparseVec& a, const SparseVec& b);
SparseVec vec_scaled(const SparseVec& a, const Scalar& c);
bool vec_is_zero(const SparseVec& a);

// Sparse matrix over the exact scalar field, stored row-wise.
class SparseMat {
 public:
  SparseMat() = default;
  SparseMat(int rows, int cols) : rows_(rows), cols_(cols), row_(rows) {}
  static SparseMat identity(int n);
  static SparseMat diagonal(std::vector<Scalar> entries);
  static SparseMat from_permutation(const std::vector<int>& image);  // e_j -> e_image[j]

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  const Scalar& at(int r, int c) const;  // zero when absent
  void set(int r, int c, const Scalar& val);
  void add_to(int r, int c, const Scalar& val);
  const std::map<int, Scalar>& row(int r) const { return row_[r]; }

  bool is_zero() const;
  int nnz() const;

  SparseMat operator-() const;
  friend SparseMat operator+(const SparseMat& a, const SparseMat& b);
  friend SparseMat operator-(const SparseMat& a, const SparseMat& b);
  friend SparseMat operator*(const SparseMat& a, const SparseMat& b);
  SparseMat scaled(const Scalar& c) const;
  SparseMat transpose() const;
  SparseMat pow(long k) const;  // square matrices, k >= 0

  SparseVec apply(const SparseVec& v) const;

  // Kronecker product in row-major pair order: (r1,r2) -> r1*b.rows + r2.
  friend SparseMat kron(const SparseMat& a, const SparseMat& b);

  SparseMat inverse() const;  // exact Gauss-Jordan; throws on singular input

  friend bool operator==(const SparseMat& a, const SparseMat& b);
  friend bool operator!=(const SparseMat& a, const SparseMat& b) { return !(a == b); }

  bool commutes_with(const SparseMat& other) const;
  bool is_scalar_multiple_of_identity(Scalar* value = nullptr) const;

  nlohmann::json to_json(int ambient_L = 0) const;
  static SparseMat from_json(const nlohmann::json& j);

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<std::map<int, Scalar>> row_;
};

// Incremental exact row reduction with combination tracking: membership tests
// for growing spans, and expression of vectors over the inserted generators.
class SpanSolver {
 public:
  explicit SpanSolver(int ambient_dim) : ambient_(ambient_dim) {}

  // Returns true (and keeps the vector as a new generator) iff independent
  // from everything inserted so far.
  bool insert(const SparseVec& v);

  // Coefficients c with v = sum_k c[k] * generator_k, or nullopt if outside.
  std::optional<SparseVec> express(const SparseVec& v) const;

  int size() const { return count_; }

 private:
  struct Row {
    SparseVec vec;    // reduced, leading entry 1
    SparseVec combo;  // same vector written over the inserted generators
    int pivot;
  };
  int ambient_;
  int count_ = 0;
  std::vector<Row> rows_;
};

// Kernel basis of the linear map with the given rows (each row is one linear
// functional on coordinates 0..cols-1). Deterministic reduced echelon form,
// one kernel vector per free column, normalized to leading coefficient 1.
std::vector<SparseVec> nullspace(std::vector<SparseVec> rows, int cols);

}  // namespace halfrib
