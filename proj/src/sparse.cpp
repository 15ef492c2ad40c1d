#include "halfrib/sparse.hpp"

#include <algorithm>

#include "halfrib/errors.hpp"

namespace halfrib {

namespace {
const Scalar kZero;
}

SparseVec vec_add(const SparseVec& a, const SparseVec& b) {
  SparseVec r = a;
  for (const auto& [i, s] : b) {
    auto it = r.find(i);
    if (it == r.end()) {
      r[i] = s;
    } else {
      it->second += s;
      if (it->second.is_zero()) r.erase(it);
    }
  }
  return r;
}

SparseVec vec_scaled(const SparseVec& a, const Scalar& c) {
  SparseVec r;
  if (c.is_zero()) return r;
  for (const auto& [i, s] : a) r[i] = s * c;
  return r;
}

bool vec_is_zero(const SparseVec& a) { return a.empty(); }

SparseMat SparseMat::identity(int n) {
  SparseMat m(n, n);
  for (int i = 0; i < n; ++i) m.row_[i][i] = Scalar(1);
  return m;
}

SparseMat SparseMat::diagonal(std::vector<Scalar> entries) {
  SparseMat m(static_cast<int>(entries.size()), static_cast<int>(entries.size()));
  for (size_t i = 0; i < entries.size(); ++i)
    if (!entries[i].is_zero()) m.row_[i][static_cast<int>(i)] = std::move(entries[i]);
  return m;
}

SparseMat SparseMat::from_permutation(const std::vector<int>& image) {
  SparseMat m(static_cast<int>(image.size()), static_cast<int>(image.size()));
  for (size_t j = 0; j < image.size(); ++j) m.row_[image[j]][static_cast<int>(j)] = Scalar(1);
  return m;
}

const Scalar& SparseMat::at(int r, int c) const {
  auto it = row_[r].find(c);
  return it == row_[r].end() ? kZero : it->second;
}

void SparseMat::set(int r, int c, const Scalar& val) {
  if (val.is_zero())
    row_[r].erase(c);
  else
    row_[r][c] = val;
}

void SparseMat::add_to(int r, int c, const Scalar& val) {
  auto it = row_[r].find(c);
  if (it == row_[r].end()) {
    if (!val.is_zero()) row_[r][c] = val;
  } else {
    it->second += val;
    if (it->second.is_zero()) row_[r].erase(it);
  }
}

bool SparseMat::is_zero() const {
  return std::all_of(row_.begin(), row_.end(), [](const auto& r) { return r.empty(); });
}

int SparseMat::nnz() const {
  int n = 0;
  for (const auto& r : row_) n += static_cast<int>(r.size());
  return n;
}

SparseMat SparseMat::operator-() const {
  SparseMat m(rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (const auto& [c, s] : row_[r]) m.row_[r][c] = -s;
  return m;
}

SparseMat operator+(const SparseMat& a, const SparseMat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("matrix shape mismatch in +");
  SparseMat m = a;
  for (int r = 0; r < b.rows_; ++r)
    for (const auto& [c, s] : b.row_[r]) m.add_to(r, c, s);
  return m;
}

SparseMat operator-(const SparseMat& a, const SparseMat& b) { return a + (-b); }

SparseMat operator*(const SparseMat& a, const SparseMat& b) {
  if (a.cols_ != b.rows_) throw Error("matrix shape mismatch in *");
  SparseMat m(a.rows_, b.cols_);
  for (int r = 0; r < a.rows_; ++r)
    for (const auto& [k, s] : a.row_[r])
      for (const auto& [c, t] : b.row_[k]) m.add_to(r, c, s * t);
  return m;
}

SparseMat SparseMat::scaled(const Scalar& c) const {
  SparseMat m(rows_, cols_);
  if (c.is_zero()) return m;
  for (int r = 0; r < rows_; ++r)
    for (const auto& [col, s] : row_[r]) m.row_[r][col] = s * c;
  return m;
}

SparseMat SparseMat::transpose() const {
  SparseMat m(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (const auto& [c, s] : row_[r]) m.row_[c][r] = s;
  return m;
}

SparseMat SparseMat::pow(long k) const {
  if (rows_ != cols_) throw Error("pow of non-square matrix");
  SparseMat acc = identity(rows_);
  SparseMat base = *this;
  for (long e = k; e > 0; e >>= 1) {
    if (e & 1) acc = acc * base;
    base = base * base;
  }
  return acc;
}

SparseVec SparseMat::apply(const SparseVec& v) const {
  SparseVec out;
  for (int r = 0; r < rows_; ++r) {
    Scalar acc;
    bool any = false;
    for (const auto& [c, s] : row_[r]) {
      auto it = v.find(c);
      if (it != v.end()) {
        acc += s * it->second;
        any = true;
      }
    }
    if (any && !acc.is_zero()) out[r] = acc;
  }
  return out;
}

SparseMat kron(const SparseMat& a, const SparseMat& b) {
  SparseMat m(a.rows_ * b.rows_, a.cols_ * b.cols_);
  for (int ra = 0; ra < a.rows_; ++ra)
    for (const auto& [ca, sa] : a.row_[ra])
      for (int rb = 0; rb < b.rows_; ++rb)
        for (const auto& [cb, sb] : b.row_[rb])
          m.row_[ra * b.rows_ + rb][ca * b.cols_ + cb] = sa * sb;
  return m;
}

SparseMat SparseMat::inverse() const {
  if (rows_ != cols_) throw Error("inverse of non-square matrix");
  int n = rows_;
  std::vector<SparseVec> m(n), inv(n);
  for (int r = 0; r < n; ++r) {
    for (const auto& [c, s] : row_[r]) m[r][c] = s;
    inv[r][r] = Scalar(1);
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (m[r].count(col)) {
        piv = r;
        break;
      }
    if (piv < 0) throw Error("singular matrix");
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    Scalar p = m[col][col];
    if (!p.is_one()) {
      Scalar pi = p.inverse();
      m[col] = vec_scaled(m[col], pi);
      inv[col] = vec_scaled(inv[col], pi);
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      auto it = m[r].find(col);
      if (it == m[r].end()) continue;
      Scalar f = -it->second;
      m[r] = vec_add(m[r], vec_scaled(m[col], f));
      inv[r] = vec_add(inv[r], vec_scaled(inv[col], f));
    }
  }
  SparseMat out(n, n);
  for (int r = 0; r < n; ++r)
    for (const auto& [c, s] : inv[r]) out.row_[r][c] = s;
  return out;
}

bool operator==(const SparseMat& a, const SparseMat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  return a.row_ == b.row_;
}

bool SparseMat::commutes_with(const SparseMat& other) const {
  return (*this) * other == other * (*this);
}

bool SparseMat::is_scalar_multiple_of_identity(Scalar* value) const {
  if (rows_ != cols_ || rows_ == 0) return false;
  Scalar diag = at(0, 0);
  for (int r = 0; r < rows_; ++r) {
    if (row_[r].size() > 1) return false;
    if (row_[r].size() == 1 && row_[r].begin()->first != r) return false;
    if (at(r, r) != diag) return false;
  }
  if (value) *value = diag;
  return true;
}

nlohmann::json SparseMat::to_json(int ambient_L) const {
  nlohmann::json entries = nlohmann::json::array();
  for (int r = 0; r < rows_; ++r)
    for (const auto& [c, s] : row_[r])
      entries.push_back(nlohmann::json::array({r, c, s.to_json(ambient_L)}));
  return nlohmann::json{{"rows", rows_}, {"cols", cols_}, {"entries", entries}};
}

SparseMat SparseMat::from_json(const nlohmann::json& j) {
  SparseMat m(j.at("rows").get<int>(), j.at("cols").get<int>());
  for (const auto& e : j.at("entries"))
    m.set(e.at(0).get<int>(), e.at(1).get<int>(), Scalar::from_json(e.at(2)));
  return m;
}

bool SpanSolver::insert(const SparseVec& v) {
  SparseVec vec = v;
  SparseVec combo;
  combo[count_] = Scalar(1);
  for (const Row& row : rows_) {
    auto it = vec.find(row.pivot);
    if (it == vec.end()) continue;
    Scalar f = -it->second;
    vec = vec_add(vec, vec_scaled(row.vec, f));
    combo = vec_add(combo, vec_scaled(row.combo, f));
  }
  ++count_;  // generator index consumed even if dependent, so combos reference insert order
  if (vec.empty()) {
    --count_;
    return false;
  }
  int pivot = vec.begin()->first;
  Scalar lead_inv = vec.begin()->second.inverse();
  rows_.push_back(Row{vec_scaled(vec, lead_inv), vec_scaled(combo, lead_inv), pivot});
  return true;
}

std::optional<SparseVec> SpanSolver::express(const SparseVec& v) const {
  SparseVec vec = v;
  SparseVec combo;
  for (const Row& row : rows_) {
    auto it = vec.find(row.pivot);
    if (it == vec.end()) continue;
    Scalar f = it->second;
    vec = vec_add(vec, vec_scaled(row.vec, -f));
    combo = vec_add(combo, vec_scaled(row.combo, f));
  }
  if (!vec.empty()) return std::nullopt;
  return combo;
}

std::vector<SparseVec> nullspace(std::vector<SparseVec> rows, int cols) {
  // reduced row echelon with pivot bookkeeping
  std::vector<int> pivot_of_row;
  std::vector<SparseVec> echelon;
  for (SparseVec& r : rows) {
    for (size_t k = 0; k < echelon.size(); ++k) {
      auto it = r.find(pivot_of_row[k]);
      if (it != r.end()) r = vec_add(r, vec_scaled(echelon[k], -it->second));
    }
    if (r.empty()) continue;
    int piv = r.begin()->first;
    SparseVec nr = vec_scaled(r, r.begin()->second.inverse());
    for (size_t k = 0; k < echelon.size(); ++k) {
      auto it = echelon[k].find(piv);
      if (it != echelon[k].end()) echelon[k] = vec_add(echelon[k], vec_scaled(nr, -it->second));
    }
    echelon.push_back(nr);
    pivot_of_row.push_back(piv);
  }
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivot_of_row) is_pivot[p] = true;
  std::vector<SparseVec> basis;
  for (int j = 0; j < cols; ++j) {
    if (is_pivot[j]) continue;
    SparseVec v;
    v[j] = Scalar(1);
    for (size_t k = 0; k < echelon.size(); ++k) {
      auto it = echelon[k].find(j);
      if (it != echelon[k].end()) v[pivot_of_row[k]] = -it->second;
    }
    basis.push_back(vec_scaled(v, v.begin()->second.inverse()));
  }
  return basis;
}

}  // namespace halfrib
