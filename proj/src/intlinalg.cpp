#include "intlinalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace glattice {

namespace {

using Rows = std::vector<IntVector>;

int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

Rows to_rows(const IntMatrix& a) {
  Rows r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) r[i] = a.row(i);
  return r;
}

IntMatrix from_row_vectors(const Rows& r, std::size_t first, std::size_t count, std::size_t cols) {
  IntMatrix m(count, cols);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = r[first + i][j];
  return m;
}

Rows identity_rows(std::size_t n) {
  Rows r(n, IntVector(n));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
  return r;
}

// row_i -= q * row_p, starting at column `from`.
void submul_row(IntVector& target, const Integer& q, const IntVector& source, std::size_t from = 0) {
  for (std::size_t k = from; k < source.size(); ++k)
    if (sgn(source[k]) != 0) mpz_submul(target[k].get_mpz_t(), q.get_mpz_t(), source[k].get_mpz_t());
}

void negate_row(IntVector& r) {
  for (auto& x : r) x = -x;
}

// Column j -= q * column i over rows [from, rows).
void submul_col(Rows& m, std::size_t j, const Integer& q, std::size_t i, std::size_t from = 0) {
  for (std::size_t k = from; k < m.size(); ++k)
    if (sgn(m[k][i]) != 0) mpz_submul(m[k][j].get_mpz_t(), q.get_mpz_t(), m[k][i].get_mpz_t());
}

void swap_cols(Rows& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (auto& r : m) std::swap(r[a], r[b]);
}

struct SmithWork {
  Rows s;
  Rows u;
  Rows v;
  bool track;
};

void smith_in_place(SmithWork& w, std::size_t rows, std::size_t cols) {
  Rows& s = w.s;
  Integer q;
  const std::size_t lim = std::min(rows, cols);
  for (std::size_t t = 0; t < lim; ++t) {
    // Pivot: smallest nonzero absolute value in the trailing block, row-major ties.
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (sgn(s[i][j]) != 0 && (pr == rows || cmpabs(s[i][j], s[pr][pc]) < 0)) {
          pr = i;
          pc = j;
        }
    if (pr == rows) break;
    if (pr != t) {
      std::swap(s[pr], s[t]);
      if (w.track) std::swap(w.u[pr], w.u[t]);
    }
    if (pc != t) {
      swap_cols(s, pc, t);
      if (w.track) swap_cols(w.v, pc, t);
    }
    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (sgn(s[i][t]) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), s[i][t].get_mpz_t(), s[t][t].get_mpz_t());
        submul_row(s[i], q, s[t], t);
        if (w.track) submul_row(w.u[i], q, w.u[t]);
        if (sgn(s[i][t]) != 0) dirty = true;
      }
      if (dirty) {
        std::size_t best = t;
        for (std::size_t i = t + 1; i < rows; ++i)
          if (sgn(s[i][t]) != 0 && cmpabs(s[i][t], s[best][t]) < 0) best = i;
        if (best != t) {
          std::swap(s[best], s[t]);
          if (w.track) std::swap(w.u[best], w.u[t]);
        }
        continue;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (sgn(s[t][j]) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), s[t][j].get_mpz_t(), s[t][t].get_mpz_t());
        submul_col(s, j, q, t, t);
        if (w.track) submul_col(w.v, j, q, t);
        if (sgn(s[t][j]) != 0) dirty = true;
      }
      if (dirty) {
        std::size_t best = t;
        for (std::size_t j = t + 1; j < cols; ++j)
          if (sgn(s[t][j]) != 0 && cmpabs(s[t][j], s[t][best]) < 0) best = j;
        if (best != t) {
          swap_cols(s, best, t);
          if (w.track) swap_cols(w.v, best, t);
        }
        continue;
      }
      // Divisibility: pull a non-divisible row into the pivot row and go again.
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(s[i][j].get_mpz_t(), s[t][t].get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      for (std::size_t k = t; k < cols; ++k) s[t][k] += s[bad][k];
      if (w.track)
        for (std::size_t k = 0; k < rows; ++k) w.u[t][k] += w.u[bad][k];
    }
    if (sgn(s[t][t]) < 0) {
      negate_row(s[t]);
      if (w.track) negate_row(w.u[t]);
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
    for (long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& columns, std::size_t rows) {
  IntMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw std::invalid_argument("IntMatrix::from_columns: length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("IntMatrix::from_rows: length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void IntMatrix::set_column(std::size_t j, const IntVector& v) {
  if (v.size() != rows_) throw std::invalid_argument("IntMatrix::set_column: length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::select_columns(const std::vector<std::size_t>& idx) const {
  IntMatrix m(rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
  return m;
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& idx) const {
  IntMatrix m(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
  return m;
}

IntMatrix IntMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("IntMatrix::block");
  IntMatrix m(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  return m;
}

void IntMatrix::set_block(std::size_t r0, std::size_t c0, const IntMatrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw std::out_of_range("IntMatrix::set_block");
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return sgn(x) == 0; });
}

bool IntMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && sgn((*this)(i, j)) != 0) return false;
  return true;
}

bool IntMatrix::is_permutation() const {
  if (rows_ != cols_) return false;
  std::vector<int> col_count(cols_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    int ones = 0;
    for (std::size_t j = 0; j < cols_; ++j) {
      const Integer& x = (*this)(i, j);
      if (x == 1) {
        ++ones;
        ++col_count[j];
      } else if (sgn(x) != 0) {
        return false;
      }
    }
    if (ones != 1) return false;
  }
  return std::all_of(col_count.begin(), col_count.end(), [](int c) { return c == 1; });
}

Integer IntMatrix::max_abs() const {
  Integer best = 0;
  for (const auto& x : data_)
    if (cmpabs(x, best) > 0) best = abs(x);
  return best;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("IntMatrix: product dimension mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& x = a(i, k);
      if (sgn(x) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Integer& y = b(k, j);
        if (sgn(y) != 0) mpz_addmul(c(i, j).get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
      }
    }
  return c;
}

IntVector operator*(const IntMatrix& a, const IntVector& v) {
  if (a.cols_ != v.size()) throw std::invalid_argument("IntMatrix: vector dimension mismatch");
  IntVector out(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k)
      if (sgn(a(i, k)) != 0 && sgn(v[k]) != 0) mpz_addmul(out[i].get_mpz_t(), a(i, k).get_mpz_t(), v[k].get_mpz_t());
  return out;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("IntMatrix: sum dimension mismatch");
  IntMatrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("IntMatrix: difference dimension mismatch");
  IntMatrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
  return c;
}

IntMatrix IntMatrix::operator-() const {
  IntMatrix c = *this;
  for (auto& x : c.data_) x = -x;
  return c;
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
  IntMatrix m(a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
  IntMatrix m(a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (sgn(a(i, j)) == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return m;
}

bool is_zero_vector(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return sgn(x) == 0; });
}

// ---------------------------------------------------------------------------
// Smith normal form

std::vector<Integer> SmithDecomposition::diagonal() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(s.rows(), s.cols()); ++i) d.push_back(s(i, i));
  return d;
}

std::size_t SmithDecomposition::rank() const {
  std::size_t r = 0;
  for (std::size_t i = 0; i < std::min(s.rows(), s.cols()); ++i)
    if (sgn(s(i, i)) != 0) ++r;
  return r;
}

SmithDecomposition smith(const IntMatrix& a) {
  SmithWork w{to_rows(a), identity_rows(a.rows()), identity_rows(a.cols()), true};
  smith_in_place(w, a.rows(), a.cols());
  return {from_row_vectors(w.u, 0, a.rows(), a.rows()), from_row_vectors(w.s, 0, a.rows(), a.cols()),
          from_row_vectors(w.v, 0, a.cols(), a.cols())};
}

std::vector<Integer> elementary_divisors(const IntMatrix& a) {
  // Reduce to a square-ish problem first: the row Hermite form has the same
  // elementary divisors and is usually much smaller.
  IntMatrix h = row_hermite(a.rows() >= a.cols() ? a : a.transpose());
  SmithWork w{to_rows(h), {}, {}, false};
  smith_in_place(w, h.rows(), h.cols());
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(h.rows(), h.cols()); ++i) d.push_back(w.s[i][i]);
  return d;
}

// ---------------------------------------------------------------------------
// Echelon and Hermite forms

Echelon row_echelon(const IntMatrix& a, bool track_transform, bool reduce_above) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  Rows h = to_rows(a);
  Rows u = track_transform ? identity_rows(m) : Rows{};
  std::vector<std::size_t> pivots;
  Integer q;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    for (;;) {
      std::size_t p = m;
      for (std::size_t i = r; i < m; ++i)
        if (sgn(h[i][c]) != 0 && (p == m || cmpabs(h[i][c], h[p][c]) < 0)) p = i;
      if (p == m) break;
      bool clean = true;
      for (std::size_t i = r; i < m; ++i) {
        if (i == p || sgn(h[i][c]) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), h[i][c].get_mpz_t(), h[p][c].get_mpz_t());
        submul_row(h[i], q, h[p], c);
        if (track_transform) submul_row(u[i], q, u[p]);
        if (sgn(h[i][c]) != 0) clean = false;
      }
      if (!clean) continue;
      if (p != r) {
        std::swap(h[p], h[r]);
        if (track_transform) std::swap(u[p], u[r]);
      }
      if (sgn(h[r][c]) < 0) {
        negate_row(h[r]);
        if (track_transform) negate_row(u[r]);
      }
      if (reduce_above) {
        for (std::size_t i = 0; i < r; ++i) {
          if (sgn(h[i][c]) == 0) continue;
          mpz_fdiv_q(q.get_mpz_t(), h[i][c].get_mpz_t(), h[r][c].get_mpz_t());
          if (sgn(q) == 0) continue;
          submul_row(h[i], q, h[r], c);
          if (track_transform) submul_row(u[i], q, u[r]);
        }
      }
      pivots.push_back(c);
      ++r;
      break;
    }
  }
  Echelon e;
  e.h = from_row_vectors(h, 0, m, n);
  if (track_transform) e.u = from_row_vectors(u, 0, m, m);
  e.pivots = std::move(pivots);
  return e;
}

IntMatrix row_hermite(const IntMatrix& a) {
  Echelon e = row_echelon(a, false, true);
  return e.h.block(0, 0, e.rank(), a.cols());
}

IntMatrix column_hermite(const IntMatrix& a) { return row_hermite(a.transpose()).transpose(); }

IntMatrix kernel_basis(const IntMatrix& a) {
  const std::size_t n = a.cols();
  if (n == 0) return IntMatrix(0, 0);
  Echelon e = row_echelon(a.transpose(), true, true);
  const std::size_t r = e.rank();
  if (r == n) return IntMatrix(n, 0);
  IntMatrix k = e.u.block(r, 0, n - r, n);
  return row_hermite(k).transpose();
}

CokernelInvariants cokernel_invariants(const IntMatrix& a) {
  CokernelInvariants out;
  std::size_t r = 0;
  if (!a.empty()) {
    for (const auto& d : elementary_divisors(a)) {
      if (sgn(d) == 0) continue;
      ++r;
      if (d > 1) out.torsion.push_back(d);
    }
  }
  out.free_rank = a.rows() - r;
  return out;
}

std::size_t rank(const IntMatrix& a) {
  if (a.empty()) return 0;
  return row_echelon(a, false, false).rank();
}

Integer determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  // Fraction-free Bareiss elimination.
  Rows m = to_rows(a);
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m[k][k]) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(m[p][k]) == 0) ++p;
      if (p == n) return 0;
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

bool is_unimodular(const IntMatrix& a) {
  if (a.rows() != a.cols()) return false;
  return abs(determinant(a)) == 1;
}

// ---------------------------------------------------------------------------
// Solving

LinearSolver::LinearSolver(const IntMatrix& a) : rows_(a.rows()), cols_(a.cols()) {
  ech_ = row_echelon(a.transpose(), true, false);
}

IntMatrix LinearSolver::kernel() const {
  std::vector<std::size_t> idx;
  for (std::size_t i = ech_.rank(); i < cols_; ++i) idx.push_back(i);
  return ech_.u.select_rows(idx).transpose();
}

std::optional<IntVector> LinearSolver::solve(const IntVector& b) const {
  if (b.size() != rows_) throw std::invalid_argument("solve: right-hand side length does not match matrix rows");
  // ech_.u * a^T == h, so a * u^T == h^T; solve h^T y == b by forward substitution.
  const IntMatrix& h = ech_.h;
  const std::size_t k = ech_.rank();
  IntVector y(cols_);
  Integer acc;
  for (std::size_t t = 0; t < k; ++t) {
    const std::size_t p = ech_.pivots[t];
    acc = b[p];
    for (std::size_t s = 0; s < t; ++s)
      if (sgn(h(s, p)) != 0) acc -= h(s, p) * y[s];
    if (!mpz_divisible_p(acc.get_mpz_t(), h(t, p).get_mpz_t())) return std::nullopt;
    mpz_divexact(y[t].get_mpz_t(), acc.get_mpz_t(), h(t, p).get_mpz_t());
  }
  // Check the non-pivot equations.
  for (std::size_t i = 0; i < rows_; ++i) {
    acc = 0;
    for (std::size_t t = 0; t < k; ++t)
      if (sgn(h(t, i)) != 0) acc += h(t, i) * y[t];
    if (acc != b[i]) return std::nullopt;
  }
  IntVector x(cols_);
  for (std::size_t t = 0; t < k; ++t) {
    if (sgn(y[t]) == 0) continue;
    for (std::size_t j = 0; j < cols_; ++j)
      if (sgn(ech_.u(t, j)) != 0) mpz_addmul(x[j].get_mpz_t(), y[t].get_mpz_t(), ech_.u(t, j).get_mpz_t());
  }
  return x;
}

std::optional<IntVector> solve(const IntMatrix& a, const IntVector& b) { return LinearSolver(a).solve(b); }

std::optional<IntMatrix> solve_columns(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve_columns: row mismatch");
  LinearSolver solver(a);
  IntMatrix x(a.cols(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    auto col = solver.solve(b.column(j));
    if (!col) return std::nullopt;
    x.set_column(j, *col);
  }
  return x;
}

std::optional<IntMatrix> left_inverse(const IntMatrix& b) {
  const std::size_t n = b.rows();
  const std::size_t k = b.cols();
  if (k == 0) return IntMatrix(0, n);
  if (k > n) return std::nullopt;
  Echelon e = row_echelon(b, true, true);
  if (e.rank() != k) return std::nullopt;
  for (std::size_t t = 0; t < k; ++t)
    if (e.pivots[t] != t || e.h(t, t) != 1) return std::nullopt;
  return e.u.block(0, 0, k, n);
}

std::optional<IntMatrix> inverse_unimodular(const IntMatrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  if (a.rows() == 0) return IntMatrix(0, 0);
  Echelon e = row_echelon(a, true, true);
  if (!e.h.is_identity()) return std::nullopt;
  return e.u;
}

bool same_column_lattice(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) return false;
  return column_hermite(a) == column_hermite(b);
}

bool is_saturated(const IntMatrix& a) {
  if (a.cols() == 0) return true;
  return cokernel_invariants(a).torsion.empty();
}

namespace {

using Rational = mpq_class;

Rational dot_q(const IntVector& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

Integer round_nearest(const Rational& q) {
  // floor(q + 1/2)
  Rational h = q + Rational(1, 2);
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
  return f;
}

struct GramSchmidt {
  std::vector<std::vector<Rational>> star;
  std::vector<Rational> norm;
};

GramSchmidt gram_schmidt(const std::vector<IntVector>& b) {
  GramSchmidt gs;
  for (const auto& v : b) {
    std::vector<Rational> w(v.begin(), v.end());
    for (std::size_t j = 0; j < gs.star.size(); ++j) {
      const Rational mu = dot_q(v, gs.star[j]) / gs.norm[j];
      if (mu == 0) continue;
      for (std::size_t i = 0; i < w.size(); ++i) w[i] -= mu * gs.star[j][i];
    }
    Rational n = 0;
    for (const auto& x : w) n += x * x;
    gs.star.push_back(std::move(w));
    gs.norm.push_back(n);
  }
  return gs;
}

}  // namespace

IntMatrix lll_reduce(const IntMatrix& basis) {
  const std::size_t n = basis.cols(), dim = basis.rows();
  std::vector<IntVector> b;
  for (std::size_t j = 0; j < n; ++j) b.push_back(basis.column(j));
  if (n <= 1) return basis;
  const Rational delta(3, 4);
  std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n));
  std::vector<std::vector<Rational>> star(n);
  std::vector<Rational> bn(n);
  auto compute_row = [&](std::size_t k) {
    std::vector<Rational> w(b[k].begin(), b[k].end());
    for (std::size_t j = 0; j < k; ++j) {
      mu[k][j] = dot_q(b[k], star[j]) / bn[j];
      if (mu[k][j] != 0)
        for (std::size_t i = 0; i < dim; ++i) w[i] -= mu[k][j] * star[j][i];
    }
    Rational s = 0;
    for (const auto& x : w) s += x * x;
    if (s == 0) throw std::invalid_argument("lll_reduce: columns are linearly dependent");
    star[k] = std::move(w);
    bn[k] = s;
  };
  auto red = [&](std::size_t k, std::size_t l) {
    if (abs(mu[k][l]) * 2 <= 1) return;
    const Integer q = round_nearest(mu[k][l]);
    for (std::size_t i = 0; i < dim; ++i)
      if (b[l][i] != 0) b[k][i] -= q * b[l][i];
    mu[k][l] -= q;
    for (std::size_t i = 0; i < l; ++i) mu[k][i] -= q * mu[l][i];
  };
  compute_row(0);
  std::size_t kmax = 0, k = 1;
  while (k < n) {
    if (k > kmax) {
      kmax = k;
      compute_row(k);
    }
    red(k, k - 1);
    if (bn[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * bn[k - 1]) {
      std::swap(b[k], b[k - 1]);
      for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu[k][j], mu[k - 1][j]);
      const Rational m = mu[k][k - 1];
      const Rational big = bn[k] + m * m * bn[k - 1];
      mu[k][k - 1] = m * bn[k - 1] / big;
      const std::vector<Rational>& old = star[k - 1];
      std::vector<Rational> ns(dim), nk(dim);
      const Rational ratio = bn[k] / big;
      for (std::size_t i = 0; i < dim; ++i) {
        ns[i] = star[k][i] + m * old[i];
        nk[i] = ratio * old[i] - mu[k][k - 1] * star[k][i];
      }
      star[k - 1] = std::move(ns);
      star[k] = std::move(nk);
      bn[k] = bn[k - 1] * bn[k] / big;
      bn[k - 1] = big;
      for (std::size_t i = k + 1; i <= kmax; ++i) {
        const Rational t = mu[i][k];
        mu[i][k] = mu[i][k - 1] - m * t;
        mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
      }
      if (k > 1) --k;
    } else {
      for (std::size_t l = k - 1; l-- > 0;) red(k, l);
      ++k;
    }
  }
  return IntMatrix::from_columns(b, dim);
}

namespace {

IntVector nearest_plane(IntVector w, const std::vector<IntVector>& b, const GramSchmidt& gs) {
  for (std::size_t j = b.size(); j-- > 0;) {
    if (gs.norm[j] == 0) continue;
    const Integer q = round_nearest(dot_q(w, gs.star[j]) / gs.norm[j]);
    if (q == 0) continue;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (b[j][i] != 0) w[i] -= q * b[j][i];
  }
  return w;
}

}  // namespace

IntMatrix reduce_columns_against(const IntMatrix& m, const IntMatrix& reduced) {
  if (m.rows() != reduced.rows()) throw std::invalid_argument("reduce_against: length mismatch");
  std::vector<IntVector> b;
  for (std::size_t j = 0; j < reduced.cols(); ++j) b.push_back(reduced.column(j));
  const GramSchmidt gs = gram_schmidt(b);
  IntMatrix out = m;
  for (std::size_t j = 0; j < m.cols(); ++j) out.set_column(j, nearest_plane(m.column(j), b, gs));
  return out;
}

IntVector reduce_against(const IntVector& v, const IntMatrix& reduced) {
  IntMatrix m(v.size(), 1);
  m.set_column(0, v);
  return reduce_columns_against(m, reduced).column(0);
}

}  // namespace glattice
