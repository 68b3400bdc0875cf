#pragma once

// Exact integer matrix algebra: Smith and Hermite normal forms, integer
// kernels, cokernels and linear solving. Every entry is a GMP integer.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace glattice {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_columns(const std::vector<IntVector>& columns, std::size_t rows);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const;
  IntVector column(std::size_t j) const;
  void set_column(std::size_t j, const IntVector& v);

  IntMatrix transpose() const;
  IntMatrix select_columns(const std::vector<std::size_t>& idx) const;
  IntMatrix select_rows(const std::vector<std::size_t>& idx) const;
  IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const IntMatrix& b);

  bool is_zero() const;
  bool is_identity() const;
  bool is_diagonal() const;
  // Every entry is 0 or 1 with exactly one 1 in each row and each column.
  bool is_permutation() const;
  Integer max_abs() const;

  std::string to_string() const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntVector operator*(const IntMatrix& a, const IntVector& v);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  IntMatrix operator-() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b);
IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b);

bool is_zero_vector(const IntVector& v);

struct SmithDecomposition {
  IntMatrix u;  // rows x rows, unimodular
  IntMatrix s;  // rows x cols, diagonal with d_i | d_{i+1}
  IntMatrix v;  // cols x cols, unimodular
  std::vector<Integer> diagonal() const;
  std::size_t rank() const;
};

// u * a * v == s. Pivot choice: smallest nonzero absolute value, ties broken
// in row-major order, so the result is a deterministic function of a.
SmithDecomposition smith(const IntMatrix& a);

// Nonzero diagonal entries of the Smith form, computed without transforms.
std::vector<Integer> elementary_divisors(const IntMatrix& a);

struct Echelon {
  IntMatrix h;                      // row echelon form of the input
  IntMatrix u;                      // unimodular, u * input == h
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row of h
  std::size_t rank() const { return pivots.size(); }
};

// Row echelon form by unimodular row operations. With reduce_above the
// result is the row Hermite normal form (positive pivots, entries above a
// pivot in [0, pivot)).
Echelon row_echelon(const IntMatrix& a, bool track_transform = true, bool reduce_above = true);

// Canonical row Hermite form of the row lattice of a, zero rows dropped.
IntMatrix row_hermite(const IntMatrix& a);
// Canonical column Hermite form of the column lattice of a, zero columns dropped.
IntMatrix column_hermite(const IntMatrix& a);

// Saturated basis (as columns, column Hermite form) of {x : a x = 0}.
IntMatrix kernel_basis(const IntMatrix& a);

struct CokernelInvariants {
  std::vector<Integer> torsion;  // invariant factors > 1, divisibility chain
  std::size_t free_rank = 0;
  bool trivial() const { return torsion.empty() && free_rank == 0; }
};

// Structure of Z^rows / column-span(a).
CokernelInvariants cokernel_invariants(const IntMatrix& a);

std::size_t rank(const IntMatrix& a);
Integer determinant(const IntMatrix& a);
bool is_unimodular(const IntMatrix& a);

// Integer solving against a fixed matrix, reusable for many right-hand sides.
class LinearSolver {
 public:
  explicit LinearSolver(const IntMatrix& a);
  // Some x with a x == b, or nullopt when no integer solution exists.
  // Throws std::invalid_argument on a length mismatch.
  std::optional<IntVector> solve(const IntVector& b) const;
  std::size_t rank() const { return ech_.rank(); }
  // A basis (as columns, not reduced) of {x : a x = 0}.
  IntMatrix kernel() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Echelon ech_;  // echelon of a^T
};

std::optional<IntVector> solve(const IntMatrix& a, const IntVector& b);

// Solves a x = B column by column; nullopt if any column has no solution.
std::optional<IntMatrix> solve_columns(const IntMatrix& a, const IntMatrix& b);

// For a saturated full-column-rank b, an integer l with l * b == identity.
// nullopt when b does not have saturated full column rank.
std::optional<IntMatrix> left_inverse(const IntMatrix& b);

// Inverse of a unimodular matrix; nullopt otherwise.
std::optional<IntMatrix> inverse_unimodular(const IntMatrix& a);

// Column lattices compared through their canonical Hermite forms.
bool same_column_lattice(const IntMatrix& a, const IntMatrix& b);
// Column span of a is saturated in Z^rows.
bool is_saturated(const IntMatrix& a);

// LLL-reduced basis (delta = 3/4) of the lattice spanned by the linearly
// independent columns of basis.
IntMatrix lll_reduce(const IntMatrix& basis);
// v minus a nearby vector of the column lattice of an LLL-reduced basis
// (nearest-plane rounding). The result differs from v by a lattice vector.
IntVector reduce_against(const IntVector& v, const IntMatrix& reduced);
// reduce_against applied to every column of m.
IntMatrix reduce_columns_against(const IntMatrix& m, const IntMatrix& reduced);

}  // namespace glattice
