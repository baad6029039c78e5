#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

// Exact integer linear algebra: Smith normal form, saturated kernel
// lattices, primitivity, and the F2 parity solve behind the delta
// computation.  Everything here is arbitrary precision; no rounding.

namespace toric {

using Int = boost::multiprecision::cpp_int;
using IntVector = std::vector<Int>;

class IntegerMatrix {
 public:
  IntegerMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0)
      throw std::invalid_argument("IntegerMatrix: dimensions must be >= 1");
  }

  static IntegerMatrix identity(std::size_t n);

  // Rows are the given vectors.
  static IntegerMatrix from_rows(const std::vector<IntVector>& rows);
  // Columns are the given vectors.
  static IntegerMatrix from_columns(const std::vector<IntVector>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Int& at(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;

  IntegerMatrix operator*(const IntegerMatrix& rhs) const;
  bool operator==(const IntegerMatrix& rhs) const = default;

  IntVector apply(const IntVector& v) const;  // matrix * column vector

  // Fraction-free Gaussian elimination (Bareiss); square matrices only.
  Int determinant() const;

  std::size_t rank() const;

 private:
  std::size_t rows_, cols_;
  std::vector<Int> data_;
};

// U * A * V = D with U, V unimodular and D diagonal, d_i >= 0,
// d_i | d_{i+1}.
struct SmithDecomposition {
  IntegerMatrix U;
  IntegerMatrix D;
  IntegerMatrix V;

  std::size_t diagonal_rank() const;
};

// Deterministic: pivot is the smallest-absolute-value nonzero entry,
// ties broken by lowest (row, col).
SmithDecomposition smith_normal_form(const IntegerMatrix& A);

// A saturated basis of a sublattice of Z^ambient_dim: the vectors are
// Q-linearly independent and span exactly (Q-span) intersect Z^ambient.
struct LatticeBasis {
  std::size_t ambient_dim = 0;
  std::vector<IntVector> vectors;

  std::size_t rank() const { return vectors.size(); }
  bool empty() const { return vectors.empty(); }

  // True iff the vector is an integer combination of the basis.
  bool contains(const IntVector& v) const;

  // SNF invariant factors of the basis matrix all equal 1.
  bool is_saturated() const;
};

// Saturated basis of {v in Z^cols : A v = 0}.
LatticeBasis kernel_lattice(const IntegerMatrix& A);

Int content(const IntVector& v);  // gcd of entries, >= 0

// gcd of entries is 1.  Throws on the zero vector.
bool is_primitive(const IntVector& v);

// Some lattice member with every coordinate odd, if one exists: solve
// sum x_i b_i = (1,...,1) over F2 and lift the 0/1 solution to Z.  The
// witness is re-verified before returning.
std::optional<IntVector> f2_all_odd_member(const LatticeBasis& basis);

}  // namespace toric
