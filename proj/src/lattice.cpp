#include "toric/lattice.hpp"

#include <algorithm>
#include <cstdlib>

namespace toric {

namespace {

Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

Int gcd_int(Int a, Int b) {
  a = abs_int(a);
  b = abs_int(b);
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Floor division quotient, so the remainder has minimal magnitude bias
// toward zero is avoided; for SNF reduction any quotient works, we use
// round-toward-zero plus a correction step driven by the pivot search.
Int div_quot(const Int& a, const Int& b) { return a / b; }

}  // namespace

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix I(n, n);
  for (std::size_t i = 0; i < n; ++i) I.at(i, i) = 1;
  return I;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<IntVector>& rows) {
  if (rows.empty()) throw std::invalid_argument("from_rows: no rows");
  IntegerMatrix M(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != M.cols())
      throw std::invalid_argument("from_rows: ragged rows");
    for (std::size_t c = 0; c < M.cols(); ++c) M.at(r, c) = rows[r][c];
  }
  return M;
}

IntegerMatrix IntegerMatrix::from_columns(const std::vector<IntVector>& cols) {
  if (cols.empty()) throw std::invalid_argument("from_columns: no columns");
  IntegerMatrix M(cols.front().size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != M.rows())
      throw std::invalid_argument("from_columns: ragged columns");
    for (std::size_t r = 0; r < M.rows(); ++r) M.at(r, c) = cols[c][r];
  }
  return M;
}

IntVector IntegerMatrix::row(std::size_t r) const {
  IntVector v(cols_);
  for (std::size_t c = 0; c < cols_; ++c) v[c] = at(r, c);
  return v;
}

IntVector IntegerMatrix::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& rhs) const {
  if (cols_ != rhs.rows_)
    throw std::invalid_argument("matrix product: dimension mismatch");
  IntegerMatrix P(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j)
        P.at(i, j) += a * rhs.at(k, j);
    }
  return P;
}

IntVector IntegerMatrix::apply(const IntVector& v) const {
  if (v.size() != cols_)
    throw std::invalid_argument("matrix apply: dimension mismatch");
  IntVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += at(i, j) * v[j];
  return out;
}

Int IntegerMatrix::determinant() const {
  if (rows_ != cols_)
    throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = rows_;
  std::vector<Int> a(data_);
  auto e = [&](std::size_t r, std::size_t c) -> Int& { return a[r * n + c]; };
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (e(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && e(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(e(k, c), e(p, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        e(i, j) = (e(i, j) * e(k, k) - e(i, k) * e(k, j)) / prev;
    prev = e(k, k);
  }
  return sign > 0 ? e(n - 1, n - 1) : Int(-e(n - 1, n - 1));
}

std::size_t IntegerMatrix::rank() const {
  return smith_normal_form(*this).diagonal_rank();
}

std::size_t SmithDecomposition::diagonal_rank() const {
  std::size_t r = 0;
  const std::size_t m = std::min(D.rows(), D.cols());
  while (r < m && D.at(r, r) != 0) ++r;
  return r;
}

SmithDecomposition smith_normal_form(const IntegerMatrix& A) {
  const std::size_t m = A.rows(), n = A.cols();
  IntegerMatrix D = A;
  IntegerMatrix U = IntegerMatrix::identity(m);
  IntegerMatrix V = IntegerMatrix::identity(n);

  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < n; ++c) std::swap(D.at(a, c), D.at(b, c));
    for (std::size_t c = 0; c < m; ++c) std::swap(U.at(a, c), U.at(b, c));
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < m; ++r) std::swap(D.at(r, a), D.at(r, b));
    for (std::size_t r = 0; r < n; ++r) std::swap(V.at(r, a), V.at(r, b));
  };
  auto add_row = [&](std::size_t dst, std::size_t src, const Int& f) {
    // row dst += f * row src
    for (std::size_t c = 0; c < n; ++c) D.at(dst, c) += f * D.at(src, c);
    for (std::size_t c = 0; c < m; ++c) U.at(dst, c) += f * U.at(src, c);
  };
  auto add_col = [&](std::size_t dst, std::size_t src, const Int& f) {
    for (std::size_t r = 0; r < m; ++r) D.at(r, dst) += f * D.at(r, src);
    for (std::size_t r = 0; r < n; ++r) V.at(r, dst) += f * V.at(r, src);
  };
  auto negate_row = [&](std::size_t r) {
    for (std::size_t c = 0; c < n; ++c) D.at(r, c) = -D.at(r, c);
    for (std::size_t c = 0; c < m; ++c) U.at(r, c) = -U.at(r, c);
  };

  const std::size_t steps = std::min(m, n);
  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      // Pivot: smallest |entry| != 0 in the trailing block, lowest
      // (row, col) on ties.
      std::size_t pr = m, pc = n;
      Int best;
      for (std::size_t r = t; r < m; ++r)
        for (std::size_t c = t; c < n; ++c) {
          const Int& x = D.at(r, c);
          if (x == 0) continue;
          Int ax = abs_int(x);
          if (pr == m || ax < best) {
            best = ax;
            pr = r;
            pc = c;
          }
        }
      if (pr == m) break;  // trailing block is zero
      swap_rows(t, pr);
      swap_cols(t, pc);

      bool clean = true;
      for (std::size_t r = t + 1; r < m; ++r) {
        if (D.at(r, t) == 0) continue;
        Int q = div_quot(D.at(r, t), D.at(t, t));
        if (q != 0) add_row(r, t, -q);
        if (D.at(r, t) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < n; ++c) {
        if (D.at(t, c) == 0) continue;
        Int q = div_quot(D.at(t, c), D.at(t, t));
        if (q != 0) add_col(c, t, -q);
        if (D.at(t, c) != 0) clean = false;
      }
      if (!clean) continue;  // a smaller remainder exists; re-pick pivot

      // Pivot must divide every trailing entry for the divisibility
      // chain; fold an offending row in and reduce again.
      bool divides_all = true;
      for (std::size_t r = t + 1; r < m && divides_all; ++r)
        for (std::size_t c = t + 1; c < n; ++c)
          if (D.at(r, c) % D.at(t, t) != 0) {
            add_row(t, r, 1);
            divides_all = false;
            break;
          }
      if (divides_all) break;
    }
    if (D.at(t, t) < 0) negate_row(t);
  }
  return SmithDecomposition{std::move(U), std::move(D), std::move(V)};
}

bool LatticeBasis::contains(const IntVector& v) const {
  if (v.size() != ambient_dim)
    throw std::invalid_argument("LatticeBasis::contains: dimension mismatch");
  if (vectors.empty())
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
  // Solve B x = v over Z where columns of B are the basis vectors:
  // with SNF U B V = D, B x = v  <=>  D (V^-1 x) = U v, so v is in the
  // lattice iff (U v)_i is divisible by d_i for i < rank and zero after.
  IntegerMatrix B = IntegerMatrix::from_columns(vectors);
  SmithDecomposition snf = smith_normal_form(B);
  IntVector w = snf.U.apply(v);
  const std::size_t r = snf.diagonal_rank();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i < r) {
      if (w[i] % snf.D.at(i, i) != 0) return false;
    } else if (w[i] != 0) {
      return false;
    }
  }
  return true;
}

bool LatticeBasis::is_saturated() const {
  if (vectors.empty()) return true;
  IntegerMatrix B = IntegerMatrix::from_columns(vectors);
  SmithDecomposition snf = smith_normal_form(B);
  if (snf.diagonal_rank() != vectors.size()) return false;  // dependent
  for (std::size_t i = 0; i < vectors.size(); ++i)
    if (snf.D.at(i, i) != 1) return false;
  return true;
}

LatticeBasis kernel_lattice(const IntegerMatrix& A) {
  SmithDecomposition snf = smith_normal_form(A);
  const std::size_t r = snf.diagonal_rank();
  LatticeBasis basis;
  basis.ambient_dim = A.cols();
  // A = U^-1 D V^-1, so A v = 0 iff D (V^-1 v) = 0; the kernel lattice
  // is spanned by the last cols - r columns of V, saturated since V is
  // unimodular.
  for (std::size_t c = r; c < A.cols(); ++c)
    basis.vectors.push_back(snf.V.column(c));
  return basis;
}

Int content(const IntVector& v) {
  Int g = 0;
  for (const Int& x : v) g = gcd_int(g, x);
  return g;
}

bool is_primitive(const IntVector& v) {
  Int g = content(v);
  if (g == 0)
    throw std::invalid_argument("zero vector has no primitivity");
  return g == 1;
}

std::optional<IntVector> f2_all_odd_member(const LatticeBasis& basis) {
  const std::size_t m = basis.ambient_dim;
  const std::size_t k = basis.rank();
  if (k == 0) return std::nullopt;

  // Solve (B mod 2) x = (1,...,1) over F2, B columns = basis vectors.
  std::vector<std::vector<int>> A(m, std::vector<int>(k + 1, 1));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < k; ++j)
      A[i][j] = (basis.vectors[j][i] % 2) != 0 ? 1 : 0;

  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < k && row < m; ++col) {
    std::size_t p = row;
    while (p < m && A[p][col] == 0) ++p;
    if (p == m) continue;
    std::swap(A[row], A[p]);
    for (std::size_t i = 0; i < m; ++i)
      if (i != row && A[i][col])
        for (std::size_t j = 0; j <= k; ++j) A[i][j] ^= A[row][j];
    pivot_col.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < m; ++i)
    if (A[i][k]) return std::nullopt;  // inconsistent

  std::vector<int> x(k, 0);
  for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = A[i][k];

  IntVector u(m);
  for (std::size_t j = 0; j < k; ++j)
    if (x[j])
      for (std::size_t i = 0; i < m; ++i) u[i] += basis.vectors[j][i];

  for (const Int& c : u)
    if (c % 2 == 0)
      throw std::logic_error("f2_all_odd_member: witness verification failed");
  if (!basis.contains(u))
    throw std::logic_error("f2_all_odd_member: witness not in lattice");
  return u;
}

}  // namespace toric
