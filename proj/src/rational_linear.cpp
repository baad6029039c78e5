#include "toric/rational_linear.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace toric {

RatVector to_rational(const IntVector& v) {
  RatVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rat(v[i]);
  return out;
}

Rat dot(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::optional<AffineSolution> solve_linear_system(
    const std::vector<RatVector>& rows, const RatVector& rhs) {
  if (rows.size() != rhs.size())
    throw std::invalid_argument("solve_linear_system: size mismatch");
  const std::size_t m = rows.size();
  const std::size_t n = m == 0 ? 0 : rows.front().size();
  std::vector<RatVector> a(m, RatVector(n + 1));
  for (std::size_t i = 0; i < m; ++i) {
    if (rows[i].size() != n)
      throw std::invalid_argument("solve_linear_system: ragged rows");
    for (std::size_t j = 0; j < n; ++j) a[i][j] = rows[i][j];
    a[i][n] = rhs[i];
  }

  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && a[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(a[r], a[p]);
    const Rat inv = a[r][c];
    for (std::size_t j = 0; j <= n; ++j) a[r][j] /= inv;
    for (std::size_t i = 0; i < m; ++i)
      if (i != r && a[i][c] != 0) {
        const Rat f = a[i][c];
        for (std::size_t j = 0; j <= n; ++j) a[i][j] -= f * a[r][j];
      }
    pivot_cols.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m; ++i)
    if (a[i][n] != 0) return std::nullopt;

  AffineSolution sol;
  sol.particular.assign(n, Rat(0));
  for (std::size_t i = 0; i < pivot_cols.size(); ++i)
    sol.particular[pivot_cols[i]] = a[i][n];

  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : pivot_cols) is_pivot[c] = true;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    RatVector v(n, Rat(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i)
      v[pivot_cols[i]] = -a[i][f];
    sol.nullspace.push_back(std::move(v));
  }
  return sol;
}

std::optional<RatVector> solve_square(const std::vector<RatVector>& rows,
                                      const RatVector& rhs) {
  auto sol = solve_linear_system(rows, rhs);
  if (!sol || !sol->nullspace.empty()) return std::nullopt;
  return sol->particular;
}

namespace {

// Normalize an inequality so duplicates collapse: divide by the content
// of the coefficient vector (keeping the sign structure).
Inequality normalized(Inequality q) {
  Rat scale = 0;
  for (const Rat& c : q.coeffs)
    if (c != 0) {
      scale = abs(c);
      break;
    }
  if (scale == 0) return q;
  for (Rat& c : q.coeffs) c /= scale;
  q.bound /= scale;
  return q;
}

struct IneqLess {
  bool operator()(const Inequality& a, const Inequality& b) const {
    if (a.coeffs != b.coeffs) return a.coeffs < b.coeffs;
    return a.bound < b.bound;
  }
};

std::optional<RatVector> fm_recurse(const std::vector<Inequality>& system,
                                    std::size_t num_vars) {
  if (num_vars == 0) {
    for (const auto& q : system)
      if (q.bound > 0) return std::nullopt;
    return RatVector{};
  }
  const std::size_t k = num_vars - 1;
  std::vector<Inequality> lower, upper;  // bounds on x_k
  std::map<Inequality, bool, IneqLess> passed;
  for (const auto& q : system) {
    if (q.coeffs.size() != num_vars)
      throw std::invalid_argument("fourier_motzkin: size mismatch");
    const Rat& ck = q.coeffs[k];
    Inequality rest{RatVector(q.coeffs.begin(), q.coeffs.begin() + k),
                    q.bound};
    if (ck == 0) {
      passed.emplace(normalized(std::move(rest)), true);
    } else {
      // ck x_k >= b - a'.x'  ->  lower bound when ck > 0, upper when < 0:
      // store as (b - a'.x') / ck with a'/ck folded in.
      for (Rat& c : rest.coeffs) c /= ck;
      rest.bound /= ck;
      (ck > 0 ? lower : upper).push_back(std::move(rest));
    }
  }
  for (const auto& lo : lower)
    for (const auto& up : upper) {
      // x_k >= lo(x'), x_k <= up(x')  ->  up(x') - lo(x') >= 0, written
      // as (lo.a - up.a).x' >= lo.b - up.b ... careful with the folded
      // form: bound_expr(x') = bound - a'.x', need up_expr >= lo_expr.
      Inequality comb;
      comb.coeffs.resize(k);
      for (std::size_t j = 0; j < k; ++j)
        comb.coeffs[j] = lo.coeffs[j] - up.coeffs[j];
      comb.bound = lo.bound - up.bound;
      passed.emplace(normalized(std::move(comb)), true);
    }
  std::vector<Inequality> reduced;
  reduced.reserve(passed.size());
  for (auto& [q, _] : passed) reduced.push_back(q);

  auto inner = fm_recurse(reduced, k);
  if (!inner) return std::nullopt;
  RatVector x = *inner;
  // Back-substitute x_k from the surviving bounds.
  bool have_lo = false, have_up = false;
  Rat lo_val = 0, up_val = 0;
  auto eval = [&](const Inequality& q) {
    Rat v = q.bound;
    for (std::size_t j = 0; j < k; ++j) v -= q.coeffs[j] * x[j];
    return v;
  };
  for (const auto& q : lower) {
    Rat v = eval(q);
    if (!have_lo || v > lo_val) lo_val = v;
    have_lo = true;
  }
  for (const auto& q : upper) {
    Rat v = eval(q);
    if (!have_up || v < up_val) up_val = v;
    have_up = true;
  }
  Rat xk = 0;
  if (have_lo && have_up)
    xk = (lo_val + up_val) / 2;
  else if (have_lo)
    xk = lo_val;
  else if (have_up)
    xk = up_val;
  x.push_back(xk);
  return x;
}

}  // namespace

std::optional<RatVector> fourier_motzkin_point(
    const std::vector<Inequality>& system, std::size_t num_vars) {
  auto x = fm_recurse(system, num_vars);
  if (x) {
    for (const auto& q : system)
      if (dot(q.coeffs, *x) < q.bound)
        throw std::logic_error("fourier_motzkin: witness check failed");
  }
  return x;
}

bool fourier_motzkin_feasible(const std::vector<Inequality>& system,
                              std::size_t num_vars) {
  return fm_recurse(system, num_vars).has_value();
}

}  // namespace toric
