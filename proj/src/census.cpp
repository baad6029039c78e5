#include "toric/census.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace toric {

namespace {

// All k-subsets of indices in lexicographic order.
template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    if (!f(const_cast<const std::vector<std::size_t>&>(idx))) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Is v in conv({0} union others)?  By Caratheodory it suffices to test
// conic combinations over <= n points with coefficient sum <= 1, plus
// affine combinations over exactly n+1 points with coefficient sum 1.
bool in_hull_with_origin(const IntVector& v,
                         const std::vector<IntVector>& others) {
  const std::size_t n = v.size();
  const std::size_t m = others.size();
  bool found = false;
  for (std::size_t k = 1; k <= std::min(m, n + 1) && !found; ++k) {
    for_each_subset(m, k, [&](const std::vector<std::size_t>& idx) {
      std::vector<RatVector> rows(n, RatVector(k));
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < k; ++c)
          rows[r][c] = Rat(others[idx[c]][r]);
      RatVector rhs = to_rational(v);
      if (k == n + 1) {
        rows.push_back(RatVector(k, Rat(1)));
        rhs.push_back(Rat(1));
      }
      auto sol = solve_linear_system(rows, rhs);
      if (sol && sol->nullspace.empty()) {
        Rat sum = 0;
        bool ok = true;
        for (const Rat& c : sol->particular) {
          if (c < 0) {
            ok = false;
            break;
          }
          sum += c;
        }
        if (ok && sum <= 1) {
          found = true;
          return false;
        }
      }
      return true;
    });
  }
  return found;
}

bool all_irredundant(const std::vector<IntVector>& set) {
  for (std::size_t i = 0; i < set.size(); ++i) {
    std::vector<IntVector> others;
    for (std::size_t j = 0; j < set.size(); ++j)
      if (j != i) others.push_back(set[j]);
    if (in_hull_with_origin(set[i], others)) return false;
  }
  return true;
}

bool vector_is_primitive(const IntVector& v) {
  bool zero = std::all_of(v.begin(), v.end(),
                          [](const Int& x) { return x == 0; });
  return !zero && is_primitive(v);
}

Polytope as_polytope(std::size_t n, const std::vector<IntVector>& set) {
  return make_polytope(n, set, std::vector<Rat>(set.size(), Rat(1)));
}

// The search itself runs on machine integers: all coordinates stay
// within the small box, so every determinant below fits comfortably in
// 64 bits.  The exact rational machinery re-verifies emitted classes.
using SmallVec = std::vector<long long>;

SmallVec shrink(const IntVector& v) {
  SmallVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].convert_to<long long>();
  return out;
}

long long dot_ll(const SmallVec& a, const SmallVec& b) {
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

long long det_ll(const std::vector<SmallVec>& rows) {
  if (rows.size() == 2)
    return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0];
  const auto& a = rows[0];
  const auto& b = rows[1];
  const auto& c = rows[2];
  return a[0] * (b[1] * c[2] - b[2] * c[1]) -
         a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

// Hyperplane through n affinely independent points: the generalized
// cross product of their differences.
SmallVec hyperplane_normal(const std::vector<SmallVec>& pts,
                           const std::vector<std::size_t>& idx) {
  if (idx.size() == 2) {
    long long dx = pts[idx[1]][0] - pts[idx[0]][0];
    long long dy = pts[idx[1]][1] - pts[idx[0]][1];
    return {dy, -dx};
  }
  SmallVec u(3), v(3);
  for (int k = 0; k < 3; ++k) {
    u[k] = pts[idx[1]][k] - pts[idx[0]][k];
    v[k] = pts[idx[2]][k] - pts[idx[0]][k];
  }
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
          u[0] * v[1] - u[1] * v[0]};
}

struct Facet {
  SmallVec normal;          // inward: <normal, p> <= offset on the hull
  long long offset = 0;
  std::vector<std::size_t> on;  // indices of points on the hyperplane
  long long simplex_det = 0;    // det of the on-points when |on| == n
};

// Brute-force facet enumeration for a full-dimensional point set (at
// most cap + 1 points, so quadratic bookkeeping is fine).
std::vector<Facet> hull_facets(const std::vector<SmallVec>& pts,
                               std::size_t n) {
  std::vector<Facet> facets;
  for_each_subset(pts.size(), n, [&](const std::vector<std::size_t>& idx) {
    SmallVec a = hyperplane_normal(pts, idx);
    bool zero = std::all_of(a.begin(), a.end(),
                            [](long long x) { return x == 0; });
    if (zero) return true;
    long long c = dot_ll(a, pts[idx[0]]);
    bool above = false, below = false;
    for (const auto& p : pts) {
      long long d = dot_ll(a, p);
      if (d > c) above = true;
      if (d < c) below = true;
    }
    if (above && below) return true;
    if (above) {
      for (auto& x : a) x = -x;
      c = -c;
    }
    long long g = std::abs(c);
    for (long long x : a) g = std::gcd(g, std::abs(x));
    if (g > 1) {
      for (auto& x : a) x /= g;
      c /= g;
    }
    for (const auto& f : facets)
      if (f.normal == a && f.offset == c) return true;
    Facet f;
    f.normal = std::move(a);
    f.offset = c;
    for (std::size_t p = 0; p < pts.size(); ++p)
      if (dot_ll(f.normal, pts[p]) == f.offset) f.on.push_back(p);
    if (f.on.size() == n) {
      std::vector<SmallVec> rows;
      for (std::size_t p : f.on) rows.push_back(pts[p]);
      f.simplex_det = det_ll(rows);
    }
    facets.push_back(std::move(f));
    return true;
  });
  return facets;
}

bool affinely_full(const std::vector<SmallVec>& pts, std::size_t n) {
  bool full = false;
  for_each_subset(pts.size(), n + 1, [&](const std::vector<std::size_t>& idx) {
    std::vector<SmallVec> rows;
    for (std::size_t k = 1; k <= n; ++k) {
      SmallVec d(n);
      for (std::size_t c = 0; c < n; ++c)
        d[c] = pts[idx[k]][c] - pts[idx[0]][c];
      rows.push_back(std::move(d));
    }
    if (det_ll(rows) != 0) {
      full = true;
      return false;
    }
    return true;
  });
  return full;
}

// Is pts[which] a vertex of the hull?  Exactly when its active facet
// normals span the whole space.
bool is_hull_vertex(const std::vector<SmallVec>& pts, std::size_t which,
                    const std::vector<Facet>& facets, std::size_t n) {
  std::vector<SmallVec> active;
  for (const auto& f : facets)
    if (dot_ll(f.normal, pts[which]) == f.offset) active.push_back(f.normal);
  if (active.size() < n) return false;
  bool spans = false;
  for_each_subset(active.size(), n, [&](const std::vector<std::size_t>& idx) {
    std::vector<SmallVec> rows;
    for (std::size_t k : idx) rows.push_back(active[k]);
    if (det_ll(rows) != 0) {
      spans = true;
      return false;
    }
    return true;
  });
  return spans;
}

// Incremental hull update when one point is appended: facets the new
// point is strictly beyond disappear, the rest persist, and every new
// facet contains the new point.
std::vector<Facet> augment_hull(const std::vector<SmallVec>& pts,
                                const std::vector<Facet>& facets,
                                std::size_t n) {
  const std::size_t vi = pts.size() - 1;
  const SmallVec& v = pts[vi];
  std::vector<Facet> out;
  for (const auto& f : facets) {
    long long d = dot_ll(f.normal, v);
    if (d > f.offset) continue;
    Facet g = f;
    if (d == f.offset) {
      g.on.push_back(vi);
      g.simplex_det = 0;
    }
    out.push_back(std::move(g));
  }
  for_each_subset(vi, n - 1, [&](const std::vector<std::size_t>& idx) {
    std::vector<std::size_t> plane_idx = idx;
    plane_idx.push_back(vi);
    SmallVec a = hyperplane_normal(pts, plane_idx);
    bool zero = std::all_of(a.begin(), a.end(),
                            [](long long x) { return x == 0; });
    if (zero) return true;
    long long c = dot_ll(a, v);
    bool above = false, below = false;
    for (const auto& p : pts) {
      long long d = dot_ll(a, p);
      if (d > c) above = true;
      if (d < c) below = true;
    }
    if (above && below) return true;
    if (above) {
      for (auto& x : a) x = -x;
      c = -c;
    }
    long long g = std::abs(c);
    for (long long x : a) g = std::gcd(g, std::abs(x));
    if (g > 1) {
      for (auto& x : a) x /= g;
      c /= g;
    }
    for (const auto& f : out)
      if (f.normal == a && f.offset == c) return true;
    Facet f;
    f.normal = std::move(a);
    f.offset = c;
    f.simplex_det = 0;
    for (std::size_t p = 0; p < pts.size(); ++p)
      if (dot_ll(f.normal, pts[p]) == f.offset) f.on.push_back(p);
    out.push_back(std::move(f));
    return true;
  });
  return out;
}

// 6 * volume of the hull, by coning facets off the point with index
// `apex` must not lie on... the apex here is the origin entry, which is
// a hull point; facets through it contribute zero.
long long six_volume(const std::vector<SmallVec>& pts,
                     const std::vector<Facet>& facets, std::size_t n,
                     std::size_t apex) {
  long long total = 0;
  for (const auto& f : facets) {
    long long h = f.offset - dot_ll(f.normal, pts[apex]);
    if (h == 0) continue;
    if (n == 2) {
      // Facet is a segment; its lattice length times the height.
      long long len = 0;
      for (std::size_t a = 0; a < f.on.size(); ++a)
        for (std::size_t b = a + 1; b < f.on.size(); ++b) {
          const SmallVec& p = pts[f.on[a]];
          const SmallVec& q = pts[f.on[b]];
          len = std::max(len, std::gcd(std::abs(p[0] - q[0]),
                                       std::abs(p[1] - q[1])));
        }
      total += 3 * len * h;  // scaled so the 2D case shares the 6x convention
      continue;
    }
    // Fan-triangulate the facet polygon around its first point; the
    // on-points are in convex position, so a cross-product comparator
    // around that point is a strict order.
    const SmallVec& base = pts[f.on.front()];
    std::vector<std::size_t> ring(f.on.begin() + 1, f.on.end());
    long long aa = dot_ll(f.normal, f.normal);
    std::sort(ring.begin(), ring.end(), [&](std::size_t x, std::size_t y) {
      SmallVec u(3), w(3);
      for (int k = 0; k < 3; ++k) {
        u[k] = pts[x][k] - base[k];
        w[k] = pts[y][k] - base[k];
      }
      SmallVec cr = {u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2],
                     u[0] * w[1] - u[1] * w[0]};
      return dot_ll(cr, f.normal) > 0;
    });
    long long area2 = 0;  // lattice area of the polygon, doubled-ish
    for (std::size_t k = 0; k + 1 < ring.size(); ++k) {
      SmallVec u(3), w(3);
      for (int j = 0; j < 3; ++j) {
        u[j] = pts[ring[k]][j] - base[j];
        w[j] = pts[ring[k + 1]][j] - base[j];
      }
      SmallVec cr = {u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2],
                     u[0] * w[1] - u[1] * w[0]};
      area2 += std::abs(dot_ll(cr, f.normal)) / aa;
    }
    total += area2 * h;
  }
  return total;
}

struct SearchState {
  std::size_t n;
  std::size_t cap;
  std::vector<IntVector> candidates;
  std::vector<SmallVec> cand_small;
  long long max_vol6 = 0;
  std::map<CanonicalForm, std::vector<IntVector>> classes;
};

// Grows mutually irredundant conormal sets in candidate-index order.
// A hull facet with no remaining candidate strictly beyond it is
// permanent in the whole subtree, so it must already be a unimodular
// simplex with the origin strictly inside; otherwise the branch dies.
// A node where every facet passes that test is a smooth Fano polytope.
// `zero_facets` is the facet list of conv({0} union current), with
// on-lists indexed into pts followed by the origin at index pts.size().
void dfs(SearchState& st, std::vector<IntVector>& current,
         std::vector<SmallVec>& pts, std::size_t start,
         const std::vector<Facet>& zero_facets) {
  if (pts.size() >= st.n + 1 && affinely_full(pts, st.n)) {
    auto facets = hull_facets(pts, st.n);
    bool all_good = true;
    for (const auto& f : facets) {
      bool good = f.on.size() == st.n && std::abs(f.simplex_det) == 1 &&
                  f.offset > 0;
      if (good) continue;
      all_good = false;
      bool closed = true;
      for (std::size_t i = start; i < st.cand_small.size(); ++i)
        if (dot_ll(f.normal, st.cand_small[i]) > f.offset) {
          closed = false;
          break;
        }
      if (closed) return;
    }
    if (all_good) {
      CanonicalForm cf = canonical_form(current);
      if (st.classes.find(cf) == st.classes.end())
        st.classes.emplace(std::move(cf), current);
    }
  }
  if (current.size() >= st.cap) return;

  // Hulls only grow along a branch, and a completed hull decomposes
  // into unimodular cones over its facets, so its normalized volume is
  // bounded by the facet count of any polytope with at most `cap`
  // vertices.  A node already past that bound cannot be completed.
  std::vector<SmallVec> aug = pts;
  aug.push_back(SmallVec(st.n, 0));
  if (six_volume(aug, zero_facets, st.n, pts.size()) > st.max_vol6) return;

  for (std::size_t i = start; i < st.cand_small.size(); ++i) {
    const SmallVec& v = st.cand_small[i];
    // Existing conormals can only stop being hull vertices if v sees a
    // facet they lie on, so only those need rechecking.
    std::vector<std::size_t> suspects;
    bool outside = false;
    for (const auto& f : zero_facets)
      if (dot_ll(f.normal, v) > f.offset) {
        outside = true;
        for (std::size_t j : f.on)
          if (j < pts.size()) suspects.push_back(j);
      }
    if (!outside) continue;  // v is redundant
    std::sort(suspects.begin(), suspects.end());
    suspects.erase(std::unique(suspects.begin(), suspects.end()),
                   suspects.end());

    aug.push_back(v);
    auto enlarged = augment_hull(aug, zero_facets, st.n);
    bool breaks = false;
    for (std::size_t j : suspects)
      if (!is_hull_vertex(aug, j, enlarged, st.n)) {
        breaks = true;
        break;
      }
    aug.pop_back();
    if (breaks) continue;

    // Reindex the child's facet on-lists so the origin stays last:
    // swap the roles of index pts.size() (origin) and pts.size()+1 (v).
    for (auto& f : enlarged)
      for (auto& j : f.on) {
        if (j == pts.size())
          j = pts.size() + 1;
        else if (j == pts.size() + 1)
          j = pts.size();
      }
    current.push_back(st.candidates[i]);
    pts.push_back(v);
    dfs(st, current, pts, i + 1, enlarged);
    pts.pop_back();
    current.pop_back();
  }
}

}  // namespace

std::size_t CensusResult::even_total() const {
  return std::count_if(classes.begin(), classes.end(),
                       [](const CensusClass& c) { return c.even; });
}

CensusResult enumerate_smooth_fano(std::size_t n, int bound) {
  if (n < 2 || n > 3)
    throw std::invalid_argument("census: dimension must be 2 or 3");
  if (bound < 0) throw std::invalid_argument("census: bound must be >= 0");

  SearchState st;
  st.n = n;
  st.cap = 4 * n;
  // Normalized volume of a completed hull equals its facet count, and a
  // polytope on at most cap vertices has at most cap facets (polygons)
  // or 2*cap - 4 facets (simplicial 3-polytopes).
  st.max_vol6 = n == 2 ? 3 * static_cast<long long>(st.cap)
                       : 2 * static_cast<long long>(st.cap) - 4;

  // Seed: the standard basis (a smooth vertex can always be normalized
  // onto it).  Non-seed candidates then satisfy a strict inequality at
  // the seed vertex (-1,...,-1), which forces coordinate sum <= 0.
  std::vector<IntVector> seed;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n, 0);
    e[i] = 1;
    seed.push_back(std::move(e));
  }

  if (bound >= 1) {
    std::vector<int> v(n, -bound);
    for (;;) {
      IntVector cand(n);
      int sum = 0;
      for (std::size_t i = 0; i < n; ++i) {
        cand[i] = v[i];
        sum += v[i];
      }
      if (sum <= 0 && vector_is_primitive(cand) &&
          std::find(seed.begin(), seed.end(), cand) == seed.end())
        st.candidates.push_back(std::move(cand));
      std::size_t i = n;
      while (i > 0 && v[i - 1] == bound) v[--i] = -bound;
      if (i == 0) break;
      ++v[i - 1];
    }
    std::sort(st.candidates.begin(), st.candidates.end());
    for (const auto& c : st.candidates) st.cand_small.push_back(shrink(c));

    std::vector<IntVector> current = seed;
    std::vector<SmallVec> pts;
    for (const auto& s : seed) pts.push_back(shrink(s));
    std::vector<SmallVec> with_zero = pts;
    with_zero.push_back(SmallVec(n, 0));
    dfs(st, current, pts, 0, hull_facets(with_zero, n));
  }

  CensusResult result;
  result.dim = n;
  result.bound = bound;
  for (auto& [cf, rep] : st.classes) {
    // Post-hoc audit, independent of the search pruning.
    Polytope P = as_polytope(n, rep);
    if (!is_compact(P) || !is_smooth(P).smooth || !all_irredundant(rep))
      throw std::logic_error("census: emitted class fails the audit");
    CensusClass cls;
    cls.canonical = cf;
    cls.representative = rep;
    cls.facet_count = rep.size();
    cls.even = is_even(P);
    result.classes.push_back(std::move(cls));
  }
  // std::map iteration is already sorted by canonical form.
  return result;
}

bool verify_stabilization(std::size_t n, int bound) {
  CensusResult a = enumerate_smooth_fano(n, bound);
  CensusResult b = enumerate_smooth_fano(n, bound + 1);
  if (a.total() != b.total()) return false;
  for (std::size_t i = 0; i < a.classes.size(); ++i)
    if (!(a.classes[i].canonical == b.classes[i].canonical)) return false;
  return true;
}

CensusResult match_catalog(CensusResult result,
                           const std::vector<CatalogEntry>& catalog) {
  for (const CatalogEntry& entry : catalog) {
    if (entry.polytope.dim != result.dim)
      throw std::invalid_argument("match_catalog: dimension mismatch for " +
                                  entry.name);
    CanonicalForm cf = canonical_form(entry.polytope.conormals);
    bool matched = false;
    for (CensusClass& cls : result.classes) {
      if (cls.canonical == cf) {
        if (cls.matched_catalog_name)
          throw std::invalid_argument(
              "match_catalog: both " + *cls.matched_catalog_name + " and " +
              entry.name + " match one census class");
        cls.matched_catalog_name = entry.name;
        matched = true;
        break;
      }
    }
    if (!matched)
      throw std::invalid_argument("match_catalog: catalog entry " +
                                  entry.name + " matches no census class");
  }
  return result;
}

std::string serialize_census(const CensusResult& result) {
  using nlohmann::json;
  json j;
  j["dim"] = result.dim;
  j["bound"] = result.bound;
  j["total"] = result.total();
  j["even_total"] = result.even_total();
  j["classes"] = json::array();
  for (const auto& cls : result.classes) {
    json c;
    c["facet_count"] = cls.facet_count;
    c["even"] = cls.even;
    json m = json::array();
    for (const auto& row : cls.canonical.matrix) {
      json r = json::array();
      for (const Int& x : row) r.push_back(x.convert_to<long long>());
      m.push_back(r);
    }
    c["canonical"] = m;
    if (cls.matched_catalog_name) c["catalog"] = *cls.matched_catalog_name;
    j["classes"].push_back(c);
  }
  return j.dump(2);
}

}  // namespace toric
