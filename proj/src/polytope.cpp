#include "toric/polytope.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace toric {

namespace {

using nlohmann::json;

Rat parse_rational(const json& j, std::size_t index) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.empty() || s.find_first_not_of("0123456789/-+") != std::string::npos)
      throw std::invalid_argument("support[" + std::to_string(index) +
                                  "]: not an exact rational: \"" + s + "\"");
    try {
      return Rat(s);
    } catch (const std::exception&) {
      throw std::invalid_argument("support[" + std::to_string(index) +
                                  "]: malformed rational: \"" + s + "\"");
    }
  }
  throw std::invalid_argument("support[" + std::to_string(index) +
                              "]: must be an integer or a \"p/q\" string");
}

std::string rational_to_string(const Rat& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

// All k-subsets of {0,...,n-1} in lexicographic order.
template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    f(const_cast<const std::vector<std::size_t>&>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Integer inverse of a matrix with determinant +-1, via the adjugate.
std::vector<IntVector> unimodular_inverse(const IntegerMatrix& S, const Int& det) {
  const std::size_t n = S.rows();
  std::vector<IntVector> inv(n, IntVector(n));
  if (n == 1) {
    inv[0][0] = det;  // det is +-1
    return inv;
  }
  IntegerMatrix minor(n - 1, n - 1);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t i = 0, mi = 0; i < n; ++i) {
        if (i == r) continue;
        for (std::size_t j = 0, mj = 0; j < n; ++j) {
          if (j == c) continue;
          minor.at(mi, mj) = S.at(i, j);
          ++mj;
        }
        ++mi;
      }
      Int cof = minor.determinant();
      if ((r + c) % 2 == 1) cof = -cof;
      inv[c][r] = det > 0 ? cof : Int(-cof);  // adj(S)/det, det = +-1
    }
  return inv;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

Polytope make_polytope(std::size_t dim, std::vector<IntVector> conormals,
                       std::vector<Rat> support, std::string name) {
  if (dim == 0) throw std::invalid_argument("polytope: dim must be >= 1");
  if (conormals.size() != support.size())
    throw std::invalid_argument(
        "polytope: conormal and support counts differ");
  if (conormals.size() < dim + 1)
    throw std::invalid_argument("polytope: need at least dim+1 facets");
  for (std::size_t j = 0; j < conormals.size(); ++j) {
    if (conormals[j].size() != dim)
      throw std::invalid_argument("conormal " + std::to_string(j) +
                                  ": wrong dimension");
    bool zero = std::all_of(conormals[j].begin(), conormals[j].end(),
                            [](const Int& x) { return x == 0; });
    if (zero)
      throw std::invalid_argument("conormal " + std::to_string(j) +
                                  ": zero vector");
    if (!is_primitive(conormals[j]))
      throw std::invalid_argument("conormal " + std::to_string(j) +
                                  ": not primitive");
    for (std::size_t i = 0; i < j; ++i)
      if (conormals[i] == conormals[j])
        throw std::invalid_argument("conormal " + std::to_string(j) +
                                    ": duplicate of conormal " +
                                    std::to_string(i));
  }
  return Polytope{dim, std::move(conormals), std::move(support),
                  std::move(name)};
}

Polytope parse_polytope(const std::string& document) {
  json j;
  try {
    j = json::parse(document);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed polytope document: ") +
                                e.what());
  }
  if (!j.is_object() || !j.contains("dim") || !j.contains("conormals") ||
      !j.contains("support"))
    throw std::invalid_argument(
        "polytope document needs fields dim, conormals, support");
  const std::size_t dim = j.at("dim").get<std::size_t>();
  std::vector<IntVector> conormals;
  for (const auto& row : j.at("conormals")) {
    IntVector v;
    for (const auto& x : row) {
      if (!x.is_number_integer())
        throw std::invalid_argument("conormal " +
                                    std::to_string(conormals.size()) +
                                    ": entries must be integers");
      v.push_back(Int(x.get<long long>()));
    }
    conormals.push_back(std::move(v));
  }
  std::vector<Rat> support;
  for (const auto& x : j.at("support"))
    support.push_back(parse_rational(x, support.size()));
  std::string name = j.value("name", "");
  return make_polytope(dim, std::move(conormals), std::move(support),
                       std::move(name));
}

std::string serialize_polytope(const Polytope& P) {
  json j;
  if (!P.name.empty()) j["name"] = P.name;
  j["dim"] = P.dim;
  j["conormals"] = json::array();
  for (const auto& nu : P.conormals) {
    json row = json::array();
    for (const Int& x : nu) row.push_back(x.convert_to<long long>());
    j["conormals"].push_back(row);
  }
  j["support"] = json::array();
  for (const Rat& a : P.support) j["support"].push_back(rational_to_string(a));
  return j.dump(2);
}

bool is_compact(const Polytope& P) {
  // The recession cone is nontrivial iff some nonzero x has all
  // <nu_j, x> >= 0; by scaling that is witnessed with some coordinate
  // pinned to +-1.
  std::vector<Inequality> base;
  for (const auto& nu : P.conormals)
    base.push_back(Inequality{to_rational(nu), Rat(0)});
  for (std::size_t i = 0; i < P.dim; ++i)
    for (int sign : {1, -1}) {
      std::vector<Inequality> sys = base;
      Inequality pin{RatVector(P.dim, Rat(0)), Rat(1)};
      pin.coeffs[i] = sign;
      sys.push_back(std::move(pin));
      if (fourier_motzkin_feasible(sys, P.dim)) return false;
    }
  return true;
}

VertexSet vertices(const Polytope& P) {
  if (!is_compact(P))
    throw std::invalid_argument("vertices: polytope is not compact");
  const std::size_t n = P.dim, d = P.facet_count();
  std::map<RatVector, std::vector<std::size_t>> found;
  for_each_subset(d, n, [&](const std::vector<std::size_t>& idx) {
    std::vector<RatVector> rows;
    RatVector rhs;
    for (std::size_t i : idx) {
      rows.push_back(to_rational(P.conormals[i]));
      rhs.push_back(-P.support[i]);
    }
    auto x = solve_square(rows, rhs);
    if (!x) return;
    for (std::size_t j = 0; j < d; ++j)
      if (dot(to_rational(P.conormals[j]), *x) + P.support[j] < 0) return;
    if (found.count(*x)) return;
    std::vector<std::size_t> active;
    for (std::size_t j = 0; j < d; ++j)
      if (dot(to_rational(P.conormals[j]), *x) + P.support[j] == 0)
        active.push_back(j);
    found.emplace(std::move(*x), std::move(active));
  });
  VertexSet vs;
  for (auto& [pt, act] : found) {
    vs.points.push_back(pt);
    vs.active_facets.push_back(act);
  }
  return vs;
}

SmoothnessCertificate is_smooth(const Polytope& P) {
  VertexSet vs = vertices(P);
  for (std::size_t v = 0; v < vs.size(); ++v) {
    const auto& active = vs.active_facets[v];
    if (active.size() != P.dim) {
      return SmoothnessCertificate{
          false, vs.points[v], active,
          "vertex lies on " + std::to_string(active.size()) +
              " facets, expected " + std::to_string(P.dim)};
    }
    std::vector<IntVector> rows;
    for (std::size_t j : active) rows.push_back(P.conormals[j]);
    Int det = IntegerMatrix::from_rows(rows).determinant();
    if (det != 1 && det != -1) {
      std::ostringstream os;
      os << "vertex conormal matrix has determinant " << det;
      return SmoothnessCertificate{false, vs.points[v], active, os.str()};
    }
  }
  return SmoothnessCertificate{true, std::nullopt, {}, ""};
}

std::optional<MonotoneNormalization> monotone_normalize(const Polytope& P) {
  // Solve <nu_j, x0> - lambda = -a_j for (x0, lambda).
  const std::size_t n = P.dim;
  std::vector<RatVector> rows;
  RatVector rhs;
  for (std::size_t j = 0; j < P.facet_count(); ++j) {
    RatVector row = to_rational(P.conormals[j]);
    row.push_back(Rat(-1));
    rows.push_back(std::move(row));
    rhs.push_back(-P.support[j]);
  }
  auto sol = solve_linear_system(rows, rhs);
  if (!sol) return std::nullopt;
  RatVector x = sol->particular;
  if (x[n] <= 0) {
    // lambda is adjustable only if the nullspace moves it.
    bool fixed = true;
    for (const auto& v : sol->nullspace)
      if (v[n] != 0) {
        const Rat t = (Rat(1) - x[n]) / v[n];
        for (std::size_t i = 0; i <= n; ++i) x[i] += t * v[i];
        fixed = false;
        break;
      }
    if (fixed) return std::nullopt;
  }
  MonotoneNormalization out;
  out.lambda = x[n];
  out.center.assign(x.begin(), x.begin() + n);
  out.normalized = P;
  out.normalized.support.assign(P.facet_count(), Rat(1));
  return out;
}

bool is_p_divisible(const Polytope& P, const Int& p) {
  for (std::size_t k = 0; k < P.dim; ++k) {
    Int s = 0;
    for (const auto& nu : P.conormals) s += nu[k];
    if (s % p != 0) return false;
  }
  return true;
}

bool is_even(const Polytope& P) { return is_p_divisible(P, Int(2)); }

CanonicalForm canonical_form(const std::vector<IntVector>& conormals) {
  if (conormals.empty())
    throw std::invalid_argument("canonical_form: no conormals");
  const std::size_t n = conormals.front().size();
  const std::size_t d = conormals.size();
  if (IntegerMatrix::from_columns(conormals).rank() != n)
    throw std::invalid_argument("canonical_form: conormals do not span");

  std::optional<std::vector<IntVector>> best;
  for_each_subset(d, n, [&](const std::vector<std::size_t>& idx) {
    std::vector<IntVector> chosen;
    for (std::size_t i : idx) chosen.push_back(conormals[i]);
    IntegerMatrix S = IntegerMatrix::from_columns(chosen);
    Int det = S.determinant();
    if (det != 1 && det != -1) return;
    std::vector<IntVector> inv = unimodular_inverse(S, det);
    // Transformed conormals in the basis sending the chosen subset to
    // the standard basis; reordering the subset permutes coordinates,
    // handled below by minimizing over row permutations.
    std::vector<IntVector> base(d, IntVector(n));
    for (std::size_t v = 0; v < d; ++v)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
          base[v][r] += inv[r][c] * conormals[v][c];
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<IntVector> cand(d, IntVector(n));
      for (std::size_t v = 0; v < d; ++v)
        for (std::size_t r = 0; r < n; ++r) cand[v][r] = base[v][perm[r]];
      std::sort(cand.begin(), cand.end());
      if (!best || cand < *best) best = std::move(cand);
    } while (std::next_permutation(perm.begin(), perm.end()));
  });
  if (!best)
    throw std::invalid_argument(
        "canonical_form: no conormal subset forms a lattice basis");

  std::ostringstream os;
  for (const auto& row : *best) {
    for (const Int& x : row) os << x << ',';
    os << ';';
  }
  return CanonicalForm{std::move(*best), fnv1a(os.str())};
}

}  // namespace toric
