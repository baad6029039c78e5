#include "toric/delzant.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

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

Int coordinate_sum(const IntVector& v) {
  Int s = 0;
  for (const Int& x : v) s += x;
  return s;
}

// The sublattice {u in lattice : sum_j u_j = 0}, as a saturated basis.
// Rebuild the lattice as a kernel (rows of U past the SNF rank
// annihilate exactly its rational span), append the sum functional,
// and take the integer kernel of the stack.
LatticeBasis zero_sum_sublattice(const LatticeBasis& lattice) {
  const std::size_t d = lattice.ambient_dim;
  if (lattice.empty()) return LatticeBasis{d, {}};
  IntegerMatrix B = IntegerMatrix::from_columns(lattice.vectors);
  SmithDecomposition snf = smith_normal_form(B);
  std::vector<IntVector> rows;
  for (std::size_t i = snf.diagonal_rank(); i < d; ++i)
    rows.push_back(snf.U.row(i));
  rows.push_back(IntVector(d, 1));
  return kernel_lattice(IntegerMatrix::from_rows(rows));
}

}  // namespace

IntegerMatrix conormal_matrix(const Polytope& P) {
  return IntegerMatrix::from_columns(P.conormals);
}

Int compute_ck(const LatticeBasis& k_basis) {
  if (k_basis.empty())
    throw std::invalid_argument("compute_ck: empty kernel basis");
  Int g = 0;
  for (const auto& b : k_basis.vectors) g = gcd_int(g, coordinate_sum(b));
  if (g == 0)
    throw std::invalid_argument(
        "compute_ck: degenerate c functional (sum vanishes on the kernel)");
  return g;
}

DeltaResult compute_delta(const LatticeBasis& k_basis) {
  LatticeBasis zero_sum = zero_sum_sublattice(k_basis);
  auto witness = f2_all_odd_member(zero_sum);
  if (witness) return DeltaResult{1, std::move(witness)};
  return DeltaResult{2, std::nullopt};
}

std::optional<IntVector> find_gamma(const LatticeBasis& k_basis,
                                    int search_radius) {
  if (k_basis.empty())
    throw std::invalid_argument("find_gamma: empty kernel basis");
  const std::size_t d = k_basis.ambient_dim;
  const std::size_t r = k_basis.rank();

  auto finish = [&](IntVector v) -> std::optional<IntVector> {
    Int g = content(v);
    if (g > 1)
      for (Int& x : v) x /= g;
    for (const Int& x : v)
      if (x < 1) return std::nullopt;
    if (!k_basis.contains(v)) return std::nullopt;
    return v;
  };

  // Interior point of { t : sum_i t_i b_i >= 1 coordinatewise }.
  std::vector<Inequality> sys;
  for (std::size_t j = 0; j < d; ++j) {
    Inequality q{RatVector(r), Rat(1)};
    for (std::size_t i = 0; i < r; ++i) q.coeffs[i] = Rat(k_basis.vectors[i][j]);
    sys.push_back(std::move(q));
  }
  if (auto t = fourier_motzkin_point(sys, r)) {
    // Clear denominators of the coefficient vector, then of the result.
    Int lcm = 1;
    for (const Rat& ti : *t) {
      Int den = denominator(ti);
      lcm = lcm / gcd_int(lcm, den) * den;
    }
    IntVector v(d, 0);
    for (std::size_t i = 0; i < r; ++i) {
      Int ci = numerator(Rat((*t)[i] * lcm));
      if (ci == 0) continue;
      for (std::size_t j = 0; j < d; ++j) v[j] += ci * k_basis.vectors[i][j];
    }
    if (auto out = finish(std::move(v))) return out;
  }

  // Bounded enumeration fallback.
  std::vector<int> coef(r, -search_radius);
  for (;;) {
    IntVector v(d, 0);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < d; ++j)
        v[j] += coef[i] * k_basis.vectors[i][j];
    bool positive = std::all_of(v.begin(), v.end(),
                                [](const Int& x) { return x >= 1; });
    if (positive)
      if (auto out = finish(std::move(v))) return out;
    std::size_t i = 0;
    while (i < r && coef[i] == search_radius) coef[i++] = -search_radius;
    if (i == r) break;
    ++coef[i];
  }
  return std::nullopt;
}

DelzantReport delzant_report(const Polytope& P) {
  if (!is_compact(P))
    throw std::invalid_argument("delzant_report: compactness precondition violated");
  if (!is_smooth(P).smooth)
    throw std::invalid_argument("delzant_report: smoothness precondition violated");
  for (const Rat& a : P.support)
    if (a != 1)
      throw std::invalid_argument(
          "delzant_report: monotone normalization precondition violated "
          "(support constants must all be 1)");
  if (!is_even(P))
    throw std::invalid_argument("delzant_report: evenness precondition violated");

  DelzantReport rep;
  rep.d = P.facet_count();
  rep.n = P.dim;

  IntegerMatrix beta = conormal_matrix(P);
  SmithDecomposition snf = smith_normal_form(beta);
  if (snf.diagonal_rank() != P.dim)
    throw std::invalid_argument("delzant_report: conormals do not span");
  for (std::size_t i = 0; i < P.dim; ++i)
    if (snf.D.at(i, i) != 1)
      throw std::invalid_argument(
          "delzant_report: conormal map is not surjective onto the lattice");

  rep.k_basis = kernel_lattice(beta);
  rep.c_k = compute_ck(rep.k_basis);

  DeltaResult dr = compute_delta(rep.k_basis);
  rep.delta = dr.delta;
  rep.delta_witness = dr.witness;

  rep.k0_basis = zero_sum_sublattice(rep.k_basis);

  rep.reeb_period = Rat(rep.c_k, rep.delta);
  rep.euler_coeff = Rat(-rep.delta, rep.c_k);
  rep.gamma = find_gamma(rep.k_basis);
  rep.dim_Y = rep.d + rep.n;
  rep.dim_Mhat = 2 * rep.n + 1;
  return rep;
}

IntVector euler_vector(const DelzantReport& report, const IntVector& c1) {
  IntVector out(c1.size());
  const Int num = numerator(report.euler_coeff);
  const Int den = denominator(report.euler_coeff);
  for (std::size_t i = 0; i < c1.size(); ++i) {
    Int scaled = num * c1[i];
    if (scaled % den != 0)
      throw std::invalid_argument(
          "euler_vector: -delta/c_k * c1 is not integral");
    out[i] = scaled / den;
  }
  return out;
}

std::string serialize_report(const DelzantReport& rep) {
  using nlohmann::json;
  auto rat_str = [](const Rat& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
    return os.str();
  };
  auto vec_json = [](const IntVector& v) {
    json a = json::array();
    for (const Int& x : v) a.push_back(x.convert_to<long long>());
    return a;
  };
  json j;
  j["d"] = rep.d;
  j["n"] = rep.n;
  json kb = json::array();
  for (const auto& b : rep.k_basis.vectors) kb.push_back(vec_json(b));
  j["k_basis"] = kb;
  json k0 = json::array();
  for (const auto& b : rep.k0_basis.vectors) k0.push_back(vec_json(b));
  j["k0_basis"] = k0;
  j["c_k"] = rep.c_k.convert_to<long long>();
  j["delta"] = rep.delta;
  if (rep.delta_witness) j["delta_witness"] = vec_json(*rep.delta_witness);
  j["reeb_period"] = rat_str(rep.reeb_period);
  j["euler_coeff"] = rat_str(rep.euler_coeff);
  if (rep.gamma) j["gamma"] = vec_json(*rep.gamma);
  j["dim_Y"] = rep.dim_Y;
  j["dim_Mhat"] = rep.dim_Mhat;
  return j.dump(2);
}

}  // namespace toric
