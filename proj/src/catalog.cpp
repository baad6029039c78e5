#include "toric/catalog.hpp"

#include <algorithm>
#include <sstream>

namespace toric {

namespace {

IntVector unit(std::size_t n, std::size_t i, int sign = 1) {
  IntVector v(n, 0);
  v[i] = sign;
  return v;
}

IntVector neg_sum(std::size_t n, std::size_t from, std::size_t to) {
  IntVector v(n, 0);
  for (std::size_t i = from; i < to; ++i) v[i] = -1;
  return v;
}

Polytope fano(std::size_t dim, std::vector<IntVector> conormals,
              std::string name) {
  std::vector<Rat> support(conormals.size(), Rat(1));
  return make_polytope(dim, std::move(conormals), std::move(support),
                       std::move(name));
}

// Projective space CP^m: eps_1, ..., eps_m, -(eps_1 + ... + eps_m).
Polytope projective_space(std::size_t m, std::string name) {
  std::vector<IntVector> c;
  for (std::size_t i = 0; i < m; ++i) c.push_back(unit(m, i));
  c.push_back(neg_sum(m, 0, m));
  return fano(m, std::move(c), std::move(name));
}

// CP^{n-1} x CP^{n-1} in dimension 2(n-1), block conormals.
Polytope product_of_projective(std::size_t n, std::string name) {
  const std::size_t m = n - 1, dim = 2 * m;
  std::vector<IntVector> c;
  for (std::size_t i = 0; i < m; ++i) c.push_back(unit(dim, i));
  c.push_back(neg_sum(dim, 0, m));
  for (std::size_t i = 0; i < m; ++i) c.push_back(unit(dim, m + i));
  c.push_back(neg_sum(dim, m, dim));
  return fano(dim, std::move(c), std::move(name));
}

CatalogEntry make_cpm(std::size_t m) {
  CatalogEntry e;
  e.name = "CP" + std::to_string(m);
  e.polytope = projective_space(m, e.name);
  e.expect_even = true;
  e.expect_ck = Int(m + 1);
  e.expect_delta = 2;
  e.expect_euler_coeff = Rat(-2, static_cast<long>(m + 1));
  e.c1 = IntVector{Int(m + 1)};
  e.expect_euler_vector = IntVector{-2};
  e.provenance = {
      {"c_k", std::to_string(m + 1),
       "rank-1 kernel generated by the all-ones vector; coordinate sum m+1"},
      {"delta", "2", "zero-sum sublattice of the rank-1 kernel is trivial"},
      {"euler_vector", "(-2)",
       "the fibration RP^{2m+1} -> CP^m has Euler class -2"}};
  return e;
}

CatalogEntry make_product(std::size_t n) {
  CatalogEntry e;
  e.name = n == 2 ? "CP1xCP1"
                  : "CP" + std::to_string(n - 1) + "xCP" + std::to_string(n - 1);
  e.polytope = product_of_projective(n, e.name);
  e.expect_even = true;
  e.expect_ck = Int(n);
  e.expect_delta = 1;
  e.expect_euler_coeff = Rat(-1, static_cast<long>(n));
  IntVector c1(2, Int(n));
  e.c1 = c1;
  e.expect_euler_vector = IntVector{-1, -1};
  e.provenance = {
      {"c_k", std::to_string(n),
       "kernel spanned by the two block all-ones vectors, each of sum n"},
      {"delta", "1",
       "block difference vector is all-odd with zero coordinate sum"},
      {"euler_vector", "(-1,-1)",
       "first Chern vector (n,n) scaled by -1/n"}};
  return e;
}

CatalogEntry plain(std::string name, Polytope P, bool even) {
  CatalogEntry e;
  e.name = std::move(name);
  e.polytope = std::move(P);
  e.expect_even = even;
  e.provenance = {{"even", even ? "true" : "false",
                   "coordinatewise parity of the conormal sum"}};
  return e;
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"CP1",      "CP2",       "CP3",       "CP4",       "CP5",
          "CP6",      "CP1xCP2",   "CP1^3",     "CP1x(CP2#3)",
          "CP2#3",    "CP1xCP1",   "CP2xCP2",   "CP3xCP3",   "CP4xCP4",
          "bundle_i", "bundle_ii", "bundle_iii", "bundle_iv",
          "hirzebruch_F1"};
}

CatalogEntry builtin(const std::string& name) {
  for (std::size_t m = 1; m <= 6; ++m)
    if (name == "CP" + std::to_string(m)) return make_cpm(m);
  if (name == "CP1xCP1") return make_product(2);
  if (name == "CP2xCP2") return make_product(3);
  if (name == "CP3xCP3") return make_product(4);
  if (name == "CP4xCP4") return make_product(5);

  if (name == "CP1xCP2") {
    CatalogEntry e = plain(
        name,
        fano(3,
             {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, -1, -1}},
             name),
        true);
    e.expect_ck = 1;
    e.expect_delta = 2;
    e.provenance.push_back(
        {"c_k", "1", "kernel sums 2 and 3 are coprime"});
    e.provenance.push_back(
        {"delta", "2",
         "zero-sum sublattice generated by (3,3,-2,-2,-2); even entries"});
    return e;
  }
  if (name == "CP1^3")
    return plain(name,
                 fano(3,
                      {{1, 0, 0},
                       {-1, 0, 0},
                       {0, 1, 0},
                       {0, -1, 0},
                       {0, 0, 1},
                       {0, 0, -1}},
                      name),
                 true);
  if (name == "CP2#3")
    return plain(name,
                 fano(2,
                      {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}},
                      name),
                 true);
  if (name == "CP1x(CP2#3)")
    return plain(name,
                 fano(3,
                      {{1, 0, 0},
                       {-1, 0, 0},
                       {0, 1, 0},
                       {0, -1, 0},
                       {0, 0, 1},
                       {0, 0, -1},
                       {0, 1, 1},
                       {0, -1, -1}},
                      name),
                 true);
  if (name == "bundle_i") {
    CatalogEntry e = plain(
        name,
        fano(3, {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {2, -1, -1}},
             name),
        true);
    e.expect_ck = 1;
    e.expect_delta = 2;
    e.provenance.push_back({"c_k", "1", "kernel sums 2 and 1 are coprime"});
    e.provenance.push_back(
        {"delta", "2",
         "zero-sum sublattice generated by (5,1,-2,-2,-2); even entries"});
    return e;
  }
  if (name == "bundle_ii")
    return plain(name,
                 fano(3,
                      {{1, 0, 0},
                       {-1, 0, 0},
                       {0, 1, 0},
                       {0, -1, 0},
                       {-1, -1, 0},
                       {0, 0, 1},
                       {-1, -1, -1}},
                      name),
                 true);
  if (name == "bundle_iii")
    return plain(
        name,
        fano(3,
             {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, -1, 0},
              {1, 0, -1}},
             name),
        true);
  if (name == "bundle_iv")
    return plain(
        name,
        fano(3,
             {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, -1, 0},
              {-1, 0, -1}},
             name),
        true);
  if (name == "hirzebruch_F1")
    return plain(name,
                 fano(2, {{1, 0}, {0, 1}, {0, -1}, {-1, -1}}, name), false);
  throw std::invalid_argument("unknown catalog entry: " + name);
}

bool CatalogReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const FieldCheck& c) { return c.passed; });
}

CatalogReport verify_catalog() {
  CatalogReport report;
  auto add = [&](const std::string& entry, const std::string& field,
                 bool ok, std::string detail) {
    report.checks.push_back(FieldCheck{entry, field, ok, std::move(detail)});
  };
  for (const std::string& name : catalog_names()) {
    CatalogEntry e = builtin(name);
    const bool even = is_even(e.polytope);
    add(name, "even", even == e.expect_even,
        even ? "conormal sum is even" : "conormal sum has an odd entry");
    bool compact = is_compact(e.polytope);
    add(name, "compact", compact, compact ? "" : "recession cone nontrivial");
    if (!compact) continue;
    SmoothnessCertificate cert = is_smooth(e.polytope);
    add(name, "smooth", cert.smooth, cert.reason);
    if (!cert.smooth) continue;

    if (!even) {
      bool refused = false;
      try {
        delzant_report(e.polytope);
      } catch (const std::invalid_argument&) {
        refused = true;
      }
      add(name, "report_refused", refused,
          "reduction datum must refuse non-even input");
      continue;
    }
    DelzantReport rep = delzant_report(e.polytope);
    add(name, "period_euler_product",
        rep.reeb_period * rep.euler_coeff == -1, "");
    if (e.expect_ck) {
      std::ostringstream os;
      os << "c_k = " << rep.c_k << ", expected " << *e.expect_ck;
      add(name, "c_k", rep.c_k == *e.expect_ck, os.str());
    }
    if (e.expect_delta)
      add(name, "delta", rep.delta == *e.expect_delta,
          "delta = " + std::to_string(rep.delta));
    if (e.expect_euler_coeff)
      add(name, "euler_coeff", rep.euler_coeff == *e.expect_euler_coeff, "");
    if (e.c1 && e.expect_euler_vector)
      add(name, "euler_vector",
          euler_vector(rep, *e.c1) == *e.expect_euler_vector, "");
    if (rep.gamma) {
      bool ok = is_primitive(*rep.gamma) && rep.k_basis.contains(*rep.gamma) &&
                std::all_of(rep.gamma->begin(), rep.gamma->end(),
                            [](const Int& x) { return x >= 1; });
      add(name, "gamma", ok, "");
    } else {
      add(name, "gamma", false, "no gamma found at default radius");
    }
  }
  return report;
}

std::string format_report(const CatalogReport& report) {
  std::ostringstream os;
  for (const auto& c : report.checks) {
    os << (c.passed ? "PASS" : "FAIL") << "  " << c.entry << "." << c.field;
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << "\n";
  }
  os << (report.all_passed() ? "catalog: all checks passed"
                             : "catalog: FAILURES present")
     << "\n";
  return os.str();
}

}  // namespace toric
