#include <doctest.h>

#include "toric/catalog.hpp"
#include "toric/delzant.hpp"
#include "toric/polytope.hpp"

using namespace toric;

namespace {

Polytope product_of_lines() {
  // Conormals e1, e2, -e1, -e2 so the kernel basis comes out as
  // {(1,0,1,0), (0,1,0,1)}.
  return make_polytope(2,
                       {{1, 0}, {0, 1}, {-1, 0}, {0, -1}},
                       {1, 1, 1, 1}, "square");
}

Polytope projective_plane() {
  return make_polytope(2, {{1, 0}, {0, 1}, {-1, -1}}, {1, 1, 1}, "CP2");
}

bool in_lattice(const LatticeBasis& basis, const IntVector& v) {
  return basis.contains(v);
}

}  // namespace

TEST_CASE("square reduction datum") {
  auto rep = delzant_report(product_of_lines());
  CHECK(rep.d == 4);
  CHECK(rep.n == 2);
  CHECK(rep.c_k == 2);
  CHECK(rep.delta == 1);
  CHECK(rep.reeb_period == Rat(2));
  CHECK(rep.euler_coeff == Rat(-1, 2));
  CHECK(rep.reeb_period * rep.euler_coeff == Rat(-1));
  CHECK(rep.dim_Y == 6);
  CHECK(rep.dim_Mhat == 5);

  CHECK(in_lattice(rep.k_basis, {1, 0, 1, 0}));
  CHECK(in_lattice(rep.k_basis, {0, 1, 0, 1}));
  CHECK(rep.k_basis.rank() == 2);

  REQUIRE(rep.delta_witness.has_value());
  const auto& w = *rep.delta_witness;
  Int sum = 0;
  for (const Int& x : w) {
    CHECK(x % 2 != 0);
    sum += x;
  }
  CHECK(sum == 0);
  CHECK(in_lattice(rep.k_basis, w));

  REQUIRE(rep.gamma.has_value());
  for (const Int& g : *rep.gamma) CHECK(g >= 1);
  CHECK(in_lattice(rep.k_basis, *rep.gamma));
  CHECK(content(*rep.gamma) == 1);
}

TEST_CASE("projective plane reduction datum") {
  auto rep = delzant_report(projective_plane());
  CHECK(rep.c_k == 3);
  CHECK(rep.delta == 2);
  CHECK_FALSE(rep.delta_witness.has_value());
  CHECK(rep.k0_basis.empty());
  CHECK(rep.reeb_period == Rat(3, 2));
  CHECK(rep.euler_coeff == Rat(-2, 3));
  CHECK(in_lattice(rep.k_basis, {1, 1, 1}));
  REQUIRE(rep.gamma.has_value());
  CHECK(*rep.gamma == IntVector{1, 1, 1});
}

TEST_CASE("dim-3 bundle with one-dimensional zero-sum sublattice") {
  auto entry = builtin("bundle_i");
  auto rep = delzant_report(entry.polytope);
  CHECK(rep.c_k == 1);
  CHECK(rep.delta == 2);
  CHECK(in_lattice(rep.k_basis, {1, 1, 0, 0, 0}));
  CHECK(in_lattice(rep.k_basis, {-2, 0, 1, 1, 1}));
  REQUIRE(rep.k0_basis.rank() == 1);
  const auto& gen = rep.k0_basis.vectors[0];
  bool plus = gen == IntVector{5, 1, -2, -2, -2};
  bool minus = gen == IntVector{-5, -1, 2, 2, 2};
  CHECK((plus || minus));
}

TEST_CASE("scaled Euler vectors") {
  auto rep2 = delzant_report(product_of_lines());
  CHECK(euler_vector(rep2, {2, 2}) == IntVector{-1, -1});

  auto rep3 = delzant_report(projective_plane());
  CHECK(euler_vector(rep3, {3}) == IntVector{-2});
  CHECK_THROWS_AS(euler_vector(rep3, {2}), std::invalid_argument);
}

TEST_CASE("preconditions are reported by name") {
  auto shifted = make_polytope(2, {{1, 0}, {0, 1}, {-1, -1}}, {1, 1, 2});
  CHECK_THROWS_WITH_AS(delzant_report(shifted),
                       doctest::Contains("monotone"), std::invalid_argument);

  auto odd = builtin("hirzebruch_F1").polytope;
  CHECK_THROWS_WITH_AS(delzant_report(odd), doctest::Contains("evenness"),
                       std::invalid_argument);

  auto open_cone = make_polytope(2, {{1, 0}, {0, 1}, {1, 1}}, {1, 1, 1});
  CHECK_THROWS_WITH_AS(delzant_report(open_cone),
                       doctest::Contains("compact"), std::invalid_argument);

  auto singular =
      make_polytope(2, {{1, 0}, {0, 1}, {-1, -2}}, {1, 1, 1});
  CHECK_THROWS_WITH_AS(delzant_report(singular),
                       doctest::Contains("smooth"), std::invalid_argument);
}

TEST_CASE("degenerate sum functional is refused") {
  LatticeBasis basis{2, {{1, -1}}};
  CHECK_THROWS_AS(compute_ck(basis), std::invalid_argument);
}

TEST_CASE("gamma search on the standard simplex kernel") {
  LatticeBasis basis{4, {{1, 1, 1, 1}}};
  auto g = find_gamma(basis);
  REQUIRE(g.has_value());
  CHECK(*g == IntVector{1, 1, 1, 1});
}

TEST_CASE("period times euler coefficient is minus one across the catalog") {
  for (const auto& name : catalog_names()) {
    auto entry = builtin(name);
    if (!entry.expect_even) continue;
    auto rep = delzant_report(entry.polytope);
    CHECK(rep.reeb_period * rep.euler_coeff == Rat(-1));
  }
}
