#include <doctest.h>

#include <algorithm>
#include <set>

#include "toric/catalog.hpp"
#include "toric/census.hpp"
#include "toric/polytope.hpp"

using namespace toric;

namespace {

std::vector<CatalogEntry> even_entries(std::size_t dim) {
  std::vector<CatalogEntry> out;
  for (const auto& name : catalog_names()) {
    auto e = builtin(name);
    if (e.polytope.dim == dim && e.expect_even) out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

TEST_CASE("dim-2 census finds five classes, three even") {
  auto result = enumerate_smooth_fano(2, 1);
  CHECK(result.total() == 5);
  CHECK(result.even_total() == 3);

  // Classes are sorted and pairwise distinct.
  for (std::size_t i = 0; i + 1 < result.classes.size(); ++i)
    CHECK(result.classes[i].canonical < result.classes[i + 1].canonical);

  // Every representative is a genuine smooth Fano polytope.
  for (const auto& cls : result.classes) {
    std::vector<Rat> support(cls.representative.size(), Rat(1));
    auto P = make_polytope(2, cls.representative, support);
    CHECK(is_compact(P));
    CHECK(is_smooth(P).smooth);
    CHECK(is_even(P) == cls.even);
    CHECK(canonical_form(cls.representative) == cls.canonical);
  }
}

TEST_CASE("dim-2 even classes match the three named entries") {
  auto result = match_catalog(enumerate_smooth_fano(2, 1), even_entries(2));
  std::set<std::string> matched;
  for (const auto& cls : result.classes) {
    if (cls.matched_catalog_name) {
      CHECK(cls.even);
      matched.insert(*cls.matched_catalog_name);
    }
  }
  CHECK(matched == std::set<std::string>{"CP2", "CP1xCP1", "CP2#3"});
}

TEST_CASE("dim-2 census stabilizes at bound 1") {
  CHECK(verify_stabilization(2, 1));
}

TEST_CASE("census output is deterministic") {
  auto a = serialize_census(enumerate_smooth_fano(2, 1));
  auto b = serialize_census(enumerate_smooth_fano(2, 1));
  CHECK(a == b);
  CHECK_FALSE(a.empty());
}

TEST_CASE("unsupported dimensions are rejected") {
  CHECK_THROWS_AS(enumerate_smooth_fano(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_smooth_fano(4, 1), std::invalid_argument);
}

TEST_CASE("matching fails loudly when an entry has no class") {
  std::vector<CatalogEntry> entries = {builtin("CP3")};  // wrong dimension
  CHECK_THROWS(match_catalog(enumerate_smooth_fano(2, 1), entries));
}
