#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toric/delzant.hpp"
#include "toric/polytope.hpp"

// Built-in conormal fixtures: the basic families, the three dim-2 even
// polytopes, the four dim-3 bundles, the CP^{n-1} x CP^{n-1} series,
// and one non-even negative control.

namespace toric {

struct ExpectedField {
  std::string name;       // c_k, delta, even, euler_coeff, ...
  std::string value;      // exact string form
  std::string provenance; // citation for where the value comes from
};

struct CatalogEntry {
  std::string name;
  Polytope polytope;
  bool expect_even = false;
  std::optional<Int> expect_ck;
  std::optional<int> expect_delta;
  std::optional<Rat> expect_euler_coeff;
  std::optional<IntVector> c1;            // first Chern vector, when known
  std::optional<IntVector> expect_euler_vector;
  std::vector<ExpectedField> provenance;
};

// Throws std::invalid_argument for unknown names.
CatalogEntry builtin(const std::string& name);

std::vector<std::string> catalog_names();

struct FieldCheck {
  std::string entry;
  std::string field;
  bool passed = false;
  std::string detail;
};

struct CatalogReport {
  std::vector<FieldCheck> checks;
  bool all_passed() const;
};

// Runs the polytope predicates and (where applicable) delzant_report on
// every entry and compares against the expected fields.
CatalogReport verify_catalog();

std::string format_report(const CatalogReport& report);

}  // namespace toric
