#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toric/catalog.hpp"
#include "toric/polytope.hpp"

// Bounded-box enumeration of smooth Fano polytopes (all support
// constants 1) up to unimodular equivalence, with the evenness filter.

namespace toric {

struct CensusClass {
  CanonicalForm canonical;
  std::vector<IntVector> representative;  // as found during the search
  std::size_t facet_count = 0;
  bool even = false;
  std::optional<std::string> matched_catalog_name;
};

struct CensusResult {
  std::size_t dim = 0;
  int bound = 0;
  std::vector<CensusClass> classes;  // sorted by canonical form

  std::size_t total() const { return classes.size(); }
  std::size_t even_total() const;
};

// Searches conormal sets of primitive vectors in [-B,B]^n containing
// the standard-basis seed; every emitted class representative is
// compact, smooth, and facet-irredundant (audited post hoc, not only
// via search pruning).  Deterministic output order.
CensusResult enumerate_smooth_fano(std::size_t n, int bound);

// The class sets at bounds B and B+1 coincide.
bool verify_stabilization(std::size_t n, int bound);

// Fills matched_catalog_name by canonical-form equality.  Throws when a
// catalog entry matches no class or two entries match the same class.
CensusResult match_catalog(CensusResult result,
                           const std::vector<CatalogEntry>& catalog);

std::string serialize_census(const CensusResult& result);

}  // namespace toric
