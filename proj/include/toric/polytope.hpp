#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "toric/lattice.hpp"
#include "toric/rational_linear.hpp"

// Moment-polytope data model and predicates: compactness, Delzant
// smoothness, monotone normalization, evenness, vertex enumeration, and
// canonical forms under unimodular equivalence.  All arithmetic exact.

namespace toric {

// { x in Q^n : <nu_j, x> + a_j >= 0 } with primitive pairwise-distinct
// conormals nu_j and rational support constants a_j.
struct Polytope {
  std::size_t dim = 0;  // n
  std::vector<IntVector> conormals;
  std::vector<Rat> support;
  std::string name;

  std::size_t facet_count() const { return conormals.size(); }
};

// Validates all Polytope invariants; throws std::invalid_argument with
// the offending facet index in the message.
Polytope make_polytope(std::size_t dim, std::vector<IntVector> conormals,
                       std::vector<Rat> support, std::string name = "");

// Structured-text (JSON) polytope document, fields: dim, conormals,
// support (exact "p/q" strings or integers), optional name.
Polytope parse_polytope(const std::string& document);
std::string serialize_polytope(const Polytope& P);

struct VertexSet {
  std::vector<RatVector> points;
  std::vector<std::vector<std::size_t>> active_facets;

  std::size_t size() const { return points.size(); }
};

// Recession cone {x : <nu_j, x> >= 0} == {0}, by exact Fourier-Motzkin
// feasibility.
bool is_compact(const Polytope& P);

// All vertices by exact solves over n-subsets of facets; requires
// compactness.
VertexSet vertices(const Polytope& P);

struct SmoothnessCertificate {
  bool smooth = false;
  // On failure: the first violating vertex and its active facet set.
  std::optional<RatVector> violating_vertex;
  std::vector<std::size_t> violating_active;
  std::string reason;
};

SmoothnessCertificate is_smooth(const Polytope& P);

struct MonotoneNormalization {
  Polytope normalized;   // same conormals, all support constants 1
  RatVector center;      // x0 with a_j + <nu_j, x0> = lambda for all j
  Rat lambda;
};

std::optional<MonotoneNormalization> monotone_normalize(const Polytope& P);

bool is_even(const Polytope& P);
bool is_p_divisible(const Polytope& P, const Int& p);

struct CanonicalForm {
  std::vector<IntVector> matrix;  // sorted conormals in the minimizing basis
  std::uint64_t hash = 0;

  bool operator==(const CanonicalForm&) const = default;
  bool operator<(const CanonicalForm& rhs) const { return matrix < rhs.matrix; }
};

// Lexicographically minimal sorted conormal matrix over all unimodular
// changes of basis; complete invariant for unimodular equivalence plus
// facet permutation.  Conormals must span Q^n.
CanonicalForm canonical_form(const std::vector<IntVector>& conormals);

}  // namespace toric
