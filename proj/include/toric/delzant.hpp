#pragma once

#include <optional>
#include <string>

#include "toric/lattice.hpp"
#include "toric/polytope.hpp"

// The reduction datum of a smooth monotone even polytope: kernel torus
// lattice, c_k, delta, Reeb period, Euler coefficient, gamma, and
// dimension bookkeeping.

namespace toric {

struct DelzantReport {
  std::size_t d = 0;  // facet count
  std::size_t n = 0;  // base dimension
  LatticeBasis k_basis;   // kernel lattice in Z^d
  LatticeBasis k0_basis;  // kernel intersected with {sum = 0}
  Int c_k;                // positive generator of the coordinate-sum image
  int delta = 0;          // 1 or 2
  std::optional<IntVector> delta_witness;  // all-odd, zero-sum member
  Rat reeb_period;   // c_k / delta
  Rat euler_coeff;   // -delta / c_k
  std::optional<IntVector> gamma;  // primitive, all coordinates >= 1
  std::size_t dim_Y = 0;     // d + n
  std::size_t dim_Mhat = 0;  // 2n + 1
};

// Columns are the conormals: the n x d matrix of the lattice map
// sending the j-th standard basis vector to nu_j.
IntegerMatrix conormal_matrix(const Polytope& P);

// gcd over basis vectors of |sum of coordinates|; throws when the sum
// functional vanishes on the whole lattice.
Int compute_ck(const LatticeBasis& k_basis);

struct DeltaResult {
  int delta = 0;
  std::optional<IntVector> witness;
};

// delta = 1 iff the zero-sum sublattice of k_basis has an all-odd
// member.  Requires the ambient polytope to be even; callers go through
// delzant_report which checks, or pass the kernel of an even polytope.
DeltaResult compute_delta(const LatticeBasis& k_basis);

// Primitive gamma in the kernel lattice with every coordinate >= 1:
// exact rational feasibility first, bounded enumeration as fallback.
std::optional<IntVector> find_gamma(const LatticeBasis& k_basis,
                                    int search_radius = 10);

// Assembles the full report.  Preconditions (compact, smooth,
// monotone-normalized with all support constants 1, even) are checked
// and reported by name on failure.
DelzantReport delzant_report(const Polytope& P);

// Scaled Euler vector -delta/c_k * c1 when the caller supplies c1(M) as
// an integer vector; throws unless the scaling is integral.
IntVector euler_vector(const DelzantReport& report, const IntVector& c1);

std::string serialize_report(const DelzantReport& report);

}  // namespace toric
