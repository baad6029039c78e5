#pragma once

#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "toric/lattice.hpp"

// Exact rational linear solves and Fourier-Motzkin feasibility used by
// the polytope predicates and the gamma search.

namespace toric {

using Rat = boost::multiprecision::cpp_rational;
using RatVector = std::vector<Rat>;

// Solution set of A x = b as particular + nullspace; nullopt when
// inconsistent.
struct AffineSolution {
  RatVector particular;
  std::vector<RatVector> nullspace;
};

std::optional<AffineSolution> solve_linear_system(
    const std::vector<RatVector>& rows, const RatVector& rhs);

// Unique solve of an n x n system; nullopt when singular.
std::optional<RatVector> solve_square(const std::vector<RatVector>& rows,
                                      const RatVector& rhs);

// One linear inequality  a . x >= b.
struct Inequality {
  RatVector coeffs;
  Rat bound;
};

// Exact Fourier-Motzkin elimination.  Returns a feasible point when the
// system has one, nullopt otherwise.
std::optional<RatVector> fourier_motzkin_point(
    const std::vector<Inequality>& system, std::size_t num_vars);

bool fourier_motzkin_feasible(const std::vector<Inequality>& system,
                              std::size_t num_vars);

RatVector to_rational(const IntVector& v);
Rat dot(const RatVector& a, const RatVector& b);

}  // namespace toric
