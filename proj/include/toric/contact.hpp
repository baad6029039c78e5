#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "toric/delzant.hpp"
#include "toric/polytope.hpp"

// Floating-point verification layer for the model-space contact
// geometry on S^{2d-1}_gamma: the standard contact form, torus and
// contact Hamiltonian fields, flow integration with invariant auditing,
// coisotropy and Legendrian residuals, the ball embedding, and
// discriminant crossing counts for projective-unitary paths.
//
// Real coordinates throughout: z = (x_1, y_1, ..., x_d, y_d).

namespace toric {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

struct Tolerances {
  double level = 1e-10;          // sphere level residual after projection
  double unitary = 1e-10;        // ||U*U - I|| for path samples
  double field_residual = 1e-9;  // contact_field defining equations
  double flow_abort = 1e-4;      // abort threshold for alpha(zdot) - h
  double crossing_step = 0.05;   // max phase movement per refined step
  double crossing_vel = 1e-6;    // minimum phase velocity at a crossing
  double endpoint_margin = 1e-6; // endpoint spectra distance from +-1
};

// Point on S^{2d-1}_gamma = { pi sum gamma_j |z_j|^2 = sum gamma_j }.
struct SpherePoint {
  std::size_t d = 0;
  std::vector<long> gamma;
  Vec z;
  double level_residual = 0.0;
};

double sphere_level(const std::vector<long>& gamma, const Vec& z);

// Radial projection onto the level set; throws if the residual after
// projection exceeds the tolerance.
SpherePoint project_to_sphere(std::vector<long> gamma, Vec z,
                              const Tolerances& tol = {});

// alpha_std = 1/2 sum (x_j dy_j - y_j dx_j) evaluated on v at z.
double alpha_std(const Vec& z, const Vec& v);

// <lambda, P>(z) = pi sum lambda_j |z_j|^2.
double moment(const Vec& lambda, const Vec& z);

// X_lambda(z) = 2 pi i (lambda_1 z_1, ..., lambda_d z_d).
Vec torus_field(const Vec& lambda, const Vec& z);

// Reeb vector field of alpha_std on S^{2d-1}_gamma: the torus field of
// gamma / (sum gamma_j), so that alpha(R) = 1 on the level set.
Vec reeb_field(const std::vector<long>& gamma, const Vec& z);

struct Hamiltonian {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;
};

Hamiltonian moment_hamiltonian(const Vec& lambda);
Hamiltonian constant_hamiltonian(double c);

// Orthonormal basis of the tangent space of the gamma-sphere at z,
// as columns.
Mat sphere_tangent_frame(const std::vector<long>& gamma, const Vec& z);

// Solve alpha(X) = h, dalpha(X, .) = -dh + dh(R) alpha on the tangent
// space of the sphere; throws on an ill-conditioned frame or a residual
// beyond tol.field_residual * (1 + |h| + |dh|).
Vec contact_field(const Hamiltonian& h, const std::vector<long>& gamma,
                  const Vec& z, const Tolerances& tol = {});

// {h,g} = -dg(X_h) + dh(R) g.
double bracket(const Hamiltonian& h, const Hamiltonian& g,
               const std::vector<long>& gamma, const Vec& z,
               const Tolerances& tol = {});

struct Trajectory {
  std::vector<double> times;
  std::vector<SpherePoint> points;
  std::vector<double> alpha_residuals;  // |alpha(X_h) - h| at each point
  std::vector<double> step_residuals;   // |alpha(dz/dt) - h| from a 4th-order
                                        // stencil; 0 on unaudited edge steps
  std::vector<double> level_residuals;

  double max_alpha_residual() const;
  double max_step_residual() const;
  double max_level_residual() const;
};

// Classical 4-stage one-step integration with post-step projection to
// the level set; aborts when the alpha residual exceeds tol.flow_abort.
Trajectory integrate_flow(const Hamiltonian& h, const SpherePoint& z0,
                          double T, double dt, const Tolerances& tol = {});

// Seeded samples of the moment level set P_K^{-1}(c) inside
// S^{2d-1}_gamma: interior points of the polytope with random phases.
std::vector<SpherePoint> sample_Y(const Polytope& P,
                                  const DelzantReport& report,
                                  std::size_t count, std::uint64_t seed,
                                  const Tolerances& tol = {});

// Orthonormal tangent basis of the moment level set at z (kernel of the
// constraint differentials), columns.
Mat level_set_tangent_frame(const DelzantReport& report, const Vec& z);

// Max over: distance of the d-alpha orthogonal complement of T_zY
// (inside the sphere tangent space) from T_zY, and distance of the Reeb
// vector from T_zY.
double coisotropy_residual(const SpherePoint& z, const Mat& tangent_Y);

// Max |alpha(v)| over an orthonormal tangent frame of the real locus.
double legendrian_residual(const SpherePoint& z);

// Distance of the contact field of h from T_zY.
double extension_tangency_residual(const Hamiltonian& h,
                                   const SpherePoint& z, const Mat& tangent_Y,
                                   const Tolerances& tol = {});

// Phi(z, t) = e^{pi i t} sqrt((n+1)/2) (z, sqrt(2/pi - |z|^2)) on
// S^{2n+1}; z is a real 2n-vector in the ball pi |z|^2 < R, R < 2.
Vec embed_phi(std::size_t n, double R, const Vec& z, double t);

// Exact rational threshold R > 2n/(n+1) for the image of the ball to
// contain the distinguished torus fiber.
bool torus_threshold(std::size_t n, const Rat& R);

// A path of unitaries; evaluation is by the stored map so refinement
// can sample intermediate times.
struct UnitaryPath {
  std::size_t d = 0;
  std::function<CMat(double)> map;
  double t0 = 0.0, t1 = 1.0;

  CMat at(double t) const { return map(t); }
};

UnitaryPath concatenate(const UnitaryPath& a, const UnitaryPath& b);

// Validates unitarity at a sample grid and endpoint spectra clear of
// +-1; throws on violation.
void validate_unitary_path(const UnitaryPath& path, const Tolerances& tol = {});

// Signed count of eigenvalue-phase crossings through 0 and pi along the
// path (discriminant crossings on RP^{2d-1}), positive when the phase
// increases through the crossing value.  Deterministic; throws on
// tangential crossings or endpoints on the discriminant.
int crossing_count(const UnitaryPath& path, const Tolerances& tol = {});

}  // namespace toric
