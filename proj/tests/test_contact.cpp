#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "toric/catalog.hpp"
#include "toric/contact.hpp"
#include "toric/delzant.hpp"

using namespace toric;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

SpherePoint random_sphere_point(std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Vec z(2 * static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = gauss(rng);
  return project_to_sphere(std::vector<long>(d, 1), z);
}

// Exact torus flow: z_j(t) = e^{2 pi i lambda_j t} z_j(0).
Vec exact_torus_flow(const Vec& lambda, const Vec& z0, double t) {
  Vec z(z0.size());
  for (Eigen::Index j = 0; j < lambda.size(); ++j) {
    double c = std::cos(2.0 * kPi * lambda[j] * t);
    double s = std::sin(2.0 * kPi * lambda[j] * t);
    z[2 * j] = c * z0[2 * j] - s * z0[2 * j + 1];
    z[2 * j + 1] = s * z0[2 * j] + c * z0[2 * j + 1];
  }
  return z;
}

UnitaryPath scalar_path(std::size_t d, double speed, double t0, double t1) {
  UnitaryPath p;
  p.d = d;
  p.t0 = t0;
  p.t1 = t1;
  p.map = [d, speed](double t) {
    auto dim = static_cast<Eigen::Index>(d);
    return CMat(std::exp(std::complex<double>(0.0, speed * t)) *
                CMat::Identity(dim, dim));
  };
  return p;
}

}  // namespace

TEST_CASE("the contact form evaluates the Reeb field to one") {
  for (std::size_t d : {1u, 2u, 3u, 4u}) {
    auto p = random_sphere_point(d, 11 + d);
    Vec reeb = reeb_field(p.gamma, p.z);
    CHECK(std::abs(alpha_std(p.z, reeb) - 1.0) < 1e-12);
    Vec gamma_real(static_cast<Eigen::Index>(d));
    for (std::size_t j = 0; j < d; ++j)
      gamma_real[static_cast<Eigen::Index>(j)] = 1.0;
    CHECK(std::abs(moment(gamma_real, p.z) - static_cast<double>(d)) < 1e-12);
  }
}

TEST_CASE("contact fields of moment functions are the torus fields") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  for (std::size_t d : {2u, 3u, 4u}) {
    for (int trial = 0; trial < 5; ++trial) {
      auto p = random_sphere_point(d, 100 * d + trial);
      Vec lambda(static_cast<Eigen::Index>(d));
      for (Eigen::Index j = 0; j < lambda.size(); ++j) lambda[j] = coeff(rng);
      Vec x = contact_field(moment_hamiltonian(lambda), p.gamma, p.z);
      CHECK((x - torus_field(lambda, p.z)).norm() < 1e-9);
    }
  }
}

TEST_CASE("the constant function one generates the Reeb field") {
  auto p = random_sphere_point(3, 23);
  Vec x = contact_field(constant_hamiltonian(1.0), p.gamma, p.z);
  CHECK((x - reeb_field(p.gamma, p.z)).norm() < 1e-9);
}

TEST_CASE("moment functions commute") {
  auto p = random_sphere_point(3, 29);
  Vec a(3), b(3);
  a << 1.0, -0.5, 2.0;
  b << 0.25, 1.0, -1.5;
  CHECK(std::abs(bracket(moment_hamiltonian(a), moment_hamiltonian(b),
                         p.gamma, p.z)) < 1e-9);
}

TEST_CASE("integrated torus flows track the closed form") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> coeff(-1.5, 1.5);
  for (std::size_t d : {2u, 3u}) {
    auto p = random_sphere_point(d, 500 + d);
    Vec lambda(static_cast<Eigen::Index>(d));
    for (Eigen::Index j = 0; j < lambda.size(); ++j) lambda[j] = coeff(rng);
    auto traj = integrate_flow(moment_hamiltonian(lambda), p, 1.0, 1e-3);
    CHECK(traj.max_alpha_residual() < 1e-8);
    CHECK(traj.max_step_residual() < 1e-4);
    CHECK(traj.max_level_residual() < 1e-10);
    Vec expected = exact_torus_flow(lambda, p.z, 1.0);
    CHECK((traj.points.back().z - expected).norm() < 1e-8);
  }
}

TEST_CASE("the Reeb flow on the three-sphere has period two") {
  auto p = random_sphere_point(2, 37);
  auto traj = integrate_flow(constant_hamiltonian(1.0), p, 2.0, 1e-3);
  CHECK((traj.points.back().z - p.z).norm() < 1e-8);
  auto half = integrate_flow(constant_hamiltonian(1.0), p, 1.0, 1e-3);
  CHECK((half.points.back().z + p.z).norm() < 1e-8);
}

TEST_CASE("level-set samples are coisotropic in the sphere") {
  auto entry = builtin("CP1xCP1");
  auto rep = delzant_report(entry.polytope);
  auto samples = sample_Y(entry.polytope, rep, 25, 42);
  for (const auto& p : samples) {
    Mat ty = level_set_tangent_frame(rep, p.z);
    CHECK(ty.cols() == 6);
    CHECK(coisotropy_residual(p, ty) < 1e-8);
  }

  // Negative control: a coordinate subspace of the same dimension is
  // nowhere near coisotropic with Reeb tangency.
  Mat wrong = Mat::Zero(8, 6);
  for (int i = 0; i < 6; ++i) wrong(i, i) = 1.0;
  CHECK(coisotropy_residual(samples[0], wrong) > 1e-2);
}

TEST_CASE("moment flows stay tangent to the level set") {
  auto entry = builtin("CP2");
  auto rep = delzant_report(entry.polytope);
  auto samples = sample_Y(entry.polytope, rep, 10, 7);
  Vec lambda(3);
  lambda << 0.5, -1.0, 0.75;
  auto h = moment_hamiltonian(lambda);
  for (const auto& p : samples) {
    Mat ty = level_set_tangent_frame(rep, p.z);
    CHECK(extension_tangency_residual(h, p, ty) < 1e-8);
  }
}

TEST_CASE("the real locus is Legendrian") {
  std::mt19937_64 rng(53);
  std::normal_distribution<double> gauss;
  for (std::size_t d : {2u, 3u, 4u}) {
    Vec z = Vec::Zero(2 * static_cast<Eigen::Index>(d));
    for (std::size_t j = 0; j < d; ++j) z[2 * j] = gauss(rng);
    auto p = project_to_sphere(std::vector<long>(d, 1), z);
    CHECK(legendrian_residual(p) < 1e-12);

    Vec q = p.z;
    q[1] = 0.1;
    auto perturbed = project_to_sphere(p.gamma, q);
    CHECK(legendrian_residual(perturbed) > 0.01);
  }
}

TEST_CASE("the ball embedding lands on the sphere") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> unit(-0.2, 0.2);
  for (std::size_t n : {1u, 2u, 3u}) {
    Vec z(2 * static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = unit(rng);
    Vec w = embed_phi(n, 1.0, z, 0.37);
    std::vector<long> gamma(n + 1, 1);
    CHECK(std::abs(sphere_level(gamma, w)) < 1e-12);
  }
  CHECK_THROWS_AS(embed_phi(2, 2.5, Vec(Vec::Zero(4)), 0.0),
                  std::invalid_argument);
  Vec big(2);
  big << 1.0, 0.0;
  CHECK_THROWS_AS(embed_phi(1, 1.0, big, 0.0), std::invalid_argument);
}

TEST_CASE("the torus fiber threshold flips at the exact rational value") {
  for (long n = 1; n <= 4; ++n) {
    Rat critical(2 * n, n + 1);
    CHECK_FALSE(torus_threshold(static_cast<std::size_t>(n), critical));
    CHECK(torus_threshold(static_cast<std::size_t>(n),
                          critical + Rat(1, 1000000)));
    CHECK_FALSE(torus_threshold(static_cast<std::size_t>(n),
                                critical - Rat(1, 1000000)));
  }
}

TEST_CASE("scalar loops cross the discriminant twice per eigenvalue") {
  for (std::size_t d : {1u, 2u, 3u, 4u}) {
    auto loop = scalar_path(d, 2.0 * kPi / static_cast<double>(d), 0.05,
                            static_cast<double>(d) + 0.05);
    CHECK(crossing_count(loop) == 2 * static_cast<int>(d));
  }
}

TEST_CASE("crossing counts are signed") {
  auto backwards = scalar_path(2, -2.0 * kPi, 0.05, 1.05);
  CHECK(crossing_count(backwards) == -4);
}

TEST_CASE("crossing counts add under concatenation") {
  auto loop = scalar_path(2, kPi, 0.1, 2.1);
  UnitaryPath first = loop, second = loop;
  first.t1 = 1.3;
  second.t0 = 1.3;
  int whole = crossing_count(loop);
  CHECK(crossing_count(concatenate(first, second)) == whole);
  CHECK(crossing_count(first) + crossing_count(second) == whole);
}

TEST_CASE("crossing counts are conjugation invariant") {
  std::mt19937_64 rng(71);
  std::normal_distribution<double> gauss;
  CMat m(3, 3);
  for (Eigen::Index i = 0; i < 3; ++i)
    for (Eigen::Index j = 0; j < 3; ++j)
      m(i, j) = std::complex<double>(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<CMat> qr(m);
  CMat v = qr.householderQ() * CMat::Identity(3, 3);

  UnitaryPath base;
  base.d = 3;
  base.t0 = 0.07;
  base.t1 = 1.07;
  base.map = [](double t) {
    CMat u = CMat::Zero(3, 3);
    u(0, 0) = std::exp(std::complex<double>(0.0, 2.0 * kPi * t));
    u(1, 1) = std::exp(std::complex<double>(0.0, 4.0 * kPi * t));
    u(2, 2) = std::exp(std::complex<double>(0.0, -2.0 * kPi * t));
    return u;
  };
  UnitaryPath conjugated = base;
  conjugated.map = [v, inner = base.map](double t) {
    return CMat(v * inner(t) * v.adjoint());
  };
  int expected = 2 + 4 - 2;
  CHECK(crossing_count(base) == expected);
  CHECK(crossing_count(conjugated) == expected);
}

TEST_CASE("degenerate paths are rejected") {
  auto on_discriminant = scalar_path(2, 2.0 * kPi, 0.0, 1.0);
  CHECK_THROWS(crossing_count(on_discriminant));

  UnitaryPath not_unitary;
  not_unitary.d = 2;
  not_unitary.t0 = 0.1;
  not_unitary.t1 = 1.1;
  not_unitary.map = [](double t) {
    return CMat((1.0 + t) * CMat::Identity(2, 2));
  };
  CHECK_THROWS(crossing_count(not_unitary));

  // Phases sit near one radian and barely move: no crossings, and the
  // velocity guard must not fire when nothing crosses.
  UnitaryPath stalled;
  stalled.d = 2;
  stalled.t0 = 0.0;
  stalled.t1 = 1.0;
  stalled.map = [](double t) {
    return CMat(std::exp(std::complex<double>(0.0, 1.0 + 1e-9 * t)) *
                CMat::Identity(2, 2));
  };
  CHECK(crossing_count(stalled) == 0);
}

TEST_CASE("flow aborts when the invariant drifts") {
  // A coarse step on a fast flow cannot hold alpha(zdot) = h to the
  // abort threshold once the tolerance is tightened.
  auto p = random_sphere_point(2, 83);
  Vec lambda(2);
  lambda << 40.0, -35.0;
  CHECK_THROWS(integrate_flow(moment_hamiltonian(lambda), p, 1.0, 0.25));
}
