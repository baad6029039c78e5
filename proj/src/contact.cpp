#include "toric/contact.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace toric {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void check_point(const std::vector<long>& gamma, const Vec& z) {
  if (gamma.empty()) throw std::invalid_argument("empty weight vector");
  for (long g : gamma)
    if (g <= 0) throw std::invalid_argument("weights must be positive");
  if (static_cast<std::size_t>(z.size()) != 2 * gamma.size())
    throw std::invalid_argument("point has wrong dimension for the weights");
}

// omega(u, v) = sum (u_x v_y - u_y v_x).
double omega(const Vec& u, const Vec& v) {
  double s = 0.0;
  for (Eigen::Index j = 0; j + 1 < u.size(); j += 2)
    s += u[j] * v[j + 1] - u[j + 1] * v[j];
  return s;
}

// Orthonormal basis of the orthogonal complement of a nonzero vector,
// as the trailing columns of a Householder reflection.
Mat complement_frame(const Vec& g) {
  Eigen::Index n = g.size();
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  return q.rightCols(n - 1);
}

Mat orthonormalize(const Mat& basis) {
  Eigen::HouseholderQR<Mat> qr(basis);
  Mat q = qr.householderQ() * Mat::Identity(basis.rows(), basis.rows());
  return q.leftCols(basis.cols());
}

double distance_from_span(const Vec& v, const Mat& ortho_frame) {
  return (v - ortho_frame * (ortho_frame.transpose() * v)).norm();
}

}  // namespace

double sphere_level(const std::vector<long>& gamma, const Vec& z) {
  check_point(gamma, z);
  double s = 0.0, target = 0.0;
  for (std::size_t j = 0; j < gamma.size(); ++j) {
    double g = static_cast<double>(gamma[j]);
    s += g * (z[2 * j] * z[2 * j] + z[2 * j + 1] * z[2 * j + 1]);
    target += g;
  }
  return kPi * s - target;
}

SpherePoint project_to_sphere(std::vector<long> gamma, Vec z,
                              const Tolerances& tol) {
  check_point(gamma, z);
  double s = 0.0, target = 0.0;
  for (std::size_t j = 0; j < gamma.size(); ++j) {
    double g = static_cast<double>(gamma[j]);
    s += g * (z[2 * j] * z[2 * j] + z[2 * j + 1] * z[2 * j + 1]);
    target += g;
  }
  if (s <= 0.0)
    throw std::invalid_argument("cannot project the origin to the sphere");
  z *= std::sqrt(target / (kPi * s));
  SpherePoint p;
  p.d = gamma.size();
  p.gamma = std::move(gamma);
  p.z = std::move(z);
  p.level_residual = std::abs(sphere_level(p.gamma, p.z));
  if (p.level_residual > tol.level)
    throw std::runtime_error("sphere projection did not reach the level set");
  return p;
}

double alpha_std(const Vec& z, const Vec& v) {
  double s = 0.0;
  for (Eigen::Index j = 0; j + 1 < z.size(); j += 2)
    s += z[j] * v[j + 1] - z[j + 1] * v[j];
  return 0.5 * s;
}

double moment(const Vec& lambda, const Vec& z) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < lambda.size(); ++j)
    s += lambda[j] * (z[2 * j] * z[2 * j] + z[2 * j + 1] * z[2 * j + 1]);
  return kPi * s;
}

Vec torus_field(const Vec& lambda, const Vec& z) {
  Vec v(z.size());
  for (Eigen::Index j = 0; j < lambda.size(); ++j) {
    v[2 * j] = -2.0 * kPi * lambda[j] * z[2 * j + 1];
    v[2 * j + 1] = 2.0 * kPi * lambda[j] * z[2 * j];
  }
  return v;
}

Vec reeb_field(const std::vector<long>& gamma, const Vec& z) {
  check_point(gamma, z);
  double total = 0.0;
  for (long g : gamma) total += static_cast<double>(g);
  Vec lambda(static_cast<Eigen::Index>(gamma.size()));
  for (std::size_t j = 0; j < gamma.size(); ++j)
    lambda[static_cast<Eigen::Index>(j)] = static_cast<double>(gamma[j]) / total;
  return torus_field(lambda, z);
}

Hamiltonian moment_hamiltonian(const Vec& lambda) {
  Hamiltonian h;
  h.value = [lambda](const Vec& z) { return moment(lambda, z); };
  h.gradient = [lambda](const Vec& z) {
    Vec g(z.size());
    for (Eigen::Index j = 0; j < lambda.size(); ++j) {
      g[2 * j] = 2.0 * kPi * lambda[j] * z[2 * j];
      g[2 * j + 1] = 2.0 * kPi * lambda[j] * z[2 * j + 1];
    }
    return g;
  };
  return h;
}

Hamiltonian constant_hamiltonian(double c) {
  Hamiltonian h;
  h.value = [c](const Vec&) { return c; };
  h.gradient = [](const Vec& z) { return Vec(Vec::Zero(z.size())); };
  return h;
}

Mat sphere_tangent_frame(const std::vector<long>& gamma, const Vec& z) {
  check_point(gamma, z);
  Vec grad(z.size());
  for (std::size_t j = 0; j < gamma.size(); ++j) {
    double g = 2.0 * kPi * static_cast<double>(gamma[j]);
    grad[2 * j] = g * z[2 * j];
    grad[2 * j + 1] = g * z[2 * j + 1];
  }
  if (grad.norm() < 1e-12)
    throw std::runtime_error("degenerate level gradient");
  return complement_frame(grad);
}

Vec contact_field(const Hamiltonian& h, const std::vector<long>& gamma,
                  const Vec& z, const Tolerances& tol) {
  Mat frame = sphere_tangent_frame(gamma, z);
  Eigen::Index m = frame.cols();
  double hval = h.value(z);
  Vec grad = h.gradient(z);
  double dh_reeb = grad.dot(reeb_field(gamma, z));

  Mat A(m + 1, m);
  Vec b(m + 1);
  for (Eigen::Index k = 0; k < m; ++k) A(0, k) = alpha_std(z, frame.col(k));
  b[0] = hval;
  for (Eigen::Index k = 0; k < m; ++k) {
    for (Eigen::Index l = 0; l < m; ++l)
      A(k + 1, l) = omega(frame.col(l), frame.col(k));
    b[k + 1] = -grad.dot(frame.col(k)) + dh_reeb * alpha_std(z, frame.col(k));
  }

  Eigen::ColPivHouseholderQR<Mat> qr(A);
  if (!qr.isInvertible() && qr.rank() < m)
    throw std::runtime_error("singular contact field system");
  Vec a = qr.solve(b);
  double scale = 1.0 + std::abs(hval) + grad.norm();
  if ((A * a - b).norm() > tol.field_residual * scale)
    throw std::runtime_error("contact field equations not satisfied");
  return frame * a;
}

double bracket(const Hamiltonian& h, const Hamiltonian& g,
               const std::vector<long>& gamma, const Vec& z,
               const Tolerances& tol) {
  Vec xh = contact_field(h, gamma, z, tol);
  double dh_reeb = h.gradient(z).dot(reeb_field(gamma, z));
  return -g.gradient(z).dot(xh) + dh_reeb * g.value(z);
}

double Trajectory::max_alpha_residual() const {
  double m = 0.0;
  for (double r : alpha_residuals) m = std::max(m, r);
  return m;
}

double Trajectory::max_step_residual() const {
  double m = 0.0;
  for (double r : step_residuals) m = std::max(m, r);
  return m;
}

double Trajectory::max_level_residual() const {
  double m = 0.0;
  for (double r : level_residuals) m = std::max(m, r);
  return m;
}

Trajectory integrate_flow(const Hamiltonian& h, const SpherePoint& z0,
                          double T, double dt, const Tolerances& tol) {
  if (dt <= 0.0 || T <= 0.0)
    throw std::invalid_argument("flow time and step must be positive");
  auto field = [&](const Vec& z) { return contact_field(h, z0.gamma, z, tol); };

  auto pointwise = [&](const Vec& z) {
    return std::abs(alpha_std(z, field(z)) - h.value(z));
  };

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.points.push_back(z0);
  traj.alpha_residuals.push_back(pointwise(z0.z));
  traj.step_residuals.push_back(0.0);
  traj.level_residuals.push_back(z0.level_residual);

  // One Runge-Kutta step of the contact field.
  auto rk4 = [&](const Vec& y, double s) {
    Vec k1 = field(y);
    Vec k2 = field(y + 0.5 * s * k1);
    Vec k3 = field(y + 0.5 * s * k2);
    Vec k4 = field(y + s * k3);
    return Vec(y + (s / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
  };

  auto steps = static_cast<std::size_t>(std::llround(T / dt));
  if (steps == 0) steps = 1;
  Vec z = z0.z;
  double t = 0.0;
  for (std::size_t i = 1; i <= steps; ++i) {
    double step = (i == steps) ? T - t : dt;
    // Richardson extrapolation of two half steps against one full step
    // lifts the local order to six, which the endpoint accuracy needs.
    Vec full = rk4(z, step);
    Vec halves = rk4(rk4(z, 0.5 * step), 0.5 * step);
    Vec znext = (16.0 * halves - full) / 15.0;
    t += step;
    SpherePoint p = project_to_sphere(z0.gamma, znext, tol);

    z = p.z;
    traj.times.push_back(t);
    traj.alpha_residuals.push_back(pointwise(z));
    traj.step_residuals.push_back(0.0);
    traj.points.push_back(std::move(p));
    traj.level_residuals.push_back(traj.points.back().level_residual);

    // Discrete audit of the invariant alpha(zdot) = h, with zdot taken
    // from a fourth-order central stencil at a recorded point.  The
    // audit lags two steps behind; that distance in time scales is how
    // genuine breakdown (step too coarse for the field) is told apart
    // from the truncation error of an accurate run.  The first and
    // last two points of a run go unaudited, as do points next to the
    // shortened remainder step.
    std::size_t m = traj.points.size();
    if (m >= 5) {
      std::size_t k = m - 3;  // audit the point with two neighbours each way
      bool uniform = true;
      for (std::size_t j = k - 2; j <= k + 1; ++j)
        uniform = uniform && std::abs((traj.times[j + 1] - traj.times[j]) -
                                      dt) <= 1e-9 * dt;
      if (uniform) {
        Vec zdot = (-traj.points[k + 2].z + 8.0 * traj.points[k + 1].z -
                    8.0 * traj.points[k - 1].z + traj.points[k - 2].z) /
                   (12.0 * dt);
        const Vec& at = traj.points[k].z;
        double step_res = std::abs(alpha_std(at, zdot) - h.value(at));
        traj.step_residuals[k] = step_res;
        if (step_res > tol.flow_abort)
          throw std::runtime_error("flow invariant alpha(zdot) = h violated");
      }
    }
  }
  return traj;
}

std::vector<SpherePoint> sample_Y(const Polytope& P,
                                  const DelzantReport& report,
                                  std::size_t count, std::uint64_t seed,
                                  const Tolerances& tol) {
  auto verts = vertices(P);
  std::size_t n = P.dim;
  std::vector<double> lo(n, 0.0), hi(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = hi[i] = verts.points[0][i].convert_to<double>();
    for (const auto& v : verts.points) {
      double c = v[i].convert_to<double>();
      lo[i] = std::min(lo[i], c);
      hi[i] = std::max(hi[i], c);
    }
  }
  if (!report.gamma)
    throw std::invalid_argument("report carries no weight vector");
  std::vector<long> gamma(report.gamma->size());
  for (std::size_t j = 0; j < gamma.size(); ++j)
    gamma[j] = (*report.gamma)[j].convert_to<long>();

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<SpherePoint> out;
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > 100000 * (count + 1))
      throw std::runtime_error("interior sampling failed to converge");
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i)
      x[i] = lo[i] + (hi[i] - lo[i]) * unit(rng);
    bool interior = true;
    std::vector<double> slack(P.facet_count());
    for (std::size_t j = 0; j < P.facet_count(); ++j) {
      double s = P.support[j].convert_to<double>();
      for (std::size_t i = 0; i < n; ++i)
        s += P.conormals[j][i].convert_to<double>() * x[i];
      slack[j] = s;
      if (s < 1e-6) { interior = false; break; }
    }
    if (!interior) continue;
    SpherePoint p;
    p.d = P.facet_count();
    p.gamma = gamma;
    p.z = Vec(2 * static_cast<Eigen::Index>(p.d));
    for (std::size_t j = 0; j < p.d; ++j) {
      double r = std::sqrt(slack[j] / kPi);
      double theta = 2.0 * kPi * unit(rng);
      p.z[2 * j] = r * std::cos(theta);
      p.z[2 * j + 1] = r * std::sin(theta);
    }
    p.level_residual = std::abs(sphere_level(p.gamma, p.z));
    if (p.level_residual > tol.level)
      throw std::runtime_error("sampled point missed the level set");
    out.push_back(std::move(p));
  }
  return out;
}

Mat level_set_tangent_frame(const DelzantReport& report, const Vec& z) {
  std::size_t r = report.k_basis.vectors.size();
  std::size_t d = report.d;
  Mat C(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(2 * d));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      double b = 2.0 * kPi * report.k_basis.vectors[i][j].convert_to<double>();
      C(i, 2 * j) = b * z[2 * j];
      C(i, 2 * j + 1) = b * z[2 * j + 1];
    }
  Eigen::JacobiSVD<Mat> svd(C, Eigen::ComputeFullV);
  if (svd.singularValues()[static_cast<Eigen::Index>(r) - 1] < 1e-8)
    throw std::runtime_error("moment constraints are degenerate at the point");
  return svd.matrixV().rightCols(static_cast<Eigen::Index>(2 * d - r));
}

double coisotropy_residual(const SpherePoint& z, const Mat& tangent_Y) {
  Mat ty = orthonormalize(tangent_Y);
  Mat sphere_frame = sphere_tangent_frame(z.gamma, z.z);
  Eigen::Index m = sphere_frame.cols();

  // w = sphere_frame * a lies in the d-alpha orthogonal complement of
  // T_zY iff (ty^T J sphere_frame) a = 0.
  Mat pairing(ty.cols(), m);
  for (Eigen::Index l = 0; l < ty.cols(); ++l)
    for (Eigen::Index k = 0; k < m; ++k)
      pairing(l, k) = omega(ty.col(l), sphere_frame.col(k));
  Eigen::JacobiSVD<Mat> svd(pairing, Eigen::ComputeFullV);
  double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > 1e-9 * std::max(1.0, smax)) ++rank;

  double worst = 0.0;
  for (Eigen::Index i = rank; i < m; ++i) {
    Vec w = sphere_frame * svd.matrixV().col(i);
    worst = std::max(worst, distance_from_span(w, ty) / w.norm());
  }
  Vec reeb = reeb_field(z.gamma, z.z);
  worst = std::max(worst, distance_from_span(reeb, ty) / reeb.norm());
  return worst;
}

double legendrian_residual(const SpherePoint& z) {
  std::size_t d = z.d;
  double ymax = 0.0;
  for (std::size_t j = 0; j < d; ++j)
    ymax = std::max(ymax, std::abs(z.z[2 * j + 1]));
  if (ymax > 0.5)
    throw std::invalid_argument("point is not near the real locus");

  Vec gx(static_cast<Eigen::Index>(d));
  for (std::size_t j = 0; j < d; ++j)
    gx[static_cast<Eigen::Index>(j)] =
        static_cast<double>(z.gamma[j]) * z.z[2 * j];
  Mat real_frame = complement_frame(gx);

  double worst = 0.0;
  for (Eigen::Index k = 0; k < real_frame.cols(); ++k) {
    Vec v = Vec::Zero(z.z.size());
    for (std::size_t j = 0; j < d; ++j)
      v[2 * j] = real_frame(static_cast<Eigen::Index>(j), k);
    worst = std::max(worst, std::abs(alpha_std(z.z, v)));
  }
  return worst;
}

double extension_tangency_residual(const Hamiltonian& h,
                                   const SpherePoint& z, const Mat& tangent_Y,
                                   const Tolerances& tol) {
  Vec x = contact_field(h, z.gamma, z.z, tol);
  Mat ty = orthonormalize(tangent_Y);
  return distance_from_span(x, ty) / (1.0 + x.norm());
}

Vec embed_phi(std::size_t n, double R, const Vec& z, double t) {
  if (R <= 0.0 || R >= 2.0)
    throw std::invalid_argument("ball size must lie in (0, 2)");
  if (static_cast<std::size_t>(z.size()) != 2 * n)
    throw std::invalid_argument("point has wrong dimension for the ball");
  double norm2 = 0.0;
  for (Eigen::Index j = 0; j < z.size(); ++j) norm2 += z[j] * z[j];
  if (kPi * norm2 >= R)
    throw std::invalid_argument("point lies outside the ball");

  double scale = std::sqrt((static_cast<double>(n) + 1.0) / 2.0);
  std::complex<double> phase =
      scale * std::exp(std::complex<double>(0.0, kPi * t));
  Vec w(2 * static_cast<Eigen::Index>(n) + 2);
  for (std::size_t j = 0; j < n; ++j) {
    std::complex<double> zj(z[2 * j], z[2 * j + 1]);
    std::complex<double> wj = phase * zj;
    w[2 * j] = wj.real();
    w[2 * j + 1] = wj.imag();
  }
  std::complex<double> last = phase * std::sqrt(2.0 / kPi - norm2);
  w[2 * n] = last.real();
  w[2 * n + 1] = last.imag();
  return w;
}

bool torus_threshold(std::size_t n, const Rat& R) {
  return R > Rat(2 * static_cast<long>(n), static_cast<long>(n) + 1);
}

UnitaryPath concatenate(const UnitaryPath& a, const UnitaryPath& b) {
  if (a.d != b.d)
    throw std::invalid_argument("cannot concatenate paths of different size");
  if ((a.at(a.t1) - b.at(b.t0)).norm() > 1e-8)
    throw std::invalid_argument("path endpoints do not match");
  UnitaryPath out;
  out.d = a.d;
  out.t0 = a.t0;
  out.t1 = a.t1 + (b.t1 - b.t0);
  double split = a.t1, shift = b.t0 - a.t1;
  auto fa = a.map, fb = b.map;
  out.map = [fa, fb, split, shift](double t) {
    return t <= split ? fa(t) : fb(t + shift);
  };
  return out;
}

namespace {

std::vector<double> sorted_phases(const CMat& u) {
  Eigen::ComplexEigenSolver<CMat> es(u, /*computeEigenvectors=*/false);
  std::vector<double> phases(static_cast<std::size_t>(u.rows()));
  for (Eigen::Index i = 0; i < u.rows(); ++i)
    phases[static_cast<std::size_t>(i)] = std::arg(es.eigenvalues()[i]);
  std::sort(phases.begin(), phases.end());
  return phases;
}

double wrap_pi(double x) {
  x = std::fmod(x + kPi, 2.0 * kPi);
  if (x < 0.0) x += 2.0 * kPi;
  return x - kPi;
}

// Signed phase movements matching two sorted phase lists by the cyclic
// rotation of least total movement (the sorted order can only rotate
// under a small perturbation, when a phase wraps past +-pi).
std::vector<double> matched_movements(const std::vector<double>& from,
                                      const std::vector<double>& to) {
  std::size_t m = from.size();
  std::size_t best_rot = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < m; ++r) {
    double cost = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      cost += std::abs(wrap_pi(to[(i + r) % m] - from[i]));
    if (cost < best_cost) { best_cost = cost; best_rot = r; }
  }
  std::vector<double> moves(m);
  for (std::size_t i = 0; i < m; ++i)
    moves[i] = wrap_pi(to[(i + best_rot) % m] - from[i]);
  return moves;
}

// Signed crossings of the arc from p sweeping by move through the
// target phase, half-open at the start so counts add under
// concatenation.  |move| is small, so at most one crossing.
int arc_crossings(double p, double move, double target) {
  if (move > 0.0) {
    double u = target - p;
    while (u <= 0.0) u += 2.0 * kPi;
    return u <= move ? 1 : 0;
  }
  if (move < 0.0) {
    double u = target - p;
    while (u >= 0.0) u -= 2.0 * kPi;
    return u >= move ? -1 : 0;
  }
  return 0;
}

struct CrossingContext {
  const UnitaryPath* path;
  const Tolerances* tol;
};

int count_segment(const CrossingContext& ctx, double a,
                  const std::vector<double>& pa, double b,
                  const std::vector<double>& pb, int depth) {
  auto moves = matched_movements(pa, pb);
  double maxmove = 0.0;
  for (double mv : moves) maxmove = std::max(maxmove, std::abs(mv));
  if (maxmove > ctx.tol->crossing_step && depth < 48) {
    double mid = 0.5 * (a + b);
    auto pm = sorted_phases(ctx.path->at(mid));
    return count_segment(ctx, a, pa, mid, pm, depth + 1) +
           count_segment(ctx, mid, pm, b, pb, depth + 1);
  }
  int total = 0;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    for (double target : {0.0, kPi}) {
      int c = arc_crossings(pa[i], moves[i], target);
      if (c != 0 && std::abs(moves[i]) / (b - a) < ctx.tol->crossing_vel)
        throw std::runtime_error("non-transversal discriminant crossing");
      total += c;
    }
  }
  return total;
}

}  // namespace

void validate_unitary_path(const UnitaryPath& path, const Tolerances& tol) {
  if (path.d == 0 || !path.map || path.t1 <= path.t0)
    throw std::invalid_argument("malformed unitary path");
  auto dim = static_cast<Eigen::Index>(path.d);
  for (int i = 0; i <= 64; ++i) {
    double t = path.t0 + (path.t1 - path.t0) * i / 64.0;
    CMat u = path.at(t);
    if (u.rows() != dim || u.cols() != dim)
      throw std::runtime_error("path sample has wrong size");
    if ((u.adjoint() * u - CMat::Identity(dim, dim)).norm() >
        tol.unitary * static_cast<double>(path.d))
      throw std::runtime_error("path sample is not unitary");
  }
  for (double t : {path.t0, path.t1})
    for (double phi : sorted_phases(path.at(t)))
      if (std::min(std::abs(phi), kPi - std::abs(phi)) < tol.endpoint_margin)
        throw std::runtime_error("path endpoint lies on the discriminant");
}

int crossing_count(const UnitaryPath& path, const Tolerances& tol) {
  validate_unitary_path(path, tol);
  CrossingContext ctx{&path, &tol};
  constexpr int kInitialSlices = 32;
  int total = 0;
  std::vector<double> prev = sorted_phases(path.at(path.t0));
  double ta = path.t0;
  for (int i = 1; i <= kInitialSlices; ++i) {
    double tb = path.t0 + (path.t1 - path.t0) * i / kInitialSlices;
    auto pb = sorted_phases(path.at(tb));
    total += count_segment(ctx, ta, prev, tb, pb, 0);
    ta = tb;
    prev = std::move(pb);
  }
  return total;
}

}  // namespace toric
