#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "ep2/errors.hpp"
#include "ep2/solvers.hpp"
#include "numerics.hpp"
#include "system.hpp"

namespace ep2 {

using detail::Mat;
using detail::Vec;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

GridFunction variational_start(const Parameters& p, const BoundarySpec& bc) {
  const double v = p.a * p.c < 0.0 ? homotopy_start_value(p) : 1.0;
  auto u = GridFunction::constant(p.n, v);
  if (bc.is_dirichlet()) {
    u[0] = bc.dirichlet_data().d0;
    u[p.n] = bc.dirichlet_data().dn;
  }
  return u;
}

}  // namespace

SolveReport variational_solve(const Parameters& p, const BoundarySpec& bc, const SolverConfig& cfg) {
  p.validate();
  cfg.validate();
  const bool minimize = p.a > 0.0 && p.c < 0.0;
  const bool maximize = p.a < 0.0 && p.c > 0.0;
  if (!minimize && !maximize) {
    throw DomainError("variational method needs a > 0 > c or a < 0 < c");
  }
  const double sign = minimize ? 1.0 : -1.0;
  const detail::Layout L(p, bc);
  const int m = L.unknowns();

  auto phi = [&](const Vec& z) { return sign * functional_value(p, bc, L.unpack(z)); };
  auto grad = [&](const Vec& z) {
    const auto g = functional_gradient(p, bc, L.unpack(z));
    return Vec(sign * Eigen::Map<const Vec>(g.data(), static_cast<Eigen::Index>(g.size())));
  };
  // The gradient is -R on every row except the Robin row at N, where it is +R.
  auto hess = [&](const Vec& z) {
    Mat H = -detail::equation_jacobian(p, bc, L, z);
    if (L.robin()) H.row(m - 1) *= -1.0;
    return Mat(sign * H);
  };

  SolveReport rep;
  rep.method = Method::variational;
  Vec z = L.pack(variational_start(p, bc));
  double f = phi(z);
  Vec g = grad(z);
  const double pf = cfg.positivity_fraction;
  const int budget = std::max(cfg.max_iter, 1000);

  int it = 0;
  for (; it < budget && detail::inf_norm(g) > cfg.tol_residual; ++it) {
    Mat H = hess(z);
    const Eigen::SelfAdjointEigenSolver<Mat> es(H, Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    const double shift = lmin > 1e-10 ? 0.0 : 1e-8 - lmin + 1e-8 * es.eigenvalues().cwiseAbs().maxCoeff();
    H.diagonal().array() += shift;
    const auto d = detail::solve_dense(H, -g);
    Vec dir = d ? *d : Vec(-g);
    if (dir.dot(g) >= 0.0) dir = -g;

    double t = 1.0;
    for (int i = 0; i < m; ++i) {
      if (dir[i] < 0.0) t = std::min(t, (1.0 - pf) * z[i] / -dir[i]);
    }
    bool accepted = false;
    const double slope = dir.dot(g);
    const double gnorm = detail::inf_norm(g);
    for (int ls = 0; ls < 60; ++ls, t *= cfg.newton_backtrack_factor) {
      const Vec trial = z + t * dir;
      double ft;
      try {
        ft = phi(trial);
      } catch (const DomainError&) {
        continue;
      }
      if (!std::isfinite(ft)) continue;
      bool ok = ft <= f + 1e-4 * t * slope;
      // Energy differences at rounding level carry no information; fall
      // back to the gradient there.
      if (!ok && std::abs(ft - f) <= 64.0 * kEps * (1.0 + std::abs(f))) {
        ok = detail::inf_norm(grad(trial)) < gnorm;
      }
      if (ok) {
        z = trial;
        f = ft;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      rep.message = "line search stagnated";
      break;
    }
    g = grad(z);
    rep.trace.push_back(detail::trace_entry(z, detail::inf_norm(g), t * detail::inf_norm(dir), 0.0, f));
  }

  rep.iterations = it;
  rep.solution = L.unpack(z);
  rep.residual_inf = residual_inf(p, bc, rep.solution);
  rep.success = rep.residual_inf <= cfg.tol_residual;
  if (!rep.success && rep.message.empty()) rep.message = "iteration budget exhausted";
  if (rep.success) rep.message.clear();
  return rep;
}

}  // namespace ep2
