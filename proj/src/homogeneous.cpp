#include <algorithm>
#include <cmath>
#include <sstream>

#include "ep2/analysis.hpp"
#include "ep2/errors.hpp"
#include "ep2/solvers.hpp"
#include "numerics.hpp"
#include "system.hpp"

namespace ep2 {

SolveReport homogeneous_limit_solve(const Parameters& p, const SolverConfig& cfg) {
  p.validate();
  cfg.validate();
  const auto regime = homogeneous_condition(p);
  if (!regime.holds) {
    std::ostringstream os;
    os << "homogeneous problem hypotheses fail (case " << *regime.detail("case") << ", margin "
       << regime.margin << ")";
    throw HypothesisError(os.str());
  }

  // r_0: the constant lower solution for unit-scale data.
  const double probe = p.a < 0.0 ? std::min(1.0, beta_of_b(p)) : 1.0;
  const double r0 = build_bounds(p, BoundarySpec::dirichlet(probe, probe)).lower[0];

  SolveReport rep;
  rep.method = Method::homogeneous_limit;
  constexpr int kMaxLevels = 200;
  std::optional<GridFunction> prev;
  bool settled = false;
  double r = r0;
  for (int k = 0; k < kMaxLevels; ++k, r *= 0.5) {
    const auto bc = BoundarySpec::dirichlet(r, r);
    const auto bounds = build_bounds(p, bc);
    auto start = prev ? *prev : bounds.upper;
    start[0] = start[p.n] = r;
    for (int x = 0; x <= p.n; ++x) start[x] = std::clamp(start[x], bounds.lower[x], bounds.upper[x]);
    const auto level = lower_upper_solve(p, bc, bounds.lower, bounds.upper, start, cfg);
    rep.iterations += level.iterations;
    if (!level.success) {
      rep.solution = level.solution;
      rep.residual_inf = level.residual_inf;
      std::ostringstream os;
      os << "level r = " << r << " failed: " << level.message;
      rep.message = os.str();
      return rep;
    }
    for (int x = 1; x < p.n; ++x) {
      if (level.solution[x] < 1e-14) {
        rep.solution = level.solution;
        rep.message = "interior degeneracy";
        return rep;
      }
    }
    double diff = 0.0;
    if (prev) {
      for (int x = 1; x < p.n; ++x) diff = std::max(diff, std::abs(level.solution[x] - (*prev)[x]));
    }
    auto entry = detail::trace_entry(detail::Layout(p, bc).pack(level.solution), level.residual_inf,
                                     prev ? diff : 0.0, r);
    rep.trace.push_back(entry);
    rep.bounds_used = bounds;
    prev = level.solution;
    if (k > 0 && diff < cfg.tol_residual) {
      settled = true;
      break;
    }
  }

  const auto bc0 = BoundarySpec::dirichlet(0.0, 0.0);
  const detail::Layout L(p, bc0);
  auto limit = *prev;
  limit[0] = limit[p.n] = 0.0;
  const auto polish = detail::damped_newton(detail::equation_system(p, bc0, L), L.pack(limit),
                                            detail::newton_options(cfg));
  rep.iterations += polish.iterations;
  rep.solution = L.unpack(polish.x);
  rep.residual_inf = residual_inf(p, bc0, rep.solution);
  if (!rep.solution.is_interior_positive() || rep.solution.min() < 0.0) {
    rep.message = "interior degeneracy";
    return rep;
  }
  rep.success = settled && polish.converged && rep.residual_inf <= cfg.tol_residual;
  if (!rep.success) {
    rep.message = settled ? "limit polish failed: " + polish.message : "r_k sequence did not settle";
  }
  return rep;
}

}  // namespace ep2
