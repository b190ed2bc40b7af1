#include <cmath>
#include <string>

#include "ep2/errors.hpp"
#include "ep2/solvers.hpp"

namespace ep2 {

std::string to_string(Method m) {
  switch (m) {
    case Method::lower_upper: return "lower_upper";
    case Method::newton: return "newton";
    case Method::homotopy: return "homotopy";
    case Method::small_c_homotopy: return "small_c_homotopy";
    case Method::variational: return "variational";
    case Method::homogeneous_limit: return "homogeneous_limit";
  }
  return "unknown";
}

Method method_from_string(const std::string& s) {
  for (auto m : {Method::lower_upper, Method::newton, Method::homotopy, Method::small_c_homotopy,
                 Method::variational, Method::homogeneous_limit}) {
    if (to_string(m) == s) return m;
  }
  throw DomainError("unknown method '" + s + "'");
}

void SolverConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(name) + " must be positive");
  };
  positive(tol_residual, "tol_residual");
  positive(homotopy_initial_step, "homotopy_initial_step");
  positive(homotopy_min_step, "homotopy_min_step");
  if (max_iter <= 0) throw DomainError("max_iter must be positive");
  if (!(newton_backtrack_factor > 0.0 && newton_backtrack_factor < 1.0)) {
    throw DomainError("newton_backtrack_factor must lie in (0, 1)");
  }
  if (!(positivity_fraction > 0.0 && positivity_fraction < 1.0)) {
    throw DomainError("positivity_fraction must lie in (0, 1)");
  }
  for (double r : robin_radii) positive(r, "robin_radii entries");
  if (robin_anchors) {
    positive(robin_anchors->first, "robin anchor r0");
    positive(robin_anchors->second, "robin anchor rN");
  }
}

namespace {

// Interior start for plain Newton: the constant root of a u^6 + c when it
// exists, 1 otherwise.
GridFunction default_start(const Parameters& p, const BoundarySpec& bc) {
  const double v = p.a * p.c < 0.0 ? homotopy_start_value(p) : 1.0;
  auto u = GridFunction::constant(p.n, v);
  if (bc.is_dirichlet()) {
    u[0] = bc.dirichlet_data().d0;
    u[p.n] = bc.dirichlet_data().dn;
  }
  return u;
}

}  // namespace

SolveReport solve_with(Method m, const Parameters& p, const BoundarySpec& bc, const SolverConfig& cfg) {
  switch (m) {
    case Method::lower_upper: {
      const auto b = build_bounds(p, bc);
      return lower_upper_solve(p, bc, b.lower, b.upper, cfg);
    }
    case Method::newton: return newton_solve(p, bc, default_start(p, bc), cfg);
    case Method::homotopy: return homotopy_solve(p, bc, cfg);
    case Method::small_c_homotopy: return small_c_homotopy_solve(p, bc, cfg);
    case Method::variational: return variational_solve(p, bc, cfg);
    case Method::homogeneous_limit:
      if (!bc.is_homogeneous()) throw DomainError("homogeneous_limit needs Dirichlet data D0 = DN = 0");
      return homogeneous_limit_solve(p, cfg);
  }
  throw DomainError("unknown method");
}

namespace {

// Runs a fallback method; a precondition it rejects counts as a failure.
SolveReport attempt(Method m, const Parameters& p, const BoundarySpec& bc, const SolverConfig& cfg) {
  try {
    return solve_with(m, p, bc, cfg);
  } catch (const DomainError& e) {
    SolveReport rep;
    rep.method = m;
    rep.message = e.what();
    return rep;
  }
}

}  // namespace

SolveReport solve_auto(const Parameters& p, const BoundarySpec& bc, const SolverConfig& cfg) {
  p.validate();
  if (p.c == 0.0) throw HypothesisError("c must be nonzero");
  if (p.c < 0.0) {
    if (bc.is_homogeneous()) return homogeneous_limit_solve(p, cfg);
    auto rep = solve_with(Method::lower_upper, p, bc, cfg);
    if (rep.success || !(p.a > 0.0)) return rep;
    for (auto m : {Method::homotopy, Method::variational}) {
      auto alt = attempt(m, p, bc, cfg);
      if (alt.success) return alt;
    }
    return rep;
  }
  if (p.a < 0.0) {
    auto rep = solve_with(Method::homotopy, p, bc, cfg);
    if (rep.success) return rep;
    auto alt = attempt(Method::variational, p, bc, cfg);
    return alt.success ? alt : rep;
  }
  if (p.a > 0.0) return small_c_homotopy_solve(p, bc, cfg);
  throw HypothesisError("no solution method covers a = 0 < c");
}

}  // namespace ep2
