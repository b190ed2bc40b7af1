#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ep2/difference_calculus.hpp"
#include "ep2/model.hpp"

namespace ep2 {

enum class Method { lower_upper, newton, homotopy, small_c_homotopy, variational, homogeneous_limit };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

struct SolverConfig {
  double tol_residual = 1e-10;
  int max_iter = 200;
  double newton_backtrack_factor = 0.5;
  double homotopy_initial_step = 0.05;
  double homotopy_min_step = 1e-6;
  double positivity_fraction = 0.1;
  /// Radii R_n tried for the Robin growth conditions; empty means 2^k.
  std::vector<double> robin_radii;
  /// Anchors (r_0, r_N) for the small-c Robin box:
  /// f0(r0) + r0 <= 0 <= fN(rN) - rN.
  std::optional<std::pair<double, double>> robin_anchors;

  /// Throws DomainError when a field is out of range.
  void validate() const;
};

/// Componentwise pair lower <= upper on {0..N}.
struct Bounds {
  GridFunction lower;
  GridFunction upper;
};

/// One accepted iterate. `parameter` carries the continuation parameter
/// (lambda or c) for path trackers and is 0 elsewhere; `objective` is the
/// minimized energy for the variational method.
struct TraceEntry {
  double residual_inf = 0.0;
  double min_value = 0.0;
  double max_value = 0.0;
  double step = 0.0;
  double parameter = 0.0;
  double objective = 0.0;
};

struct SolveReport {
  bool success = false;
  std::string message;
  Method method = Method::newton;
  GridFunction solution;
  double residual_inf = 0.0;
  int iterations = 0;
  std::optional<Bounds> bounds_used;
  std::vector<TraceEntry> trace;
  /// Open box the continuation path was confined to.
  std::optional<Bounds> box;
  /// Small-c continuation: largest c for which the root was tracked.
  std::optional<double> c_reached;
};

/// Constant lower and upper solutions for the attractive regime (c < 0).
/// Throws HypothesisError naming the first inequality that fails.
Bounds build_bounds(const Parameters& p, const BoundarySpec& bc);

/// Upper/lower-solution method: solves the truncated problem and checks the
/// result lies in [alpha, beta].
SolveReport lower_upper_solve(const Parameters& p, const BoundarySpec& bc, const GridFunction& alpha,
                              const GridFunction& beta, const SolverConfig& cfg = {});
/// Same with an explicit starting point for the truncated iteration.
SolveReport lower_upper_solve(const Parameters& p, const BoundarySpec& bc, const GridFunction& alpha,
                              const GridFunction& beta, const GridFunction& start,
                              const SolverConfig& cfg);

/// Damped Newton on the full residual, keeping every iterate positive.
SolveReport newton_solve(const Parameters& p, const BoundarySpec& bc, const GridFunction& u0,
                         const SolverConfig& cfg = {});

/// Continuation from the constant root u* = (-c/a)^{1/6} of a u^6 + c.
/// Requires a c < 0.
SolveReport homotopy_solve(const Parameters& p, const BoundarySpec& bc, const SolverConfig& cfg = {});

/// (-c/a)^{1/6}; throws DomainError unless a c < 0.
double homotopy_start_value(const Parameters& p);

/// The box (eps_x, R) used by the small-c construction (a > 0).
struct SmallCBox {
  std::vector<double> eps;  // eps[x] for x = 0..N (ends are 0 for Dirichlet)
  double radius = 0.0;
};

/// Largest t with a t^3 + k t < target on (0, t], shrunk by 0.99.
double small_c_eps(double a, double k, double target);

SmallCBox small_c_box(const Parameters& p, const BoundarySpec& bc, const SolverConfig& cfg = {});

/// Box homotopy to a root of Q, then continuation in c from 0 to p.c.
/// When p.c cannot be reached, returns success = false with c_reached set
/// and the last tracked solution.
SolveReport small_c_homotopy_solve(const Parameters& p, const BoundarySpec& bc,
                                   const SolverConfig& cfg = {});

/// Line-search descent on the energy (minimized for a > 0 > c, maximized
/// for a < 0 < c).
SolveReport variational_solve(const Parameters& p, const BoundarySpec& bc, const SolverConfig& cfg = {});

/// Homogeneous Dirichlet problem u_0 = u_N = 0 as the limit of problems
/// with boundary data r_k = r_0 2^{-k}.
SolveReport homogeneous_limit_solve(const Parameters& p, const SolverConfig& cfg = {});

/// Regime-based dispatch:
///   c < 0, homogeneous Dirichlet  -> homogeneous_limit
///   c < 0                         -> lower_upper (a > 0 falls back to homotopy, then variational)
///   c > 0, a < 0                  -> homotopy, falling back to variational
///   c > 0, a > 0                  -> small_c_homotopy
/// c == 0 and a == 0 < c throw HypothesisError.
SolveReport solve_auto(const Parameters& p, const BoundarySpec& bc, const SolverConfig& cfg = {});

SolveReport solve_with(Method m, const Parameters& p, const BoundarySpec& bc, const SolverConfig& cfg = {});

}  // namespace ep2
