#pragma once

// Internal numerical kernels shared by the solvers: linear solves, a damped
// Newton iteration, a predictor-corrector path tracker and scalar bisection.

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ep2/solvers.hpp"

namespace ep2::detail {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Solves J x = rhs by partially pivoted LU after row equilibration. Empty
/// when the equilibrated J is numerically singular (reciprocal condition
/// below 1e-15) or the solution is not finite.
std::optional<Vec> solve_dense(const Mat& J, const Vec& rhs);

/// Thomas algorithm for a tridiagonal system; sub[0] and sup[n-1] unused.
std::vector<double> solve_tridiagonal(std::span<const double> sub, std::span<const double> diag,
                                      std::span<const double> sup, std::span<const double> rhs);

double inf_norm(const Vec& v);

struct NewtonSystem {
  std::function<Vec(const Vec&)> residual;
  std::function<Mat(const Vec&)> jacobian;
};

struct NewtonOptions {
  double tol = 1e-10;
  int max_iter = 200;
  double backtrack = 0.5;
  /// Fraction-to-boundary floor; <= 0 disables the positivity rule.
  double positivity_fraction = 0.1;
  /// Also accept once the Newton step is below step_tol * (1 + |x|_inf).
  double step_tol = 0.0;
  /// Require strict decrease of the residual sup-norm on accepted steps.
  bool monotone = true;
};

struct NewtonOutcome {
  Vec x;
  double residual_inf = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string message;
  std::vector<TraceEntry> trace;
};

NewtonOutcome damped_newton(const NewtonSystem& sys, Vec x0, const NewtonOptions& opt);

/// H(u, s) = 0 tracked for s from 0 to 1.
struct PathSystem {
  std::function<Vec(const Vec&, double)> value;
  std::function<Mat(const Vec&, double)> jacobian;
  std::function<Vec(const Vec&, double)> d_param;
  /// Admissible region (open box); iterates outside are rejected.
  std::function<bool(const Vec&)> inside;
};

struct TrackOptions {
  double initial_step = 0.05;
  double min_step = 1e-6;
  double max_step = 0.25;
  int corrector_iter = 8;
  int max_steps = 100000;
  double corrector_tol = 1e-11;
};

struct TrackOutcome {
  Vec u;
  double reached = 0.0;
  bool completed = false;
  int steps = 0;
  std::string message;
  std::vector<TraceEntry> trace;
};

TrackOutcome track_path(const PathSystem& sys, Vec u0, const TrackOptions& opt);

/// Bisection on a sign change of f over [lo, hi]; runs until the bracket
/// stops shrinking in floating point or its width falls below abs_tol.
double bisect(const std::function<double(double)>& f, double lo, double hi, double abs_tol = 0.0);

TraceEntry trace_entry(const Vec& x, double residual_inf, double step, double parameter = 0.0,
                       double objective = 0.0);

}  // namespace ep2::detail
