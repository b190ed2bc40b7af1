#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ep2/model.hpp"
#include "ep2/solvers.hpp"

namespace ep2 {

/// y'' = A y^3 + B z y + C / y^3 on [0, 1], y(0) = y0, y(1) = y1.
struct ContinuousParameters {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double y0 = 0.0;
  double y1 = 0.0;
};

/// a = A/N^2, b = B/N^3, c = C/N^2, Dirichlet data (y0, y1).
std::pair<Parameters, BoundarySpec> discretize(const ContinuousParameters& cp, int n);

struct ConvergenceRow {
  int n = 0;
  GridFunction solution;
  /// Sup-difference to the previous row on the union of both grids.
  std::optional<double> sup_diff;
  /// previous sup_diff / this sup_diff (absent when the previous one is
  /// at rounding level)
  std::optional<double> ratio;
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  /// Set when the solve at some N failed; rows holds the completed prefix.
  std::optional<int> failed_n;
  std::string message;

  bool ok() const { return !failed_n; }
};

/// Solves the discretized problem (auto dispatch) for each N in order.
ConvergenceStudy convergence_study(const ContinuousParameters& cp, const std::vector<int>& ns,
                                   const SolverConfig& cfg = {});

/// Piecewise-linear interpolant of u on the nodes x/N, evaluated at z in [0, 1].
double interpolate(const GridFunction& u, double z);

/// sup |u - v| over the nodes of both grids, each side interpolated.
double sup_difference(const GridFunction& u, const GridFunction& v);

/// N^3 times the Dirichlet uniqueness margin of the discretized problem.
double scaled_uniqueness_margin(const ContinuousParameters& cp, int n);
/// B - 9 (A^2 C / 4)^{1/3} + pi^2
double limiting_uniqueness_margin(const ContinuousParameters& cp);

/// For A < 0, C < 0 < B: smallest N >= 2 with N^3 > 4B^3 / (27 |C| A^2),
/// beyond which 4b^3 + 27ca^2 < 0.
int beta_cond_failure_n(const ContinuousParameters& cp);

}  // namespace ep2
