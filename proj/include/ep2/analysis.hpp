#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ep2/difference_calculus.hpp"
#include "ep2/model.hpp"

namespace ep2 {

enum class ConditionId {
  uniq_dirichlet,
  uniq_robin,
  beta_cond,
  box_small_c,
  rob_rep_growth,
  homogeneous_regime,
  n2_uniqueness,
};

std::string to_string(ConditionId id);

/// Evaluated hypothesis. `holds` is `margin > 0` for strict conditions and
/// `margin >= 0` for non-strict ones.
struct ConditionReport {
  ConditionId id = ConditionId::uniq_dirichlet;
  bool holds = false;
  bool strict = true;
  double margin = 0.0;
  std::vector<std::pair<std::string, double>> details;

  std::optional<double> detail(const std::string& name) const;
};

/// M = -(9/(N-1)) (a^2 c / 4)^{1/3} with the real cube root.
double uniqueness_constant(const Parameters& p);

/// Uniqueness criterion for a > 0 > c:
///   Dirichlet: b + M + (4/(N-1)) sin^2(pi/2N) > 0
///   Robin:     b + M > 0 (needs f0 nondecreasing, fN nonincreasing).
ConditionReport uniqueness_condition(const Parameters& p, BoundaryKind kind, bool monotonicity_ok = true);

/// 4b^3 + 27 c a^2 >= 0 for a < 0 < b, c < 0.
ConditionReport beta_cond_check(const Parameters& p);
/// sqrt(-2b / 3a), the maximizer of a z^6 + b z^4.
double beta_of_b(const Parameters& p);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Maximal interval where a z^6 + b z^4 >= -c. Its upper end is M_c.
/// Throws HypothesisError("I_c empty") when the set is empty.
Interval interval_Ic(const Parameters& p);

/// Smallest b with 4b^3 >= -27ca^2 and beta(b) >= boundary_max.
double b_star(const Parameters& p, double boundary_max);
double b_star(const Parameters& p, const BoundarySpec& bc);

/// 4b^3 / (27 a^2): the largest |c| keeping beta-cond.
double c_star(const Parameters& p, const BoundarySpec& bc);

struct Violation {
  std::string which;  // "lower" or "upper"
  int index = 0;
  double amount = 0.0;  // how far the inequality is violated (> 0)
};

struct LowerUpperCheck {
  bool lower_ok = true;
  bool upper_ok = true;
  std::vector<Violation> violations;
};

/// Checks the upper/lower-solution inequalities for alpha and beta.
/// Inequalities are tested with slack 1e-12 times the magnitude of the
/// terms involved so that exact solutions qualify as both.
LowerUpperCheck check_lower_upper(const Parameters& p, const BoundarySpec& bc, const GridFunction& alpha,
                                  const GridFunction& beta);

struct ScanSpec {
  double t_min = 1e-4;
  double t_max = 10.0;
  double resolution = 1e-3;
};

struct EnumeratedSolution {
  GridFunction solution;
  double shooting_parameter = 0.0;
  double residual_inf = 0.0;
};

struct EnumerationResult {
  std::vector<EnumeratedSolution> solutions;
  int grid_points = 0;
  int brackets_found = 0;
  ScanSpec scan;
};

/// Shooting reduction. Dirichlet: u_0 = D_0, u_1 = t, defect u_N - D_N.
/// Robin: u_0 = t, u_1 = t + f0(t), defect Du_{N-1} - fN(u_N).
/// Empty when a value where 1/u^3 or f is evaluated is nonpositive.
std::optional<double> shooting_defect(const Parameters& p, const BoundarySpec& bc, double t);
std::optional<GridFunction> shoot(const Parameters& p, const BoundarySpec& bc, double t);

/// Brute-force oracle: every sign change of the shooting defect on the scan
/// grid, refined by bisection, deduplicated at 1e-9 in t, and kept when the
/// residual is <= 1e-9. A trajectory that breaks down by reaching a
/// nonpositive value counts as an undershoot. N <= 8.
EnumerationResult enumerate_solutions(const Parameters& p, const BoundarySpec& bc, const ScanSpec& scan);

struct N2Analysis {
  ConditionReport report;
  int root_count = 0;
  std::vector<double> roots;
  /// Critical points of P_1 on t > 0 (0 or 2 values).
  std::vector<double> critical_points;
};

/// N = 2, a < 0 < c: positive roots of a t^6 + (2+b) t^4 - (D0+D2) t^3 + c.
N2Analysis n2_analysis(const Parameters& p, const BoundarySpec& bc);

/// Box construction for the small-c theorem; margin is the distance to the
/// failing hypothesis (b < -2/(N-1) when both data vanish).
ConditionReport small_c_condition(const Parameters& p, const BoundarySpec& bc);

/// Hypotheses for the homogeneous Dirichlet problem.
ConditionReport homogeneous_condition(const Parameters& p);

/// Growth hypotheses for the Robin problem with a < 0 < c: margins of
/// f0(R)/R + 1 and 1 - fN(R)/R over the tail of the radius sequence, and
/// existence of a small eta with f0(eta) <= 0 <= fN(eta).
ConditionReport rob_rep_condition(const Parameters& p, const BoundarySpec& bc,
                                  const std::vector<double>& radii = {});

/// Every checker applicable to the parameter regime and boundary kind.
std::vector<ConditionReport> applicable_conditions(const Parameters& p, const BoundarySpec& bc);

}  // namespace ep2
