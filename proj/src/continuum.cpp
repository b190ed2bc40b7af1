#include "ep2/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ep2/analysis.hpp"
#include "ep2/errors.hpp"

namespace ep2 {

namespace {

// Differences below this are rounding noise; no ratio is formed from them.
constexpr double kNoise = 1e-12;

}  // namespace

std::pair<Parameters, BoundarySpec> discretize(const ContinuousParameters& cp, int n) {
  if (n < 2) throw DomainError("N must be >= 2");
  const double n2 = static_cast<double>(n) * n;
  Parameters p{cp.A / n2, cp.B / (n2 * n), cp.C / n2, n};
  return {p, BoundarySpec::dirichlet(cp.y0, cp.y1)};
}

double interpolate(const GridFunction& u, double z) {
  const int n = u.n();
  const double s = std::clamp(z, 0.0, 1.0) * n;
  const int k = std::min(static_cast<int>(std::floor(s)), n - 1);
  const double w = s - k;
  return (1.0 - w) * u[k] + w * u[k + 1];
}

double sup_difference(const GridFunction& u, const GridFunction& v) {
  double d = 0.0;
  for (const auto* g : {&u, &v}) {
    for (int x = 0; x <= g->n(); ++x) {
      const double z = static_cast<double>(x) / g->n();
      d = std::max(d, std::abs(interpolate(u, z) - interpolate(v, z)));
    }
  }
  return d;
}

ConvergenceStudy convergence_study(const ContinuousParameters& cp, const std::vector<int>& ns,
                                   const SolverConfig& cfg) {
  ConvergenceStudy out;
  for (int n : ns) {
    const auto [p, bc] = discretize(cp, n);
    SolveReport rep;
    try {
      rep = solve_auto(p, bc, cfg);
    } catch (const DomainError& e) {
      rep.message = e.what();
    }
    if (!rep.success) {
      out.failed_n = n;
      std::ostringstream os;
      os << "solve failed at N = " << n << ": " << rep.message;
      out.message = os.str();
      return out;
    }
    ConvergenceRow row{n, rep.solution, std::nullopt, std::nullopt};
    if (!out.rows.empty()) {
      const auto& prev = out.rows.back();
      row.sup_diff = sup_difference(prev.solution, row.solution);
      if (prev.sup_diff && *prev.sup_diff > kNoise && *row.sup_diff > 0.0) row.ratio = *prev.sup_diff / *row.sup_diff;
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

double scaled_uniqueness_margin(const ContinuousParameters& cp, int n) {
  const auto p = discretize(cp, n).first;
  const double n3 = static_cast<double>(n) * n * n;
  return uniqueness_condition(p, BoundaryKind::dirichlet).margin * n3;
}

double limiting_uniqueness_margin(const ContinuousParameters& cp) {
  return cp.B - 9.0 * std::cbrt(cp.A * cp.A * cp.C / 4.0) + std::numbers::pi * std::numbers::pi;
}

int beta_cond_failure_n(const ContinuousParameters& cp) {
  if (!(cp.A < 0.0 && cp.C < 0.0 && cp.B > 0.0)) throw DomainError("N0 is defined for A < 0, C < 0 < B");
  const double threshold = 4.0 * cp.B * cp.B * cp.B / (27.0 * -cp.C * cp.A * cp.A);
  int n = std::max(2, static_cast<int>(std::floor(std::cbrt(threshold))) - 1);
  while (static_cast<double>(n) * n * n <= threshold) ++n;
  return n;
}

}  // namespace ep2
