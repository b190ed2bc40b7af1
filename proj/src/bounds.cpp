#include <algorithm>
#include <cmath>
#include <sstream>

#include "ep2/analysis.hpp"
#include "ep2/errors.hpp"
#include "ep2/solvers.hpp"

namespace ep2 {

namespace {

constexpr int kSearchSteps = 80;  // 2^80 either way

bool G_negative_everywhere(const Parameters& p, double t) {
  for (int x = 1; x < p.n; ++x) {
    if (!(G(p, x, t) < 0.0)) return false;
  }
  return true;
}

bool G_positive_everywhere(const Parameters& p, double t) {
  for (int x = 1; x < p.n; ++x) {
    if (!(G(p, x, t) > 0.0)) return false;
  }
  return true;
}

bool lower_boundary_ok(const BoundarySpec& bc, double t) {
  if (bc.is_dirichlet()) {
    const auto& d = bc.dirichlet_data();
    return t <= std::min(d.d0, d.dn);
  }
  const auto& r = bc.robin_data();
  return r.f0(t) <= 0.0 && r.fn(t) >= 0.0;
}

bool upper_boundary_ok(const BoundarySpec& bc, double t) {
  if (bc.is_dirichlet()) {
    const auto& d = bc.dirichlet_data();
    return t >= std::max(d.d0, d.dn);
  }
  const auto& r = bc.robin_data();
  return r.f0(t) >= 0.0 && r.fn(t) <= 0.0;
}

double search_lower(const Parameters& p, const BoundarySpec& bc, double below) {
  double t = std::min(1.0, below);
  for (int k = 0; k < 2 * kSearchSteps; ++k, t *= 0.5) {
    if (t < below && G_negative_everywhere(p, t) && lower_boundary_ok(bc, t)) return t;
  }
  throw HypothesisError(bc.is_dirichlet()
                            ? "no constant lower solution: G_x(alpha) < 0 with alpha <= min(D0, DN) not found"
                            : "no constant lower solution: f0(alpha) <= 0 <= fN(alpha) not found");
}

double search_upper(const Parameters& p, const BoundarySpec& bc) {
  double t = 1.0;
  for (int k = 0; k < kSearchSteps; ++k, t *= 2.0) {
    if (G_positive_everywhere(p, t) && upper_boundary_ok(bc, t)) return t;
  }
  throw HypothesisError(bc.is_dirichlet()
                            ? "no constant upper solution: G_x(beta) > 0 with beta >= max(D0, DN) not found"
                            : "no constant upper solution: f0(beta) >= 0 >= fN(beta) not found");
}

// a < 0 < b: an upper solution must come from I_c.
double upper_from_Ic(const Parameters& p, const BoundarySpec& bc) {
  const auto cond = beta_cond_check(p);
  if (!cond.holds) {
    std::ostringstream os;
    os << "beta-cond: 4b^3 >= -27ca^2 violated (4b^3 + 27ca^2 = " << cond.margin << ")";
    throw HypothesisError(os.str());
  }
  const double beta = beta_of_b(p);
  if (upper_boundary_ok(bc, beta)) return beta;
  const auto ic = interval_Ic(p);
  if (bc.is_dirichlet()) {
    const auto& d = bc.dirichlet_data();
    const double dmax = std::max(d.d0, d.dn);
    if (dmax <= ic.hi) return dmax;
    std::ostringstream os;
    os << "max(D0, DN) = " << dmax << " exceeds M_c = " << ic.hi
       << " (beta(b) >= max(D0, DN) violated)";
    throw HypothesisError(os.str());
  }
  constexpr int kSamples = 1000;
  for (int i = 0; i <= kSamples; ++i) {
    const double t = ic.lo + (ic.hi - ic.lo) * i / kSamples;
    if (t > 0.0 && upper_boundary_ok(bc, t)) return t;
  }
  throw HypothesisError("no beta in I_c with f0(beta) >= 0 >= fN(beta)");
}

}  // namespace

Bounds build_bounds(const Parameters& p, const BoundarySpec& bc) {
  p.validate();
  if (!(p.c < 0.0)) throw DomainError("build_bounds requires the attractive regime c < 0");
  if (bc.is_homogeneous()) {
    throw DomainError("homogeneous Dirichlet data: use the homogeneous-limit solver");
  }

  double beta = 0.0;
  if (p.a > 0.0 || (p.a == 0.0 && p.b > 0.0)) {
    beta = search_upper(p, bc);
  } else if (p.a < 0.0) {
    if (!(p.b > 0.0)) throw HypothesisError("a < 0 requires b > 0 for a constant upper solution");
    beta = upper_from_Ic(p, bc);
  } else {
    throw HypothesisError("a = 0 requires b > 0 for a constant upper solution");
  }

  // alpha strictly below beta; for a > 0 the G-sign search always ends.
  const double alpha = search_lower(p, bc, beta);
  return {GridFunction::constant(p.n, alpha), GridFunction::constant(p.n, beta)};
}

}  // namespace ep2
