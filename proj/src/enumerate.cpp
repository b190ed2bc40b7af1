#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "ep2/analysis.hpp"
#include "ep2/errors.hpp"

namespace ep2 {

namespace {

constexpr int kMaxEnumerationN = 8;

// Shooting in extended precision. Returns u_0..u_N with u_N as propagated.
std::optional<std::vector<long double>> propagate(const Parameters& p, const BoundarySpec& bc,
                                                  long double t) {
  const int n = p.n;
  std::vector<long double> u(static_cast<std::size_t>(n) + 1);
  if (bc.is_dirichlet()) {
    u[0] = bc.dirichlet_data().d0;
    u[1] = t;
  } else {
    if (!(t > 0.0L)) return std::nullopt;
    u[0] = t;
    u[1] = t + static_cast<long double>(bc.robin_data().f0(static_cast<double>(t)));
  }
  const long double a = p.a, b = p.b, c = p.c;
  for (int x = 1; x < n; ++x) {
    const long double v = u[x];
    if (!(v > 0.0L)) return std::nullopt;
    const long double v3 = v * v * v;
    u[x + 1] = a * v3 + (2.0L + b * x) * v + c / v3 - u[x - 1];
    if (!std::isfinite(static_cast<double>(u[x + 1]))) return std::nullopt;
  }
  if (bc.is_robin() && !(u[n] > 0.0L)) return std::nullopt;
  return u;
}

std::optional<long double> defect(const Parameters& p, const BoundarySpec& bc, long double t) {
  auto u = propagate(p, bc, t);
  if (!u) return std::nullopt;
  const int n = p.n;
  if (bc.is_dirichlet()) return (*u)[n] - bc.dirichlet_data().dn;
  return ((*u)[n] - (*u)[n - 1]) - bc.robin_data().fn(static_cast<double>((*u)[n]));
}

// Defect extended to the whole scan line: a trajectory that reaches a
// nonpositive value undershoots (-inf), one that overflows overshoots (+inf).
long double signed_defect(const Parameters& p, const BoundarySpec& bc, long double t) {
  const int n = p.n;
  long double prev = bc.is_dirichlet() ? static_cast<long double>(bc.dirichlet_data().d0) : t;
  long double cur = bc.is_dirichlet() ? t : t + static_cast<long double>(bc.robin_data().f0(static_cast<double>(t)));
  const long double a = p.a, b = p.b, c = p.c;
  constexpr long double inf = std::numeric_limits<long double>::infinity();
  for (int x = 1; x < n; ++x) {
    if (!(cur > 0.0L)) return -inf;
    const long double v3 = cur * cur * cur;
    const long double next = a * v3 + (2.0L + b * x) * cur + c / v3 - prev;
    if (!std::isfinite(next)) return next > 0.0L ? inf : -inf;
    prev = cur;
    cur = next;
  }
  if (bc.is_dirichlet()) return cur - bc.dirichlet_data().dn;
  if (!(cur > 0.0L)) return -inf;
  return (cur - prev) - bc.robin_data().fn(static_cast<double>(cur));
}

}  // namespace

std::optional<double> shooting_defect(const Parameters& p, const BoundarySpec& bc, double t) {
  p.validate();
  auto d = defect(p, bc, t);
  if (!d) return std::nullopt;
  return static_cast<double>(*d);
}

std::optional<GridFunction> shoot(const Parameters& p, const BoundarySpec& bc, double t) {
  p.validate();
  auto u = propagate(p, bc, t);
  if (!u) return std::nullopt;
  std::vector<double> v(u->begin(), u->end());
  if (bc.is_dirichlet()) v.back() = bc.dirichlet_data().dn;
  return GridFunction(std::move(v));
}

EnumerationResult enumerate_solutions(const Parameters& p, const BoundarySpec& bc, const ScanSpec& scan) {
  p.validate();
  if (p.n > kMaxEnumerationN) {
    throw DomainError("enumeration budget: N <= " + std::to_string(kMaxEnumerationN) + " required");
  }
  if (!(scan.resolution > 0.0) || !(scan.t_max > scan.t_min)) {
    throw DomainError("enumeration scan needs t_min < t_max and resolution > 0");
  }
  const double span = scan.t_max - scan.t_min;
  if (span / scan.resolution > 5e7) throw DomainError("enumeration scan grid too large");

  EnumerationResult out;
  out.scan = scan;
  const int points = static_cast<int>(std::ceil(span / scan.resolution)) + 1;
  out.grid_points = points;

  std::vector<long double> roots;
  auto at = [&](int i) {
    return i + 1 == points ? static_cast<long double>(scan.t_max)
                           : static_cast<long double>(scan.t_min) + static_cast<long double>(i) * scan.resolution;
  };

  long double prev_t = 0.0L, prev_d = 0.0L;
  for (int i = 0; i < points; ++i) {
    const long double t = at(i);
    if (bc.is_robin() && !(t > 0.0L)) continue;
    const long double d = signed_defect(p, bc, t);
    if (std::isnan(d)) continue;
    if (d == 0.0L) {
      roots.push_back(t);
      ++out.brackets_found;
    } else if (i > 0 && prev_d != 0.0L && (d < 0.0L) != (prev_d < 0.0L)) {
      ++out.brackets_found;
      long double lo = prev_t, hi = t, flo = prev_d;
      for (int k = 0; k < 200; ++k) {
        const long double mid = 0.5L * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const long double fm = signed_defect(p, bc, mid);
        if (fm == 0.0L) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0.0L) == (flo < 0.0L)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5L * (lo + hi));
    }
    prev_t = t;
    prev_d = d;
  }

  std::sort(roots.begin(), roots.end());
  for (long double r : roots) {
    const double t = static_cast<double>(r);
    if (!out.solutions.empty() && std::abs(t - out.solutions.back().shooting_parameter) < 1e-9) continue;
    auto u = shoot(p, bc, t);
    if (!u) continue;
    double res = 0.0;
    try {
      res = residual_inf(p, bc, *u);
    } catch (const DomainError&) {
      continue;
    }
    if (res <= 1e-9) out.solutions.push_back({std::move(*u), t, res});
  }
  return out;
}

}  // namespace ep2
