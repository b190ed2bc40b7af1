#include "ep2/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ep2/errors.hpp"
#include "ep2/solvers.hpp"
#include "numerics.hpp"

namespace ep2 {

std::string to_string(ConditionId id) {
  switch (id) {
    case ConditionId::uniq_dirichlet: return "uniq_dirichlet";
    case ConditionId::uniq_robin: return "uniq_robin";
    case ConditionId::beta_cond: return "beta_cond";
    case ConditionId::box_small_c: return "box_small_c";
    case ConditionId::rob_rep_growth: return "rob_rep_growth";
    case ConditionId::homogeneous_regime: return "homogeneous_regime";
    case ConditionId::n2_uniqueness: return "n2_uniqueness";
  }
  return "unknown";
}

std::optional<double> ConditionReport::detail(const std::string& name) const {
  for (const auto& [k, v] : details) {
    if (k == name) return v;
  }
  return std::nullopt;
}

namespace {

ConditionReport make_report(ConditionId id, double margin, bool strict) {
  ConditionReport r;
  r.id = id;
  r.margin = margin;
  r.strict = strict;
  r.holds = strict ? margin > 0.0 : margin >= 0.0;
  return r;
}

// 4b^3 + 27ca^2, snapped to 0 within rounding of its two terms.
double beta_cond_margin(const Parameters& p) {
  const double t1 = 4.0 * p.b * p.b * p.b;
  const double t2 = 27.0 * p.c * p.a * p.a;
  const double m = t1 + t2;
  if (std::abs(m) <= 1e-12 * (std::abs(t1) + std::abs(t2))) return 0.0;
  return m;
}

}  // namespace

double uniqueness_constant(const Parameters& p) {
  p.validate();
  return -9.0 / (p.n - 1) * std::cbrt(p.a * p.a * p.c / 4.0);
}

ConditionReport uniqueness_condition(const Parameters& p, BoundaryKind kind, bool monotonicity_ok) {
  p.validate();
  if (!(p.a > 0.0 && p.c < 0.0)) {
    throw DomainError("uniqueness condition requires a > 0 > c");
  }
  if (kind == BoundaryKind::robin && !monotonicity_ok) {
    throw DomainError("Robin uniqueness requires f0 nondecreasing and fN nonincreasing");
  }
  const double M = uniqueness_constant(p);
  const double l1 = lambda1(p.n);
  ConditionReport r;
  if (kind == BoundaryKind::dirichlet) {
    r = make_report(ConditionId::uniq_dirichlet, p.b + M + l1 / (p.n - 1), true);
  } else {
    r = make_report(ConditionId::uniq_robin, p.b + M, true);
  }
  r.details = {{"M", M}, {"lambda1", l1}};
  return r;
}

double beta_of_b(const Parameters& p) {
  if (!(p.a < 0.0 && p.b > 0.0)) throw DomainError("beta(b) requires a < 0 < b");
  return std::sqrt(-2.0 * p.b / (3.0 * p.a));
}

ConditionReport beta_cond_check(const Parameters& p) {
  p.validate();
  if (!(p.a < 0.0 && p.c < 0.0)) throw DomainError("beta-cond requires a < 0 and c < 0");
  auto r = make_report(ConditionId::beta_cond, beta_cond_margin(p), false);
  r.details.emplace_back("b_threshold", std::cbrt(-27.0 * p.c * p.a * p.a / 4.0));
  if (p.b > 0.0) {
    const double beta = beta_of_b(p);
    r.details.emplace_back("beta_b", beta);
    r.details.emplace_back("G1_beta_b", G(p, 1, beta));
    r.details.emplace_back("c_star", 4.0 * p.b * p.b * p.b / (27.0 * p.a * p.a));
    if (r.holds) {
      const auto ic = interval_Ic(p);
      r.details.emplace_back("Ic_lower", ic.lo);
      r.details.emplace_back("M_c", ic.hi);
    }
  }
  return r;
}

Interval interval_Ic(const Parameters& p) {
  p.validate();
  if (!(p.a < 0.0 && p.b > 0.0 && p.c < 0.0)) throw DomainError("I_c requires a < 0 < b and c < 0");
  const double margin = beta_cond_margin(p);
  if (margin < 0.0) throw HypothesisError("I_c empty: beta-cond 4b^3 >= -27ca^2 violated");
  const double beta = beta_of_b(p);
  if (margin == 0.0) return {beta, beta};
  // phi(z) + c >= 0 in w = z^2:  a w^3 + b w^2 + c >= 0.
  auto cubic = [&](double w) { return ((p.a * w + p.b) * w) * w + p.c; };
  const double wb = beta * beta;
  const double w_lo = detail::bisect(cubic, 0.0, wb);
  double big = 2.0 * wb;
  while (cubic(big) >= 0.0) big *= 2.0;
  const double w_hi = detail::bisect(cubic, wb, big);
  return {std::sqrt(w_lo), std::sqrt(w_hi)};
}

double b_star(const Parameters& p, double boundary_max) {
  if (!(p.a < 0.0 && p.c < 0.0)) throw DomainError("b* requires a < 0 and c < 0");
  const double from_beta_cond = std::cbrt(-27.0 * p.c * p.a * p.a / 4.0);
  const double from_domination = -1.5 * p.a * boundary_max * boundary_max;
  return std::max(from_beta_cond, from_domination);
}

double b_star(const Parameters& p, const BoundarySpec& bc) {
  if (!bc.is_dirichlet()) throw DomainError("b* with Robin data needs an explicit beta target");
  const auto& d = bc.dirichlet_data();
  return b_star(p, std::max(d.d0, d.dn));
}

double c_star(const Parameters& p, const BoundarySpec& bc) {
  const double beta = beta_of_b(p);
  if (bc.is_dirichlet()) {
    const auto& d = bc.dirichlet_data();
    if (beta < std::max(d.d0, d.dn)) {
      throw DomainError("c* requires beta(b) >= max(D0, DN)");
    }
  } else {
    const auto& r = bc.robin_data();
    if (!(r.f0(beta) >= 0.0 && r.fn(beta) <= 0.0)) {
      throw DomainError("c* requires f0(beta(b)) >= 0 >= fN(beta(b))");
    }
  }
  return 4.0 * p.b * p.b * p.b / (27.0 * p.a * p.a);
}

LowerUpperCheck check_lower_upper(const Parameters& p, const BoundarySpec& bc, const GridFunction& alpha,
                                  const GridFunction& beta) {
  p.validate();
  if (alpha.n() != p.n || beta.n() != p.n) throw DomainError("grid size mismatch");
  LowerUpperCheck out;
  const int n = p.n;

  // sign = +1 tests the upper inequalities, -1 the lower ones.
  auto check = [&](const GridFunction& w, int sign, const std::string& which, bool& ok) {
    auto flag = [&](int x, double amount) {
      ok = false;
      out.violations.push_back({which, x, amount});
    };
    for (int x = 1; x < n; ++x) {
      if (!(w[x] > 0.0)) {
        flag(x, std::abs(w[x]));
        continue;
      }
      const double lhs = w[x + 1] - 2.0 * w[x] + w[x - 1];
      const double t3 = w[x] * w[x] * w[x];
      const double rhs = G(p, x, w[x]);
      const double slack =
          1e-12 * (std::abs(w[x + 1]) + 2.0 * std::abs(w[x]) + std::abs(w[x - 1]) +
                   std::abs(p.a * t3) + std::abs(p.b * x * w[x]) + std::abs(p.c / t3));
      const double excess = sign * (lhs - rhs);  // must be <= 0
      if (excess > slack) flag(x, excess);
    }
    if (bc.is_dirichlet()) {
      const auto& d = bc.dirichlet_data();
      const double e0 = sign * (d.d0 - w[0]);
      const double en = sign * (d.dn - w[n]);
      if (e0 > 1e-12 * (1.0 + std::abs(d.d0))) flag(0, e0);
      if (en > 1e-12 * (1.0 + std::abs(d.dn))) flag(n, en);
    } else {
      const auto& r = bc.robin_data();
      if (!(w[0] > 0.0) || !(w[n] > 0.0)) {
        flag(w[0] > 0.0 ? n : 0, 0.0);
        return;
      }
      const double d0 = w[1] - w[0];
      const double dn = w[n] - w[n - 1];
      const double f0 = r.f0(w[0]);
      const double fn = r.fn(w[n]);
      const double e0 = sign * (d0 - f0);   // upper: Dw_0 <= f0(w_0)
      const double en = sign * (fn - dn);   // upper: Dw_{N-1} >= fN(w_N)
      if (e0 > 1e-12 * (std::abs(w[1]) + std::abs(w[0]) + std::abs(f0))) flag(0, e0);
      if (en > 1e-12 * (std::abs(w[n]) + std::abs(w[n - 1]) + std::abs(fn))) flag(n, en);
    }
  };
  check(beta, +1, "upper", out.upper_ok);
  check(alpha, -1, "lower", out.lower_ok);
  return out;
}

N2Analysis n2_analysis(const Parameters& p, const BoundarySpec& bc) {
  p.validate();
  if (p.n != 2) throw DomainError("n2_analysis requires N = 2");
  if (!(p.a < 0.0 && p.c > 0.0)) throw DomainError("n2_analysis requires a < 0 < c");
  const auto& d = bc.dirichlet_data();
  const double s = d.d0 + d.dn;
  if (!(s > 0.0)) throw DomainError("n2_analysis requires D0 + D2 > 0");

  const double T = 2.25 * std::cbrt(-p.a * s * s / 2.0);
  N2Analysis out;
  out.report = make_report(ConditionId::n2_uniqueness, T - (p.b + 2.0), true);

  const double k = 2.0 + p.b;
  auto poly = [&](double t) {
    const double t3 = t * t * t;
    return p.a * t3 * t3 + k * t3 * t - s * t3 + p.c;
  };
  // P_1'(t) = t^2 q(t)
  auto q = [&](double t) { return 6.0 * p.a * t * t * t + 4.0 * k * t - 3.0 * s; };
  if (k > 0.0) {
    const double tq = std::sqrt(2.0 * k / (-9.0 * p.a));
    if (q(tq) > 0.0) {
      double big = 2.0 * tq;
      while (q(big) >= 0.0) big *= 2.0;
      out.critical_points = {detail::bisect(q, 0.0, tq), detail::bisect(q, tq, big)};
    }
  }

  // P_1 is monotone between consecutive critical points; P_1(0) = c > 0 and
  // P_1 -> -inf.
  std::vector<double> knots{0.0};
  knots.insert(knots.end(), out.critical_points.begin(), out.critical_points.end());
  double far = std::max(1.0, knots.back() * 2.0);
  while (poly(far) >= 0.0) far *= 2.0;
  knots.push_back(far);
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double lo = knots[i], hi = knots[i + 1];
    const double flo = poly(lo), fhi = poly(hi);
    if (i > 0 && flo == 0.0) {
      out.roots.push_back(lo);
      continue;
    }
    if ((flo > 0.0 && fhi < 0.0) || (flo < 0.0 && fhi > 0.0)) {
      out.roots.push_back(detail::bisect(poly, lo, hi));
    }
  }
  out.root_count = static_cast<int>(out.roots.size());
  const bool consistent = !out.report.holds || out.root_count == 1;
  out.report.details = {{"T", T},
                        {"root_count", static_cast<double>(out.root_count)},
                        {"count_consistent", consistent ? 1.0 : 0.0}};
  return out;
}

ConditionReport small_c_condition(const Parameters& p, const BoundarySpec& bc) {
  p.validate();
  if (!(p.a > 0.0)) throw DomainError("small-c construction requires a > 0");
  const auto& d = bc.dirichlet_data();
  ConditionReport r;
  if (d.d0 > 0.0 || d.dn > 0.0) {
    r = make_report(ConditionId::box_small_c, std::max(d.d0, d.dn), true);
  } else {
    r = make_report(ConditionId::box_small_c, -2.0 / (p.n - 1) - p.b, true);
  }
  if (r.holds) {
    const auto box = small_c_box(p, bc);
    for (int x = 1; x < p.n; ++x) r.details.emplace_back("eps_" + std::to_string(x), box.eps[x]);
    r.details.emplace_back("R", box.radius);
  }
  return r;
}

ConditionReport homogeneous_condition(const Parameters& p) {
  p.validate();
  ConditionReport r;
  if (p.c >= 0.0) {
    r = make_report(ConditionId::homogeneous_regime, -std::abs(p.c), true);
    r.details.emplace_back("case", 0.0);
  } else if (p.a > 0.0) {
    r = make_report(ConditionId::homogeneous_regime, std::min(p.a, -p.c), true);
    r.details.emplace_back("case", 1.0);
  } else if (p.a == 0.0) {
    r = make_report(ConditionId::homogeneous_regime, std::min(p.b, -p.c), true);
    r.details.emplace_back("case", 2.0);
  } else {
    r = make_report(ConditionId::homogeneous_regime, beta_cond_margin(p), true);
    r.details.emplace_back("case", 3.0);
  }
  return r;
}

ConditionReport rob_rep_condition(const Parameters& p, const BoundarySpec& bc,
                                  const std::vector<double>& radii) {
  p.validate();
  if (!(p.a < 0.0 && p.c > 0.0)) throw DomainError("Robin growth conditions apply to a < 0 < c");
  const auto& r = bc.robin_data();

  std::optional<double> eta;
  for (int k = 0; k <= 60 && !eta; ++k) {
    const double e = std::ldexp(1.0, -k);
    if (r.f0(e) <= 0.0 && r.fn(e) >= 0.0) eta = e;
  }

  std::vector<double> seq = radii;
  if (seq.empty()) {
    for (int k = 0; k <= 40; ++k) seq.push_back(std::ldexp(1.0, k));
  }
  const std::size_t tail = std::min<std::size_t>(10, seq.size());
  double m0 = std::numeric_limits<double>::infinity();
  double mn = std::numeric_limits<double>::infinity();
  for (std::size_t i = seq.size() - tail; i < seq.size(); ++i) {
    const double R = seq[i];
    m0 = std::min(m0, r.f0(R) / R + 1.0);
    mn = std::min(mn, 1.0 - r.fn(R) / R);
  }
  const double growth = std::min(m0, mn);
  auto rep = make_report(ConditionId::rob_rep_growth, eta ? growth : std::min(growth, -1.0), true);
  rep.details = {{"eta_found", eta ? 1.0 : 0.0},
                 {"eta", eta.value_or(0.0)},
                 {"f0_growth_margin", m0},
                 {"fN_growth_margin", mn}};
  return rep;
}

std::vector<ConditionReport> applicable_conditions(const Parameters& p, const BoundarySpec& bc) {
  p.validate();
  std::vector<ConditionReport> out;
  const bool homogeneous = bc.is_homogeneous();
  if (p.c < 0.0) {
    if (p.a > 0.0) {
      if (bc.is_dirichlet()) {
        out.push_back(uniqueness_condition(p, BoundaryKind::dirichlet));
      } else {
        const auto& r = bc.robin_data();
        const bool mono = r.f0.declared_monotonicity() == Monotonicity::nondecreasing &&
                          r.fn.declared_monotonicity() == Monotonicity::nonincreasing &&
                          r.f0.monotonicity_consistent() && r.fn.monotonicity_consistent();
        if (mono) out.push_back(uniqueness_condition(p, BoundaryKind::robin, true));
      }
    } else if (p.a < 0.0) {
      out.push_back(beta_cond_check(p));
    }
    if (homogeneous) out.push_back(homogeneous_condition(p));
  } else if (p.c > 0.0) {
    if (p.a < 0.0) {
      if (bc.is_robin()) {
        out.push_back(rob_rep_condition(p, bc));
      } else if (p.n == 2 && bc.dirichlet_data().d0 + bc.dirichlet_data().dn > 0.0) {
        out.push_back(n2_analysis(p, bc).report);
      }
    } else if (p.a > 0.0 && bc.is_dirichlet()) {
      out.push_back(small_c_condition(p, bc));
    }
  }
  return out;
}

}  // namespace ep2
