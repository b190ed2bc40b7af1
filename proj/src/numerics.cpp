#include "numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ep2/errors.hpp"

namespace ep2::detail {

std::optional<Vec> solve_dense(const Mat& J, const Vec& rhs) {
  if (!J.allFinite() || !rhs.allFinite()) return std::nullopt;
  // Row equilibration: 1/u^4 terms make raw rows differ by many orders of
  // magnitude without the system being close to singular.
  Vec scale = J.rowwise().lpNorm<Eigen::Infinity>();
  if ((scale.array() <= 0.0).any()) return std::nullopt;
  scale = scale.cwiseInverse();
  Eigen::PartialPivLU<Mat> lu(scale.asDiagonal() * J);
  if (!(lu.rcond() > 1e-15)) return std::nullopt;
  Vec x = lu.solve(scale.asDiagonal() * rhs);
  if (!x.allFinite()) return std::nullopt;
  return x;
}

std::vector<double> solve_tridiagonal(std::span<const double> sub, std::span<const double> diag,
                                      std::span<const double> sup, std::span<const double> rhs) {
  const std::size_t n = diag.size();
  std::vector<double> c(n), d(n), x(n);
  c[0] = n > 1 ? sup[0] / diag[0] : 0.0;
  d[0] = rhs[0] / diag[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double m = diag[i] - sub[i] * c[i - 1];
    c[i] = i + 1 < n ? sup[i] / m : 0.0;
    d[i] = (rhs[i] - sub[i] * d[i - 1]) / m;
  }
  x[n - 1] = d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

double inf_norm(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

TraceEntry trace_entry(const Vec& x, double residual_inf, double step, double parameter,
                       double objective) {
  TraceEntry e;
  e.residual_inf = residual_inf;
  e.min_value = x.size() ? x.minCoeff() : 0.0;
  e.max_value = x.size() ? x.maxCoeff() : 0.0;
  e.step = step;
  e.parameter = parameter;
  e.objective = objective;
  return e;
}

namespace {

// Residual evaluation that maps domain errors and non-finite values to
// "rejected" so a line search can back off.
std::optional<Vec> try_residual(const NewtonSystem& sys, const Vec& x) {
  try {
    Vec F = sys.residual(x);
    if (!F.allFinite()) return std::nullopt;
    return F;
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

}  // namespace

NewtonOutcome damped_newton(const NewtonSystem& sys, Vec x0, const NewtonOptions& opt) {
  NewtonOutcome out;
  out.x = std::move(x0);
  auto F0 = try_residual(sys, out.x);
  if (!F0) {
    out.message = "residual not defined at the starting point";
    out.residual_inf = std::numeric_limits<double>::infinity();
    return out;
  }
  Vec F = *F0;
  out.residual_inf = inf_norm(F);
  out.trace.push_back(trace_entry(out.x, out.residual_inf, 0.0));

  for (int it = 0; it < opt.max_iter; ++it) {
    if (out.residual_inf <= opt.tol) {
      out.converged = true;
      return out;
    }
    auto step = solve_dense(sys.jacobian(out.x), -F);
    if (!step) {
      out.message = "singular Jacobian";
      return out;
    }
    const bool tiny = opt.step_tol > 0.0 &&
                      inf_norm(*step) <= opt.step_tol * (1.0 + inf_norm(out.x));

    double t = 1.0;
    bool accepted = false;
    Vec xn, Fn;
    double rn = 0.0;
    while (t > 1e-14) {
      xn = out.x + t * *step;
      bool positive = true;
      if (opt.positivity_fraction > 0.0) {
        for (Eigen::Index i = 0; i < xn.size(); ++i) {
          if (xn[i] < opt.positivity_fraction * out.x[i]) {
            positive = false;
            break;
          }
        }
      }
      if (positive) {
        if (auto trial = try_residual(sys, xn)) {
          rn = inf_norm(*trial);
          if (!opt.monotone || rn < out.residual_inf || (tiny && rn <= out.residual_inf)) {
            Fn = std::move(*trial);
            accepted = true;
            break;
          }
        }
      }
      t *= opt.backtrack;
    }
    if (!accepted) {
      if (tiny) {
        // Already at the rounding floor.
        out.converged = true;
        return out;
      }
      out.message = "line search stagnated";
      return out;
    }
    out.x = std::move(xn);
    F = std::move(Fn);
    out.residual_inf = rn;
    ++out.iterations;
    out.trace.push_back(trace_entry(out.x, rn, t));
    if (tiny) {
      out.converged = true;
      return out;
    }
  }
  out.converged = out.residual_inf <= opt.tol;
  if (!out.converged) {
    std::ostringstream os;
    os << "iteration budget exhausted (best residual " << out.residual_inf << ")";
    out.message = os.str();
  }
  return out;
}

namespace {

struct Correction {
  Vec u;
  int iterations = 0;
  bool ok = false;
};

Correction correct(const PathSystem& sys, Vec u, double s, const TrackOptions& opt) {
  Correction c;
  for (int k = 0; k < opt.corrector_iter; ++k) {
    Vec H;
    try {
      H = sys.value(u, s);
    } catch (const DomainError&) {
      return c;
    }
    auto step = solve_dense(sys.jacobian(u, s), -H);
    if (!step) return c;
    u += *step;
    c.iterations = k + 1;
    if (!u.allFinite() || !sys.inside(u)) return c;
    if (inf_norm(*step) <= opt.corrector_tol * (1.0 + inf_norm(u))) {
      c.u = std::move(u);
      c.ok = true;
      return c;
    }
  }
  return c;
}

}  // namespace

TrackOutcome track_path(const PathSystem& sys, Vec u0, const TrackOptions& opt) {
  TrackOutcome out;
  out.u = std::move(u0);
  double s = 0.0;
  double h = opt.initial_step;
  int easy = 0;

  // Settle onto the start root.
  if (auto c = correct(sys, out.u, 0.0, opt); c.ok) out.u = c.u;
  if (!sys.inside(out.u)) {
    out.message = "start point outside the admissible box";
    return out;
  }
  out.trace.push_back(trace_entry(out.u, inf_norm(sys.value(out.u, 0.0)), 0.0, 0.0));

  while (s < 1.0 && out.steps < opt.max_steps) {
    h = std::min(h, 1.0 - s);
    Vec tangent = Vec::Zero(out.u.size());
    if (auto t = solve_dense(sys.jacobian(out.u, s), -sys.d_param(out.u, s))) tangent = *t;
    double s1 = s + h;
    if (1.0 - s1 < 1e-14) s1 = 1.0;
    Vec predicted = out.u + (s1 - s) * tangent;

    Correction c;
    if (predicted.allFinite() && sys.inside(predicted)) c = correct(sys, predicted, s1, opt);
    // Guard against jumping to another branch: the correction must stay
    // small relative to the predictor step.
    if (c.ok) {
      const double jump = inf_norm(c.u - predicted);
      const double move = inf_norm(predicted - out.u);
      if (jump > 0.5 * (move + 1e-3 * (1.0 + inf_norm(out.u)))) c.ok = false;
    }
    if (!c.ok) {
      h *= 0.5;
      easy = 0;
      if (h < opt.min_step) {
        std::ostringstream os;
        os << "path lost at parameter " << s;
        out.message = os.str();
        out.reached = s;
        return out;
      }
      continue;
    }
    out.u = std::move(c.u);
    s = s1;
    ++out.steps;
    out.trace.push_back(trace_entry(out.u, inf_norm(sys.value(out.u, s)), h, s));
    if (c.iterations <= 3) {
      if (++easy >= 3) {
        h = std::min(2.0 * h, opt.max_step);
        easy = 0;
      }
    } else {
      easy = 0;
    }
  }
  out.reached = s;
  out.completed = s >= 1.0;
  if (!out.completed) out.message = "step budget exhausted";
  return out;
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double abs_tol) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  const double fhi = f(hi);
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) throw DomainError("bisect: no sign change on bracket");
  for (int i = 0; i < 2000; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi || hi - lo <= abs_tol) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace ep2::detail
