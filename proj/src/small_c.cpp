#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ep2/errors.hpp"
#include "ep2/solvers.hpp"
#include "numerics.hpp"
#include "system.hpp"

namespace ep2 {

using detail::Mat;
using detail::Vec;

double small_c_eps(double a, double k, double target) {
  if (!(a > 0.0)) throw DomainError("small_c_eps requires a > 0");
  auto h = [&](double t) { return (a * t * t + k) * t - target; };
  // h < 0 on (0, root) and h > 0 beyond it whenever target > 0, or target = 0
  // with k < 0.
  if (target < 0.0 || (target == 0.0 && k >= 0.0)) {
    std::ostringstream os;
    os << "no eps > 0 with a t^3 + " << k << " t < " << target << " near 0";
    throw HypothesisError(os.str());
  }
  const double lo = k < 0.0 ? std::sqrt(-k / (3.0 * a)) : 0.0;
  double hi = std::max(1.0, 2.0 * lo);
  while (h(hi) < 0.0) hi *= 2.0;
  return 0.99 * detail::bisect(h, lo, hi);
}

SmallCBox small_c_box(const Parameters& p, const BoundarySpec& bc, const SolverConfig& cfg) {
  p.validate();
  if (!(p.a > 0.0)) throw DomainError("small-c construction requires a > 0");
  const int n = p.n;
  SmallCBox box;
  box.eps.assign(static_cast<std::size_t>(n) + 1, 0.0);
  auto k = [&](int x) { return 2.0 + p.b * x; };
  auto forward = [&](double first_target) {
    box.eps[1] = small_c_eps(p.a, k(1), first_target);
    for (int x = 2; x < n; ++x) box.eps[x] = small_c_eps(p.a, k(x), box.eps[x - 1]);
  };
  auto backward = [&](double last_target) {
    box.eps[n - 1] = small_c_eps(p.a, k(n - 1), last_target);
    for (int x = n - 2; x >= 1; --x) box.eps[x] = small_c_eps(p.a, k(x), box.eps[x + 1]);
  };

  double floor_r = 1.0;
  if (bc.is_dirichlet()) {
    const auto& d = bc.dirichlet_data();
    if (d.d0 > 0.0) {
      forward(d.d0);
    } else if (d.dn > 0.0) {
      backward(d.dn);
    } else {
      if (!(p.b < -2.0 / (n - 1))) {
        throw HypothesisError("b < -2/(N-1) required when D0 = DN = 0");
      }
      backward(0.0);
    }
    floor_r = std::max({floor_r, d.d0, d.dn});
  } else {
    if (!cfg.robin_anchors) {
      throw HypothesisError("small-c Robin construction needs anchors r0, rN");
    }
    const auto [r0, rn] = *cfg.robin_anchors;
    const auto& r = bc.robin_data();
    if (!(r.f0(r0) + r0 <= 0.0 && r.fn(rn) - rn >= 0.0)) {
      throw HypothesisError("f0(r0) + r0 <= 0 <= fN(rN) - rN violated");
    }
    box.eps[0] = r0;
    box.eps[n] = rn;
    forward(r0);
    floor_r = std::max({floor_r, r0, rn});
  }

  const double eps_max = *std::max_element(box.eps.begin(), box.eps.end());
  double R = std::max(floor_r, 2.0 * eps_max);
  for (int it = 0; it < 200; ++it, R *= 2.0) {
    bool ok = true;
    for (int x = 1; x < n && ok; ++x) ok = p.a * R * R * R + k(x) * R > 2.0 * R;
    if (ok && bc.is_robin()) {
      const auto& r = bc.robin_data();
      ok = r.f0(R) + R > 0.0 && r.fn(R) - R < 0.0;
    }
    if (ok) {
      box.radius = R;
      return box;
    }
  }
  throw HypothesisError("no radius R with a R^3 + (2+bx) R > 2R found");
}

namespace {

// Q~ : interior rows Q_x(u), Robin rows f0(u_0) + u_0 - u_1 and
// -fN(u_N) + u_N - u_{N-1}.
struct ReducedSystem {
  Parameters p;
  BoundarySpec bc;
  detail::Layout L;

  Vec value(const Vec& z) const {
    const auto u = L.unpack(z);
    const int n = p.n;
    Vec q(L.unknowns());
    for (int i = 0; i < L.unknowns(); ++i) {
      const int x = L.grid_index(i);
      if (x == 0) {
        q[i] = bc.robin_data().f0(u[0]) + u[0] - u[1];
      } else if (x == n) {
        q[i] = -bc.robin_data().fn(u[n]) + u[n] - u[n - 1];
      } else {
        const double t = u[x];
        const double t3 = t * t * t;
        q[i] = t3 * (p.a * t3 + (2.0 + p.b * x) * t - (u[x - 1] + u[x + 1]));
      }
    }
    return q;
  }

  Mat jacobian(const Vec& z) const {
    const auto u = L.unpack(z);
    const int n = p.n;
    const int m = L.unknowns();
    Mat J = Mat::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      const int x = L.grid_index(i);
      if (x == 0) {
        J(i, i) = bc.robin_data().f0.derivative(u[0]) + 1.0;
        J(i, i + 1) = -1.0;
      } else if (x == n) {
        J(i, i) = -bc.robin_data().fn.derivative(u[n]) + 1.0;
        J(i, i - 1) = -1.0;
      } else {
        const double t = u[x];
        const double t2 = t * t;
        J(i, i) = 6.0 * p.a * t2 * t2 * t + 4.0 * (2.0 + p.b * x) * t2 * t -
                  3.0 * (u[x - 1] + u[x + 1]) * t2;
        if (i > 0) J(i, i - 1) = -t2 * t;
        if (i + 1 < m) J(i, i + 1) = -t2 * t;
      }
    }
    return J;
  }

  // Rows that receive the constant c.
  Vec c_rows() const {
    Vec e(L.unknowns());
    for (int i = 0; i < L.unknowns(); ++i) {
      const int x = L.grid_index(i);
      e[i] = (x == 0 || x == p.n) ? 0.0 : 1.0;
    }
    return e;
  }
};

}  // namespace

SolveReport small_c_homotopy_solve(const Parameters& p, const BoundarySpec& bc, const SolverConfig& cfg) {
  p.validate();
  cfg.validate();
  if (!(p.a > 0.0 && p.c > 0.0)) throw DomainError("small-c homotopy requires a > 0 and c > 0");
  const auto box = small_c_box(p, bc, cfg);
  const ReducedSystem sys{p, bc, detail::Layout(p, bc)};
  const auto& L = sys.L;
  const int m = L.unknowns();

  Vec lo(m), hi(m), v(m);
  for (int i = 0; i < m; ++i) {
    lo[i] = box.eps[L.grid_index(i)];
    hi[i] = box.radius;
    v[i] = 0.5 * (lo[i] + hi[i]);
  }
  auto inside = [&](const Vec& z) { return (z.array() > lo.array()).all() && (z.array() < hi.array()).all(); };

  SolveReport rep;
  rep.method = Method::small_c_homotopy;
  {
    auto lower = GridFunction::constant(p.n, 0.0);
    for (int x = 0; x <= p.n; ++x) lower[x] = box.eps[x];
    rep.box = Bounds{lower, GridFunction::constant(p.n, box.radius)};
  }

  detail::TrackOptions topt;
  topt.initial_step = cfg.homotopy_initial_step;
  topt.min_step = cfg.homotopy_min_step;

  // Stage 1: lambda Q~ + (1 - lambda)(u - v), from v to a root of Q~.
  const detail::PathSystem to_root{
      [&](const Vec& z, double lam) -> Vec { return lam * sys.value(z) + (1.0 - lam) * (z - v); },
      [&](const Vec& z, double lam) -> Mat {
        return lam * sys.jacobian(z) + (1.0 - lam) * Mat::Identity(m, m);
      },
      [&](const Vec& z, double) -> Vec { return sys.value(z) - (z - v); },
      inside,
  };
  const auto stage1 = detail::track_path(to_root, v, topt);
  rep.trace = stage1.trace;
  rep.iterations = stage1.steps;
  if (!stage1.completed) {
    rep.solution = L.unpack(stage1.u);
    rep.residual_inf = std::numeric_limits<double>::infinity();
    rep.message = "box homotopy: " + stage1.message;
    return rep;
  }

  // Stage 2: Q~ + s c e, s from 0 to 1, while the root stays in the box.
  const Vec e = sys.c_rows();
  const detail::PathSystem in_c{
      [&](const Vec& z, double s) -> Vec { return sys.value(z) + (s * p.c) * e; },
      [&](const Vec& z, double) -> Mat { return sys.jacobian(z); },
      [&](const Vec&, double) -> Vec { return p.c * e; },
      inside,
  };
  const auto stage2 = detail::track_path(in_c, stage1.u, topt);
  rep.iterations += stage2.steps;
  for (std::size_t k = 1; k < stage2.trace.size(); ++k) {
    auto t = stage2.trace[k];
    t.parameter *= p.c;
    rep.trace.push_back(t);
  }

  if (!stage2.completed) {
    Parameters reached = p;
    reached.c = stage2.reached * p.c;
    rep.c_reached = reached.c;
    rep.solution = L.unpack(stage2.u);
    rep.residual_inf = reached.c > 0.0 ? residual_inf(reached, bc, rep.solution)
                                       : std::numeric_limits<double>::infinity();
    std::ostringstream os;
    os << "requested c unreachable; continuation reached c = " << reached.c << " (" << stage2.message << ")";
    rep.message = os.str();
    return rep;
  }

  const auto polish = detail::damped_newton(detail::equation_system(p, bc, L), stage2.u,
                                            detail::newton_options(cfg));
  rep.iterations += polish.iterations;
  rep.c_reached = p.c;
  rep.solution = L.unpack(polish.x);
  rep.residual_inf = residual_inf(p, bc, rep.solution);
  rep.success = polish.converged && rep.residual_inf <= cfg.tol_residual && inside(polish.x);
  if (!rep.success) {
    rep.message = inside(polish.x) ? "polish failed: " + polish.message : "polished root left the box";
  }
  return rep;
}

}  // namespace ep2
