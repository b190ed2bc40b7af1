#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ep2/analysis.hpp"
#include "ep2/errors.hpp"
#include "ep2/solvers.hpp"
#include "numerics.hpp"
#include "system.hpp"

namespace ep2 {

using detail::Mat;
using detail::Vec;

double homotopy_start_value(const Parameters& p) {
  if (!(p.a * p.c < 0.0)) throw DomainError("u* = (-c/a)^(1/6) requires a c < 0");
  return std::pow(-p.c / p.a, 1.0 / 6.0);
}

namespace {

// Radius R such that H_lambda(u)_x != 0 whenever u_x = R, for every lambda
// in [0, 1] and neighbours in [0, max(R, D0, DN)].
double dirichlet_radius(const Parameters& p, double dmax, double start) {
  double R = std::max({1.0, 2.0 * start, dmax});
  for (int k = 0; k < 200; ++k, R *= 2.0) {
    bool ok = true;
    for (int x = 1; x < p.n && ok; ++x) {
      const double k2 = 2.0 + p.b * x;
      const double R3 = R * R * R;
      const double R4 = R3 * R;
      const double R6 = R3 * R3;
      if (p.a < 0.0) {
        ok = p.a * R6 + std::max(0.0, k2) * R4 + p.c < 0.0;
      } else {
        const double worst = std::min(0.0, k2 * R4 - 2.0 * std::max(R, dmax) * R3);
        ok = p.a * R6 + worst + p.c > 0.0;
      }
    }
    if (ok) return R;
  }
  throw DomainError("no admissible homotopy radius found");
}

struct Homotopy {
  Parameters p;
  BoundarySpec bc;
  detail::Layout L;

  Vec value(const Vec& z, double lam) const {
    const auto u = L.unpack(z);
    const int n = p.n;
    Vec h(L.unknowns());
    for (int i = 0; i < L.unknowns(); ++i) {
      const int x = L.grid_index(i);
      if (x == 0) {
        h[i] = lam * bc.robin_data().f0(u[0]) + u[0] - u[1];
      } else if (x == n) {
        h[i] = -lam * bc.robin_data().fn(u[n]) + u[n] - u[n - 1];
      } else {
        const double t = u[x];
        const double t3 = t * t * t;
        h[i] = p.a * t3 * t3 + lam * ((2.0 + p.b * x) * t3 * t - (u[x - 1] + u[x + 1]) * t3) + p.c;
      }
    }
    return h;
  }

  Mat jacobian(const Vec& z, double lam) const {
    const auto u = L.unpack(z);
    const int n = p.n;
    const int m = L.unknowns();
    Mat J = Mat::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      const int x = L.grid_index(i);
      if (x == 0) {
        J(i, i) = lam * bc.robin_data().f0.derivative(u[0]) + 1.0;
        J(i, i + 1) = -1.0;
      } else if (x == n) {
        J(i, i) = -lam * bc.robin_data().fn.derivative(u[n]) + 1.0;
        J(i, i - 1) = -1.0;
      } else {
        const double t = u[x];
        const double t2 = t * t;
        J(i, i) = 6.0 * p.a * t2 * t2 * t +
                  lam * (4.0 * (2.0 + p.b * x) * t2 * t - 3.0 * (u[x - 1] + u[x + 1]) * t2);
        if (i > 0) J(i, i - 1) = -lam * t2 * t;
        if (i + 1 < m) J(i, i + 1) = -lam * t2 * t;
      }
    }
    return J;
  }

  Vec d_lambda(const Vec& z, double) const {
    const auto u = L.unpack(z);
    const int n = p.n;
    Vec d(L.unknowns());
    for (int i = 0; i < L.unknowns(); ++i) {
      const int x = L.grid_index(i);
      if (x == 0) {
        d[i] = bc.robin_data().f0(u[0]);
      } else if (x == n) {
        d[i] = -bc.robin_data().fn(u[n]);
      } else {
        const double t = u[x];
        const double t3 = t * t * t;
        d[i] = (2.0 + p.b * x) * t3 * t - (u[x - 1] + u[x + 1]) * t3;
      }
    }
    return d;
  }
};

}  // namespace

SolveReport homotopy_solve(const Parameters& p, const BoundarySpec& bc, const SolverConfig& cfg) {
  p.validate();
  cfg.validate();
  const double start = homotopy_start_value(p);

  double R = 0.0;
  if (bc.is_dirichlet()) {
    const auto& d = bc.dirichlet_data();
    R = dirichlet_radius(p, std::max(d.d0, d.dn), start);
  } else {
    if (!(p.a < 0.0 && p.c > 0.0)) {
      throw DomainError("homotopy with Robin conditions requires a < 0 < c");
    }
    const auto cond = rob_rep_condition(p, bc, cfg.robin_radii);
    if (!cond.holds) {
      std::ostringstream os;
      if (cond.detail("eta_found").value_or(0.0) == 0.0) {
        os << "rob-rep hypotheses: no eta > 0 with f0(eta) <= 0 <= fN(eta)";
      } else {
        os << "rob-rep hypotheses: growth liminf f0(R)/R > -1, limsup fN(R)/R < 1 violated (margin "
           << cond.margin << ")";
      }
      throw HypothesisError(os.str());
    }
    std::vector<double> seq = cfg.robin_radii;
    if (seq.empty()) {
      for (int k = 0; k <= 40; ++k) seq.push_back(std::ldexp(1.0, k));
    }
    const std::size_t tail = std::min<std::size_t>(10, seq.size());
    R = std::max(seq[seq.size() - tail], 10.0 * std::max(1.0, start));
  }

  const Homotopy hom{p, bc, detail::Layout(p, bc)};
  const auto& L = hom.L;
  detail::PathSystem path{
      [&](const Vec& z, double lam) { return hom.value(z, lam); },
      [&](const Vec& z, double lam) { return hom.jacobian(z, lam); },
      [&](const Vec& z, double lam) { return hom.d_lambda(z, lam); },
      [R](const Vec& z) { return (z.array() > 0.0).all() && (z.array() < R).all(); },
  };
  detail::TrackOptions topt;
  topt.initial_step = cfg.homotopy_initial_step;
  topt.min_step = cfg.homotopy_min_step;
  const auto track = detail::track_path(path, Vec::Constant(L.unknowns(), start), topt);

  SolveReport rep;
  rep.method = Method::homotopy;
  rep.trace = track.trace;
  rep.iterations = track.steps;
  rep.box = Bounds{GridFunction::constant(p.n, 0.0), GridFunction::constant(p.n, R)};
  rep.solution = L.unpack(track.u);
  if (!track.completed) {
    std::ostringstream os;
    os << track.message << " (lambda = " << track.reached << ")";
    rep.message = os.str();
    try {
      rep.residual_inf = residual_inf(p, bc, rep.solution);
    } catch (const DomainError&) {
      rep.residual_inf = std::numeric_limits<double>::infinity();
    }
    return rep;
  }

  // Polish on the original equation at lambda = 1.
  const auto polish = detail::damped_newton(detail::equation_system(p, bc, L), track.u,
                                            detail::newton_options(cfg));
  rep.iterations += polish.iterations;
  for (std::size_t k = 1; k < polish.trace.size(); ++k) {
    auto e = polish.trace[k];
    e.parameter = 1.0;
    rep.trace.push_back(e);
  }
  rep.solution = L.unpack(polish.x);
  rep.residual_inf = residual_inf(p, bc, rep.solution);
  rep.success = polish.converged && rep.residual_inf <= cfg.tol_residual;
  if (!rep.success) rep.message = "polish at lambda = 1 failed: " + polish.message;
  return rep;
}

}  // namespace ep2
