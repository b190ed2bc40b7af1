#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ep2/analysis.hpp"
#include "ep2/errors.hpp"
#include "ep2/solvers.hpp"
#include "numerics.hpp"
#include "system.hpp"

namespace ep2 {

using detail::Mat;
using detail::Vec;

namespace {

struct Truncation {
  const GridFunction& lo;
  const GridFunction& hi;

  double clamp(int x, double v) const { return std::max(std::min(v, hi[x]), lo[x]); }
  bool inside(int x, double v) const { return v > lo[x] && v < hi[x]; }
};

// Truncated problem  D2u_{x-1} - u_x = G_x(T_x u_x) - T_x u_x  with the
// boundary rows evaluated at the truncated ends.
Vec truncated_residual(const Parameters& p, const BoundarySpec& bc, const detail::Layout& L,
                       const Truncation& tr, const Vec& z) {
  const auto u = L.unpack(z);
  const int n = p.n;
  Vec r(L.unknowns());
  for (int i = 0; i < L.unknowns(); ++i) {
    const int x = L.grid_index(i);
    if (x == 0) {
      r[i] = (u[1] - u[0]) - bc.robin_data().f0(tr.clamp(0, u[0]));
    } else if (x == n) {
      r[i] = (u[n] - u[n - 1]) - bc.robin_data().fn(tr.clamp(n, u[n]));
    } else {
      const double t = tr.clamp(x, u[x]);
      r[i] = (u[x + 1] - 2.0 * u[x] + u[x - 1]) - u[x] - (G(p, x, t) - t);
    }
  }
  return r;
}

Mat truncated_jacobian(const Parameters& p, const BoundarySpec& bc, const detail::Layout& L,
                       const Truncation& tr, const Vec& z) {
  const auto u = L.unpack(z);
  const int n = p.n;
  const int m = L.unknowns();
  Mat J = Mat::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    const int x = L.grid_index(i);
    if (x == 0) {
      J(i, i) = -1.0 - (tr.inside(0, u[0]) ? bc.robin_data().f0.derivative(u[0]) : 0.0);
      J(i, i + 1) = 1.0;
    } else if (x == n) {
      J(i, i) = 1.0 - (tr.inside(n, u[n]) ? bc.robin_data().fn.derivative(u[n]) : 0.0);
      J(i, i - 1) = -1.0;
    } else {
      J(i, i) = tr.inside(x, u[x]) ? -2.0 - G_prime(p, x, u[x]) : -3.0;
      if (i > 0) J(i, i - 1) = 1.0;
      if (i + 1 < m) J(i, i + 1) = 1.0;
    }
  }
  return J;
}

// Shift K >= sup G_x' on [alpha_x, beta_x] (at least 1) making the Picard map
// v -> u, (D2 - K) u = G(Tv) - K Tv, order preserving.
double picard_shift(const Parameters& p, const Truncation& tr) {
  double k = 1.0;
  constexpr int kSamples = 32;
  for (int x = 1; x < p.n; ++x) {
    for (int s = 0; s <= kSamples; ++s) {
      const double t = tr.lo[x] + (tr.hi[x] - tr.lo[x]) * s / kSamples;
      if (t > 0.0) k = std::max(k, G_prime(p, x, t));
    }
  }
  return k;
}

// One Picard sweep with a tridiagonal solve.
Vec picard_step(const Parameters& p, const BoundarySpec& bc, const detail::Layout& L,
                const Truncation& tr, double shift, const Vec& z) {
  const auto v = L.unpack(z);
  const int n = p.n;
  const int m = L.unknowns();
  std::vector<double> sub(m, 0.0), diag(m, 0.0), sup(m, 0.0), rhs(m, 0.0);
  for (int i = 0; i < m; ++i) {
    const int x = L.grid_index(i);
    if (x == 0) {
      diag[i] = -1.0;
      sup[i] = 1.0;
      rhs[i] = bc.robin_data().f0(tr.clamp(0, v[0]));
    } else if (x == n) {
      sub[i] = -1.0;
      diag[i] = 1.0;
      rhs[i] = bc.robin_data().fn(tr.clamp(n, v[n]));
    } else {
      const double t = tr.clamp(x, v[x]);
      sub[i] = 1.0;
      sup[i] = 1.0;
      diag[i] = -2.0 - shift;
      rhs[i] = G(p, x, t) - shift * t;
      if (!L.robin()) {
        if (x == 1) rhs[i] -= L.d0();
        if (x == n - 1) rhs[i] -= L.dn();
      }
    }
  }
  const auto u = detail::solve_tridiagonal(sub, diag, sup, rhs);
  return Eigen::Map<const Vec>(u.data(), m);
}

}  // namespace

SolveReport lower_upper_solve(const Parameters& p, const BoundarySpec& bc, const GridFunction& alpha,
                              const GridFunction& beta, const SolverConfig& cfg) {
  auto mid = alpha;
  for (int x = 0; x <= alpha.n(); ++x) mid[x] = 0.5 * (alpha[x] + beta[x]);
  return lower_upper_solve(p, bc, alpha, beta, mid, cfg);
}

SolveReport lower_upper_solve(const Parameters& p, const BoundarySpec& bc, const GridFunction& alpha,
                              const GridFunction& beta, const GridFunction& start,
                              const SolverConfig& cfg) {
  p.validate();
  cfg.validate();
  if (alpha.n() != p.n || beta.n() != p.n || start.n() != p.n) throw DomainError("grid size mismatch");
  if (bc.is_homogeneous()) {
    throw DomainError("homogeneous Dirichlet data: use the homogeneous-limit solver");
  }
  for (int x = 0; x <= p.n; ++x) {
    if (!(alpha[x] <= beta[x])) {
      throw DomainError("lower solution exceeds upper solution at x = " + std::to_string(x));
    }
  }
  const auto check = check_lower_upper(p, bc, alpha, beta);
  if (!check.lower_ok || !check.upper_ok) {
    const auto& v = check.violations.front();
    std::ostringstream os;
    os << "not a valid " << v.which << " solution at x = " << v.index << " (violation " << v.amount << ")";
    throw HypothesisError(os.str());
  }

  const detail::Layout L(p, bc);
  const Truncation tr{alpha, beta};
  const detail::NewtonSystem truncated{
      [&](const Vec& z) { return truncated_residual(p, bc, L, tr, z); },
      [&](const Vec& z) { return truncated_jacobian(p, bc, L, tr, z); },
  };
  auto opts = detail::newton_options(cfg);
  opts.positivity_fraction = 0.0;  // the truncation keeps every evaluation in [alpha, beta]

  Vec z = L.pack(start);
  for (int i = 0; i < L.unknowns(); ++i) z[i] = tr.clamp(L.grid_index(i), z[i]);

  SolveReport rep;
  rep.method = Method::lower_upper;
  rep.bounds_used = Bounds{alpha, beta};

  auto newton = detail::damped_newton(truncated, z, opts);
  rep.iterations = newton.iterations;
  rep.trace = newton.trace;
  bool converged = newton.converged;
  z = newton.x;
  double best = newton.residual_inf;

  if (!converged) {
    // Picard fallback with periodic Newton restarts.
    const double shift = picard_shift(p, tr);
    const int budget = std::max(20000, 100 * cfg.max_iter);
    Vec v = newton.residual_inf < detail::inf_norm(truncated.residual(L.pack(start))) ? newton.x : L.pack(start);
    auto short_opts = opts;
    short_opts.max_iter = 30;
    for (int k = 1; k <= budget && !converged; ++k) {
      v = picard_step(p, bc, L, tr, shift, v);
      ++rep.iterations;
      if (k % 25 == 0) {
        const double r = detail::inf_norm(truncated.residual(v));
        rep.trace.push_back(detail::trace_entry(v, r, 1.0));
        best = std::min(best, r);
        if (r <= cfg.tol_residual) {
          z = v;
          converged = true;
          break;
        }
        auto polish = detail::damped_newton(truncated, v, short_opts);
        if (polish.converged) {
          rep.iterations += polish.iterations;
          z = polish.x;
          converged = true;
          break;
        }
      }
    }
  }

  rep.solution = L.unpack(z);
  if (!converged) {
    std::ostringstream os;
    os << "iteration budget exhausted (best residual " << best << ")";
    rep.message = os.str();
    rep.residual_inf = best;
    return rep;
  }

  // The truncated solution solves the original problem once it lies in
  // [alpha, beta].
  for (int x = 0; x <= p.n; ++x) {
    const double slack = 1e-12 * (1.0 + std::abs(beta[x]));
    if (rep.solution[x] < alpha[x] - slack || rep.solution[x] > beta[x] + slack) {
      std::ostringstream os;
      os << "internal error: truncated solution leaves [alpha, beta] at x = " << x;
      throw std::logic_error(os.str());
    }
  }
  rep.residual_inf = residual_inf(p, bc, rep.solution);
  rep.success = rep.residual_inf <= cfg.tol_residual;
  if (!rep.success) rep.message = "residual above tolerance after truncation check";
  return rep;
}

}  // namespace ep2
