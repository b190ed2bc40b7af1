#include "system.hpp"

#include "ep2/errors.hpp"

namespace ep2::detail {

Layout::Layout(const Parameters& p, const BoundarySpec& bc) : n_(p.n), robin_(bc.is_robin()) {
  p.validate();
  if (!robin_) {
    d0_ = bc.dirichlet_data().d0;
    dn_ = bc.dirichlet_data().dn;
  }
}

Vec Layout::pack(const GridFunction& u) const {
  if (u.n() != n_) throw DomainError("grid size mismatch");
  Vec z(unknowns());
  for (int i = 0; i < unknowns(); ++i) z[i] = u[grid_index(i)];
  return z;
}

GridFunction Layout::unpack(const Vec& z) const {
  auto u = GridFunction::constant(n_, 0.0);
  if (!robin_) {
    u[0] = d0_;
    u[n_] = dn_;
  }
  for (int i = 0; i < unknowns(); ++i) u[grid_index(i)] = z[i];
  return u;
}

Vec equation_residual(const Parameters& p, const BoundarySpec& bc, const Layout& L, const Vec& z) {
  const auto r = residual(p, bc, L.unpack(z));
  Vec out(L.unknowns());
  for (int i = 0; i < L.unknowns(); ++i) out[i] = r[L.grid_index(i)];
  return out;
}

Mat equation_jacobian(const Parameters& p, const BoundarySpec& bc, const Layout& L, const Vec& z) {
  const int m = L.unknowns();
  const auto u = L.unpack(z);
  const int n = L.n();
  Mat J = Mat::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    const int x = L.grid_index(i);
    if (x == 0) {
      const auto& f0 = bc.robin_data().f0;
      J(i, i) = -1.0 - f0.derivative(u[0]);
      J(i, i + 1) = 1.0;
    } else if (x == n) {
      const auto& fn = bc.robin_data().fn;
      J(i, i) = 1.0 - fn.derivative(u[n]);
      J(i, i - 1) = -1.0;
    } else {
      J(i, i) = -2.0 - G_prime(p, x, u[x]);
      if (i > 0) J(i, i - 1) = 1.0;
      if (i + 1 < m) J(i, i + 1) = 1.0;
    }
  }
  return J;
}

NewtonSystem equation_system(const Parameters& p, const BoundarySpec& bc, const Layout& L) {
  return NewtonSystem{
      [=](const Vec& z) { return equation_residual(p, bc, L, z); },
      [=](const Vec& z) { return equation_jacobian(p, bc, L, z); },
  };
}

NewtonOptions newton_options(const SolverConfig& cfg) {
  NewtonOptions o;
  o.tol = cfg.tol_residual;
  o.max_iter = cfg.max_iter;
  o.backtrack = cfg.newton_backtrack_factor;
  o.positivity_fraction = cfg.positivity_fraction;
  return o;
}

}  // namespace ep2::detail
