#pragma once

// Packing of grid functions into solver unknowns and the residual system
// of the boundary value problem in those unknowns.

#include "ep2/model.hpp"
#include "numerics.hpp"

namespace ep2::detail {

/// Dirichlet: unknowns are u_1..u_{N-1}, the ends are fixed to the data.
/// Robin: unknowns are u_0..u_N.
class Layout {
 public:
  Layout(const Parameters& p, const BoundarySpec& bc);

  int n() const { return n_; }
  bool robin() const { return robin_; }
  int unknowns() const { return robin_ ? n_ + 1 : n_ - 1; }
  /// Grid index of unknown i.
  int grid_index(int i) const { return robin_ ? i : i + 1; }
  double d0() const { return d0_; }
  double dn() const { return dn_; }

  Vec pack(const GridFunction& u) const;
  GridFunction unpack(const Vec& z) const;

 private:
  int n_;
  bool robin_;
  double d0_ = 0.0, dn_ = 0.0;
};

/// Residual rows matching the unknowns (interior rows for Dirichlet, all
/// rows for Robin). Throws DomainError on nonpositive values.
Vec equation_residual(const Parameters& p, const BoundarySpec& bc, const Layout& L, const Vec& z);
Mat equation_jacobian(const Parameters& p, const BoundarySpec& bc, const Layout& L, const Vec& z);

NewtonSystem equation_system(const Parameters& p, const BoundarySpec& bc, const Layout& L);

NewtonOptions newton_options(const SolverConfig& cfg);

}  // namespace ep2::detail
