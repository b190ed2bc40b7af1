#include "ep2/errors.hpp"
#include "ep2/solvers.hpp"
#include "numerics.hpp"
#include "system.hpp"

namespace ep2 {

SolveReport newton_solve(const Parameters& p, const BoundarySpec& bc, const GridFunction& u0,
                         const SolverConfig& cfg) {
  p.validate();
  cfg.validate();
  if (u0.n() != p.n) throw DomainError("grid size mismatch");
  const detail::Layout L(p, bc);
  const auto z0 = L.pack(u0);
  for (int i = 0; i < z0.size(); ++i) {
    if (!(z0[i] > 0.0)) {
      throw DomainError("newton_solve needs a strictly positive start (u_" +
                        std::to_string(L.grid_index(i)) + ")");
    }
  }
  const auto out = detail::damped_newton(detail::equation_system(p, bc, L), z0, detail::newton_options(cfg));

  SolveReport rep;
  rep.method = Method::newton;
  rep.solution = L.unpack(out.x);
  rep.iterations = out.iterations;
  rep.trace = out.trace;
  rep.residual_inf = residual_inf(p, bc, rep.solution);
  rep.success = out.converged && rep.residual_inf <= cfg.tol_residual;
  rep.message = rep.success ? "" : (out.message.empty() ? "residual above tolerance" : out.message);
  return rep;
}

}  // namespace ep2
