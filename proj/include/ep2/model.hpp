#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ep2/difference_calculus.hpp"

namespace ep2 {

enum class Regime { attractive, repulsive, degenerate };

/// Coefficients of  D2u_{x-1} = a u_x^3 + b x u_x + c / u_x^3  on {0..N}.
struct Parameters {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  int n = 2;

  /// c < 0 attractive, c > 0 repulsive, c == 0 degenerate.
  Regime regime() const;
  /// Throws DomainError unless n >= 2.
  void validate() const;
};

enum class Monotonicity { none, nondecreasing, nonincreasing };

struct RobinTerm {
  double coeff = 0.0;
  int exponent = 0;  // in [-3, 3]
};

/// f(s) = sum_k p_k s^{e_k} on s > 0, e_k in {-3..3}.
class RobinFunction {
 public:
  RobinFunction() = default;
  explicit RobinFunction(std::vector<RobinTerm> terms,
                         Monotonicity declared = Monotonicity::none);

  static RobinFunction zero() { return RobinFunction{}; }
  static RobinFunction constant(double value);
  /// p0 + p1 s
  static RobinFunction affine(double p0, double p1,
                              Monotonicity declared = Monotonicity::none);

  double operator()(double s) const;
  double derivative(double s) const;
  /// Antiderivative. Base point 0 when every exponent is >= 0; terms with
  /// exponent <= -1 are integrated from 1 so the value stays finite.
  double antiderivative(double s) const;

  const std::vector<RobinTerm>& terms() const { return terms_; }
  Monotonicity declared_monotonicity() const { return declared_; }

  /// Scans f' on a log grid over (1e-6, 1e6) and checks it does not
  /// contradict the declared monotonicity. Always true for `none`.
  bool monotonicity_consistent() const;

 private:
  std::vector<RobinTerm> terms_;
  Monotonicity declared_ = Monotonicity::none;
};

struct Dirichlet {
  double d0 = 0.0;
  double dn = 0.0;
};

struct Robin {
  RobinFunction f0;
  RobinFunction fn;
};

enum class BoundaryKind { dirichlet, robin };

class BoundarySpec {
 public:
  static BoundarySpec dirichlet(double d0, double dn);
  static BoundarySpec robin(RobinFunction f0, RobinFunction fn);

  BoundaryKind kind() const;
  bool is_dirichlet() const { return kind() == BoundaryKind::dirichlet; }
  bool is_robin() const { return kind() == BoundaryKind::robin; }
  /// Dirichlet with D0 = DN = 0.
  bool is_homogeneous() const;

  const Dirichlet& dirichlet_data() const;
  const Robin& robin_data() const;

 private:
  explicit BoundarySpec(std::variant<Dirichlet, Robin> data) : data_(std::move(data)) {}
  std::variant<Dirichlet, Robin> data_;
};

/// G_x(t) = a t^3 + b x t + c / t^3, t > 0.
double G(const Parameters& p, int x, double t);
/// dG_x/dt
double G_prime(const Parameters& p, int x, double t);

/// Rows 0..N: Dirichlet/Robin rows at the ends, D2u_{x-1} - G_x(u_x) inside.
std::vector<double> residual(const Parameters& p, const BoundarySpec& bc, const GridFunction& u);
double residual_inf(const Parameters& p, const BoundarySpec& bc, const GridFunction& u);

/// Polynomial form P_x(u) = a u^6 + (2+bx) u^4 - (u_{x-1}+u_{x+1}) u^3 + c,
/// x = 1..N-1, with the end values taken from the Dirichlet data.
std::vector<double> P(const Parameters& p, const BoundarySpec& bc, const GridFunction& u);
/// Q_x(u) = P_x(u) - c.
std::vector<double> Q(const Parameters& p, const BoundarySpec& bc, const GridFunction& u);

/// Energy whose critical points are the positive solutions. Dirichlet: the
/// ends are taken from the boundary data. Robin: adds F0(u_0) - FN(u_N).
double functional_value(const Parameters& p, const BoundarySpec& bc, const GridFunction& u);
/// Gradient with respect to the free values: interior u_1..u_{N-1} for
/// Dirichlet (N-1 rows), all of u_0..u_N for Robin (N+1 rows).
std::vector<double> functional_gradient(const Parameters& p, const BoundarySpec& bc,
                                        const GridFunction& u);

/// Magnitude used to scale identity tolerances:
/// 1 + |u|_inf^6 + |c| (min u)^-3 over interior values.
double identity_scale(const Parameters& p, const GridFunction& u);

std::string to_string(Regime r);
std::string to_string(Monotonicity m);
Monotonicity monotonicity_from_string(const std::string& s);

}  // namespace ep2
