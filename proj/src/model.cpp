#include "ep2/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ep2/errors.hpp"

namespace ep2 {

Regime Parameters::regime() const {
  if (c < 0.0) return Regime::attractive;
  if (c > 0.0) return Regime::repulsive;
  return Regime::degenerate;
}

void Parameters::validate() const {
  if (n < 2) throw DomainError("grid size N must be >= 2, got " + std::to_string(n));
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) {
    throw DomainError("coefficients a, b, c must be finite");
  }
}

// ---------------------------------------------------------------------------
// RobinFunction

RobinFunction::RobinFunction(std::vector<RobinTerm> terms, Monotonicity declared)
    : terms_(std::move(terms)), declared_(declared) {
  for (const auto& t : terms_) {
    if (t.exponent < -3 || t.exponent > 3) {
      throw DomainError("Robin exponent " + std::to_string(t.exponent) +
                        " outside {-3..3}");
    }
  }
}

RobinFunction RobinFunction::constant(double value) {
  return RobinFunction({{value, 0}}, Monotonicity::none);
}

RobinFunction RobinFunction::affine(double p0, double p1, Monotonicity declared) {
  return RobinFunction({{p0, 0}, {p1, 1}}, declared);
}

double RobinFunction::operator()(double s) const {
  double acc = 0.0;
  for (const auto& t : terms_) acc += t.coeff * std::pow(s, t.exponent);
  return acc;
}

double RobinFunction::derivative(double s) const {
  double acc = 0.0;
  for (const auto& t : terms_) {
    if (t.exponent != 0) acc += t.coeff * t.exponent * std::pow(s, t.exponent - 1);
  }
  return acc;
}

double RobinFunction::antiderivative(double s) const {
  double acc = 0.0;
  for (const auto& t : terms_) {
    const int e = t.exponent;
    if (e >= 0) {
      acc += t.coeff * std::pow(s, e + 1) / (e + 1);
    } else if (e == -1) {
      acc += t.coeff * std::log(s);
    } else {
      acc += t.coeff * (std::pow(s, e + 1) - 1.0) / (e + 1);
    }
  }
  return acc;
}

bool RobinFunction::monotonicity_consistent() const {
  if (declared_ == Monotonicity::none) return true;
  constexpr int kPoints = 241;  // 20 per decade over 12 decades
  for (int i = 0; i < kPoints; ++i) {
    const double s = std::pow(10.0, -6.0 + 12.0 * i / (kPoints - 1));
    const double d = derivative(s);
    // Allow rounding noise relative to the largest term of f'.
    double mag = 0.0;
    for (const auto& t : terms_) {
      mag = std::max(mag, std::abs(t.coeff * t.exponent * std::pow(s, t.exponent - 1)));
    }
    const double slack = 1e-12 * mag;
    if (declared_ == Monotonicity::nondecreasing && d < -slack) return false;
    if (declared_ == Monotonicity::nonincreasing && d > slack) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// BoundarySpec

BoundarySpec BoundarySpec::dirichlet(double d0, double dn) {
  if (!(d0 >= 0.0) || !(dn >= 0.0)) {
    throw DomainError("Dirichlet data must be >= 0");
  }
  return BoundarySpec(Dirichlet{d0, dn});
}

BoundarySpec BoundarySpec::robin(RobinFunction f0, RobinFunction fn) {
  return BoundarySpec(Robin{std::move(f0), std::move(fn)});
}

BoundaryKind BoundarySpec::kind() const {
  return std::holds_alternative<Dirichlet>(data_) ? BoundaryKind::dirichlet : BoundaryKind::robin;
}

bool BoundarySpec::is_homogeneous() const {
  if (!is_dirichlet()) return false;
  const auto& d = std::get<Dirichlet>(data_);
  return d.d0 == 0.0 && d.dn == 0.0;
}

const Dirichlet& BoundarySpec::dirichlet_data() const {
  if (!is_dirichlet()) throw DomainError("boundary is not Dirichlet");
  return std::get<Dirichlet>(data_);
}

const Robin& BoundarySpec::robin_data() const {
  if (!is_robin()) throw DomainError("boundary is not Robin");
  return std::get<Robin>(data_);
}

// ---------------------------------------------------------------------------
// Equation

double G(const Parameters& p, int x, double t) {
  if (!(t > 0.0)) throw DomainError("G_x(t) requires t > 0");
  const double t3 = t * t * t;
  return p.a * t3 + p.b * x * t + p.c / t3;
}

double G_prime(const Parameters& p, int x, double t) {
  if (!(t > 0.0)) throw DomainError("G_x'(t) requires t > 0");
  const double t2 = t * t;
  return 3.0 * p.a * t2 + p.b * x - 3.0 * p.c / (t2 * t2);
}

namespace {

void check_grid(const Parameters& p, const GridFunction& u) {
  p.validate();
  if (u.n() != p.n) {
    std::ostringstream os;
    os << "grid function has N = " << u.n() << " but parameters have N = " << p.n;
    throw DomainError(os.str());
  }
}

void check_interior_positive(const GridFunction& u) {
  for (int x = 1; x < u.n(); ++x) {
    if (!(u[x] > 0.0)) {
      std::ostringstream os;
      os << "nonpositive interior value u_" << x << " = " << u[x];
      throw DomainError(os.str());
    }
  }
}

void check_robin_ends(const GridFunction& u) {
  const int n = u.n();
  if (!(u[0] > 0.0)) throw DomainError("nonpositive boundary value u_0 under Robin conditions");
  if (!(u[n] > 0.0)) {
    throw DomainError("nonpositive boundary value u_" + std::to_string(n) +
                      " under Robin conditions");
  }
}

// End values used by the polynomial and energy forms.
std::pair<double, double> ends(const BoundarySpec& bc, const GridFunction& u) {
  if (bc.is_dirichlet()) {
    const auto& d = bc.dirichlet_data();
    return {d.d0, d.dn};
  }
  return {u[0], u[u.n()]};
}

}  // namespace

std::vector<double> residual(const Parameters& p, const BoundarySpec& bc, const GridFunction& u) {
  check_grid(p, u);
  check_interior_positive(u);
  const int n = p.n;
  std::vector<double> r(static_cast<std::size_t>(n) + 1);
  for (int x = 1; x < n; ++x) {
    r[x] = (u[x + 1] - 2.0 * u[x] + u[x - 1]) - G(p, x, u[x]);
  }
  if (bc.is_dirichlet()) {
    const auto& d = bc.dirichlet_data();
    r[0] = u[0] - d.d0;
    r[n] = u[n] - d.dn;
  } else {
    check_robin_ends(u);
    const auto& rb = bc.robin_data();
    r[0] = (u[1] - u[0]) - rb.f0(u[0]);
    r[n] = (u[n] - u[n - 1]) - rb.fn(u[n]);
  }
  return r;
}

double residual_inf(const Parameters& p, const BoundarySpec& bc, const GridFunction& u) {
  return norm_inf(residual(p, bc, u));
}

std::vector<double> P(const Parameters& p, const BoundarySpec& bc, const GridFunction& u) {
  auto q = Q(p, bc, u);
  for (double& v : q) v += p.c;
  return q;
}

std::vector<double> Q(const Parameters& p, const BoundarySpec& bc, const GridFunction& u) {
  check_grid(p, u);
  const auto& d = bc.dirichlet_data();
  const int n = p.n;
  std::vector<double> q(static_cast<std::size_t>(n) - 1);
  auto at = [&](int x) { return x == 0 ? d.d0 : (x == n ? d.dn : u[x]); };
  for (int x = 1; x < n; ++x) {
    const double t = u[x];
    const double t3 = t * t * t;
    q[x - 1] = t3 * (p.a * t3 + (2.0 + p.b * x) * t - (at(x - 1) + at(x + 1)));
  }
  return q;
}

double functional_value(const Parameters& p, const BoundarySpec& bc, const GridFunction& u) {
  check_grid(p, u);
  check_interior_positive(u);
  const int n = p.n;
  const auto [u0, un] = ends(bc, u);
  auto at = [&](int x) { return x == 0 ? u0 : (x == n ? un : u[x]); };
  double kinetic = 0.0;
  for (int x = 1; x <= n; ++x) {
    const double d = at(x) - at(x - 1);
    kinetic += d * d;
  }
  double quartic = 0.0, quadratic = 0.0, singular = 0.0;
  for (int x = 1; x < n; ++x) {
    const double t2 = u[x] * u[x];
    quartic += t2 * t2;
    quadratic += x * t2;
    singular += 1.0 / t2;
  }
  double value = 0.5 * kinetic + 0.25 * p.a * quartic + 0.5 * p.b * quadratic - 0.5 * p.c * singular;
  if (bc.is_robin()) {
    check_robin_ends(u);
    const auto& rb = bc.robin_data();
    value += rb.f0.antiderivative(u0) - rb.fn.antiderivative(un);
  }
  return value;
}

std::vector<double> functional_gradient(const Parameters& p, const BoundarySpec& bc,
                                        const GridFunction& u) {
  check_grid(p, u);
  check_interior_positive(u);
  const int n = p.n;
  const auto [u0, un] = ends(bc, u);
  auto at = [&](int x) { return x == 0 ? u0 : (x == n ? un : u[x]); };
  std::vector<double> interior(static_cast<std::size_t>(n) - 1);
  for (int x = 1; x < n; ++x) {
    interior[x - 1] = 2.0 * u[x] - (at(x - 1) + at(x + 1)) + G(p, x, u[x]);
  }
  if (bc.is_dirichlet()) return interior;

  check_robin_ends(u);
  const auto& rb = bc.robin_data();
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(n) + 1);
  g.push_back(rb.f0(u0) + u0 - u[1]);
  g.insert(g.end(), interior.begin(), interior.end());
  g.push_back(-rb.fn(un) + un - u[n - 1]);
  return g;
}

double identity_scale(const Parameters& p, const GridFunction& u) {
  double umax = 0.0;
  double umin = std::numeric_limits<double>::infinity();
  for (int x = 0; x <= u.n(); ++x) umax = std::max(umax, std::abs(u[x]));
  for (int x = 1; x < u.n(); ++x) umin = std::min(umin, u[x]);
  const double m3 = umax * umax * umax;
  return 1.0 + m3 * m3 + std::abs(p.c) / (umin * umin * umin);
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::attractive: return "attractive";
    case Regime::repulsive: return "repulsive";
    case Regime::degenerate: return "degenerate";
  }
  return "unknown";
}

std::string to_string(Monotonicity m) {
  switch (m) {
    case Monotonicity::none: return "none";
    case Monotonicity::nondecreasing: return "nondecreasing";
    case Monotonicity::nonincreasing: return "nonincreasing";
  }
  return "none";
}

Monotonicity monotonicity_from_string(const std::string& s) {
  if (s == "none") return Monotonicity::none;
  if (s == "nondecreasing") return Monotonicity::nondecreasing;
  if (s == "nonincreasing") return Monotonicity::nonincreasing;
  throw DomainError("unknown monotonicity '" + s + "'");
}

}  // namespace ep2
