#include <doctest.h>

#include <cmath>
#include <random>

#include "ep2/errors.hpp"
#include "ep2/model.hpp"

using namespace ep2;

namespace {

// Horner in w = t^2: (a w^3 + b x w^2 + c) / t^3.
double G_horner(const Parameters& p, int x, double t) {
  const double w = t * t;
  return ((p.a * w + p.b * x) * w * w + p.c) / (w * t);
}

GridFunction random_positive(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> d(0.2, 3.0);
  auto u = GridFunction::constant(n, 1.0);
  for (int x = 0; x <= n; ++x) u[x] = d(rng);
  return u;
}

}  // namespace

TEST_CASE("Parameters") {
  CHECK(Parameters{1, 0, -1, 2}.regime() == Regime::attractive);
  CHECK(Parameters{1, 0, 1, 2}.regime() == Regime::repulsive);
  CHECK(Parameters{1, 0, 0, 2}.regime() == Regime::degenerate);
  CHECK_THROWS_AS(Parameters({1, 0, -1, 1}).validate(), DomainError);
}

TEST_CASE("G") {
  CHECK(G(Parameters{1, 0, -1, 2}, 1, 1.0) == 0.0);
  CHECK(G(Parameters{0, 1, -1, 3}, 2, 1.0) == 1.0);
  CHECK_THROWS_AS(G(Parameters{1, 0, -1, 2}, 1, 0.0), DomainError);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0), t(0.1, 4.0);
  for (int k = 0; k < 500; ++k) {
    const Parameters p{u(rng), u(rng), u(rng), 10};
    const double tt = t(rng);
    const int x = 1 + k % 9;
    const double ref = G_horner(p, x, tt);
    const double mag = std::abs(p.a) * tt * tt * tt + std::abs(p.b) * x * tt + std::abs(p.c) / (tt * tt * tt);
    CHECK(std::abs(G(p, x, tt) - ref) <= 1e-13 * mag);
    const double h = 1e-6 * tt;
    CHECK(G_prime(p, x, tt) == doctest::Approx((G(p, x, tt + h) - G(p, x, tt - h)) / (2 * h)).epsilon(1e-6));
  }
}

TEST_CASE("RobinFunction") {
  const RobinFunction f({{2.0, 1}, {-1.0, -2}, {0.5, 0}});
  CHECK(f(2.0) == doctest::Approx(4.0 - 0.25 + 0.5));
  CHECK(f.derivative(2.0) == doctest::Approx(2.0 + 2.0 / 8.0));
  const double h = 1e-6;
  CHECK((f.antiderivative(1.5 + h) - f.antiderivative(1.5 - h)) / (2 * h) == doctest::Approx(f(1.5)).epsilon(1e-8));
  const RobinFunction g({{1.0, -1}});
  CHECK(g.antiderivative(std::exp(1.0)) == doctest::Approx(1.0));
  CHECK(RobinFunction::affine(1.0, 2.0)(3.0) == 7.0);
  CHECK(RobinFunction::constant(-0.5)(10.0) == -0.5);
  CHECK_THROWS_AS(RobinFunction({{1.0, 4}}), DomainError);
  CHECK(RobinFunction::affine(0.0, 1.0, Monotonicity::nondecreasing).monotonicity_consistent());
  CHECK_FALSE(RobinFunction::affine(0.0, 1.0, Monotonicity::nonincreasing).monotonicity_consistent());
  CHECK_FALSE(RobinFunction({{1.0, 2}, {-1.0, 1}}, Monotonicity::nondecreasing).monotonicity_consistent());
}

TEST_CASE("BoundarySpec") {
  const auto d = BoundarySpec::dirichlet(1.0, 2.0);
  CHECK(d.is_dirichlet());
  CHECK_FALSE(d.is_homogeneous());
  CHECK(BoundarySpec::dirichlet(0.0, 0.0).is_homogeneous());
  CHECK_THROWS_AS(BoundarySpec::dirichlet(-1.0, 1.0), DomainError);
  const auto r = BoundarySpec::robin(RobinFunction::zero(), RobinFunction::zero());
  CHECK(r.is_robin());
  CHECK_FALSE(r.is_homogeneous());
  CHECK_THROWS_AS(r.dirichlet_data(), DomainError);
}

TEST_CASE("residual") {
  const Parameters p{1, 0, -1, 3};
  const auto bc = BoundarySpec::dirichlet(1.0, 1.0);
  for (double v : residual(p, bc, GridFunction::constant(3, 1.0))) CHECK(v == 0.0);

  const auto r = residual(Parameters{1, 0, -1, 2}, BoundarySpec::dirichlet(1, 1), GridFunction{1.0, 2.0, 1.0});
  CHECK(r[1] == doctest::Approx(-9.875));
  CHECK(r[0] == 0.0);
  CHECK(r[2] == 0.0);

  try {
    residual(p, bc, GridFunction{1.0, 1.0, -1.0, 1.0});
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }

  const auto rb = BoundarySpec::robin(RobinFunction::constant(0.5), RobinFunction::affine(0.0, 1.0));
  const GridFunction u{1.0, 2.0, 3.0, 5.0};
  const auto rr = residual(p, rb, u);
  CHECK(rr[0] == doctest::Approx(1.0 - 0.5));
  CHECK(rr[3] == doctest::Approx(2.0 - 5.0));
}

TEST_CASE("P and Q") {
  const Parameters p{1, 0, -1, 2};
  const auto bc = BoundarySpec::dirichlet(1, 1);
  CHECK(P(p, bc, GridFunction{1, 1, 1})[0] == 0.0);
  CHECK(Q(Parameters{1, 0, -1, 2}, bc, GridFunction{1, 1, 1})[0] == 1.0);
  CHECK(P(Parameters{1, 2, -3, 2}, bc, GridFunction{1, 0, 1})[0] == -3.0);
  CHECK(Q(Parameters{1, 2, -3, 2}, bc, GridFunction{1, 0, 1})[0] == 0.0);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> c(-3, 3);
  for (int k = 0; k < 200; ++k) {
    const Parameters q{c(rng), c(rng), c(rng), 2 + k % 8};
    auto u = random_positive(rng, q.n);
    const auto b = BoundarySpec::dirichlet(u[0], u[q.n]);
    const auto pv = P(q, b, u);
    const auto qv = Q(q, b, u);
    const auto rv = residual(q, b, u);
    const double scale = identity_scale(q, u);
    for (int x = 1; x < q.n; ++x) {
      const double u3 = u[x] * u[x] * u[x];
      CHECK(std::abs(pv[x - 1] + u3 * rv[x]) <= 1e-12 * scale * (1 + u3));
      CHECK(qv[x - 1] + q.c == pv[x - 1]);
      if (rv[x] != 0.0) CHECK((pv[x - 1] > 0) == (rv[x] < 0));
    }
  }
}

TEST_CASE("functional value") {
  CHECK(functional_value(Parameters{1, 0, -1, 2}, BoundarySpec::dirichlet(1, 1), GridFunction{1, 1, 1}) ==
        doctest::Approx(0.75));
  CHECK(functional_value(Parameters{0, 0, -2, 2}, BoundarySpec::dirichlet(1, 1), GridFunction{1, 1, 1}) ==
        doctest::Approx(1.0));
  const GridFunction u{1.0, 0.5, 2.0, 1.0};
  const auto bc = BoundarySpec::dirichlet(1, 1);
  const double i1 = functional_value(Parameters{1, 1, -1, 3}, bc, u);
  const double i2 = functional_value(Parameters{1, 1, -2, 3}, bc, u);
  CHECK(i2 - i1 == doctest::Approx(0.5 * (1.0 / 0.25 + 1.0 / 4.0)));
}

TEST_CASE("functional gradient") {
  const Parameters p{1, 0, -1, 4};
  const auto bc = BoundarySpec::dirichlet(1, 1);
  for (double g : functional_gradient(p, bc, GridFunction::constant(4, 1.0))) CHECK(g == 0.0);

  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> c(-3, 3);
  for (int k = 0; k < 300; ++k) {
    const Parameters q{c(rng), c(rng), c(rng), 2 + k % 10};
    auto u = random_positive(rng, q.n);
    const bool robin = k % 2 == 1;
    const auto b = robin ? BoundarySpec::robin(RobinFunction({{c(rng), 1}, {c(rng), -3}}),
                                               RobinFunction({{c(rng), 2}, {c(rng), -1}}))
                         : BoundarySpec::dirichlet(u[0], u[q.n]);
    const auto g = functional_gradient(q, b, u);
    const auto r = residual(q, b, u);
    REQUIRE(g.size() == static_cast<std::size_t>(robin ? q.n + 1 : q.n - 1));
    const int off = robin ? 0 : 1;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const int x = static_cast<int>(i) + off;
      if (x > 0 && x < q.n) CHECK(std::abs(g[i] + r[x]) <= 1e-12 * identity_scale(q, u));
      const double h = 1e-6 * u[x];
      auto up = u, dn = u;
      up[x] += h;
      dn[x] -= h;
      const double fd = (functional_value(q, b, up) - functional_value(q, b, dn)) / (2 * h);
      CHECK(std::abs(fd - g[i]) <= 1e-6 * std::max(1.0, std::abs(g[i])));
    }
  }
}

TEST_CASE("coercivity along rays") {
  const Parameters p{1, 0.5, -1, 4};
  const auto bc = BoundarySpec::dirichlet(1, 1);
  auto u = GridFunction::constant(4, 1.0);
  double prev = functional_value(p, bc, u);
  for (int k = 1; k < 20; ++k) {
    u[2] = std::pow(2.0, k);
    const double v = functional_value(p, bc, u);
    CHECK(v > prev);
    prev = v;
  }
  u[2] = 1.0;
  prev = functional_value(p, bc, u);
  for (int k = 1; k < 20; ++k) {
    u[2] = std::pow(2.0, -k);
    const double v = functional_value(p, bc, u);
    CHECK(v > prev);
    prev = v;
  }
}
