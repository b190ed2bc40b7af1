#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ep2/analysis.hpp"
#include "ep2/errors.hpp"
#include "ep2/solvers.hpp"

using namespace ep2;

namespace {

// Positive roots of a t^6 + k t^4 - s t^3 + c by dense sampling and sign changes.
int count_p1_roots(double a, double k, double s, double c) {
  auto f = [&](double t) { return a * std::pow(t, 6) + k * std::pow(t, 4) - s * std::pow(t, 3) + c; };
  int count = 0;
  double prev = f(1e-6);
  for (int i = 1; i <= 400000; ++i) {
    const double t = 1e-6 + i * 1e-5;
    const double v = f(t);
    if ((v < 0) != (prev < 0)) ++count;
    prev = v;
  }
  return count;
}

}  // namespace

TEST_CASE("uniqueness condition") {
  const Parameters p{1, 0, -4, 4};
  CHECK(uniqueness_constant(p) == doctest::Approx(3.0));
  const auto r = uniqueness_condition(p, BoundaryKind::dirichlet);
  const double s = std::sin(std::numbers::pi / 8.0);
  CHECK(r.margin == doctest::Approx(3.0 + 4.0 / 3.0 * s * s));
  CHECK(r.margin == doctest::Approx(3.1953).epsilon(1e-4));
  CHECK(r.holds);
  CHECK(*r.detail("M") == doctest::Approx(3.0));
  const auto rr = uniqueness_condition(Parameters{1, -3.5, -4, 4}, BoundaryKind::robin, true);
  CHECK(rr.margin == doctest::Approx(-0.5));
  CHECK_FALSE(rr.holds);
  CHECK_THROWS_AS(uniqueness_condition(Parameters{1, 0, 1, 4}, BoundaryKind::dirichlet), DomainError);
  CHECK_THROWS_AS(uniqueness_condition(p, BoundaryKind::robin, false), DomainError);

  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ua(0.01, 5), uc(-5, -0.01);
  for (int k = 0; k < 100; ++k) CHECK(uniqueness_constant(Parameters{ua(rng), 0, uc(rng), 2 + k % 20}) > 0.0);
}

TEST_CASE("beta-cond") {
  CHECK(beta_of_b(Parameters{-1, 1.5, -1, 4}) == doctest::Approx(1.0));
  const auto fail = beta_cond_check(Parameters{-1, 1, -1, 4});
  CHECK(fail.margin == doctest::Approx(-23.0));
  CHECK_FALSE(fail.holds);
  const auto edge = beta_cond_check(Parameters{-1, 1.5, -0.5, 4});
  CHECK(edge.margin == 0.0);
  CHECK(edge.holds);
  CHECK_FALSE(edge.strict);
  const double bt = std::cbrt(27.0 / 4.0);
  CHECK(bt == doctest::Approx(1.88988).epsilon(1e-5));
  CHECK(beta_cond_check(Parameters{-1, bt * (1 + 1e-6), -1, 4}).holds);
  CHECK_FALSE(beta_cond_check(Parameters{-1, bt * (1 - 1e-6), -1, 4}).holds);

  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> ua(-3, -0.1), ub(0.1, 3), uc(-3, -0.01);
  for (int k = 0; k < 200; ++k) {
    const Parameters p{ua(rng), ub(rng), uc(rng), 4};
    const double beta = beta_of_b(p);
    const double g1 = p.a * std::pow(beta, 3) + p.b * beta + p.c / std::pow(beta, 3);
    const double m = beta_cond_check(p).margin;
    if (std::abs(g1) > 1e-12) CHECK((g1 > 0) == (m > 0));
  }
  CHECK_THROWS_AS(beta_cond_check(Parameters{1, 1, -1, 4}), DomainError);
}

TEST_CASE("interval I_c") {
  const auto ic = interval_Ic(Parameters{-1, 2, -1, 4});
  CHECK(ic.lo == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(ic.hi - std::sqrt((1 + std::sqrt(5.0)) / 2)) <= 1e-10);

  const double bt = std::cbrt(27.0 / 4.0);
  const Parameters tangent{-1, bt, -1, 4};
  const auto pt = interval_Ic(tangent);
  CHECK(pt.lo == doctest::Approx(beta_of_b(tangent)).epsilon(1e-6));
  CHECK(pt.hi == doctest::Approx(beta_of_b(tangent)).epsilon(1e-6));
  CHECK_THROWS_AS(interval_Ic(Parameters{-1, 1, -1, 4}), HypothesisError);

  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ua(-3, -0.2), uc(-2, -0.05), ue(0.05, 3);
  for (int k = 0; k < 20; ++k) {
    Parameters p{ua(rng), 0, uc(rng), 4};
    p.b = std::cbrt(-27 * p.c * p.a * p.a / 4) + ue(rng);
    const auto iv = interval_Ic(p);
    auto phi = [&](double z) { return p.a * std::pow(z, 6) + p.b * std::pow(z, 4) + p.c; };
    for (int i = 0; i < 50; ++i) CHECK(phi(iv.lo + (iv.hi - iv.lo) * i / 49.0) >= -1e-12);
    CHECK(phi(iv.lo - 1e-6) < 0);
    CHECK(phi(iv.hi + 1e-6) < 0);
    CHECK((beta_of_b(p) >= iv.lo && beta_of_b(p) <= iv.hi));
  }
}

TEST_CASE("b* and c*") {
  const Parameters p{-1, 0, -1, 4};
  CHECK(b_star(p, BoundarySpec::dirichlet(0.5, 0.5)) == doctest::Approx(std::cbrt(27.0 / 4.0)));
  CHECK(b_star(p, BoundarySpec::dirichlet(2.0, 1.0)) == doctest::Approx(6.0));
  CHECK(c_star(Parameters{-1, 3, -1, 4}, BoundarySpec::dirichlet(1, 1)) == doctest::Approx(4.0));
  CHECK(c_star(Parameters{-2, 3, -1, 4}, BoundarySpec::dirichlet(1, 1)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(c_star(Parameters{-1, 3, -1, 4}, BoundarySpec::dirichlet(5, 1)), DomainError);
  CHECK(beta_cond_check(Parameters{-1, 3, -3.99, 4}).holds);
  CHECK(beta_cond_check(Parameters{-1, 3, -4, 4}).margin == 0.0);

  // Tightness around b* when the D-domination constraint binds.
  const auto bc = BoundarySpec::dirichlet(2.0, 1.0);
  const double bs = b_star(p, bc);
  CHECK_NOTHROW(build_bounds(Parameters{-1, bs * (1 + 1e-6), -1, 4}, bc));
  CHECK(beta_of_b(Parameters{-1, bs * (1 + 1e-6), -1, 4}) >= 2.0);
  CHECK(beta_of_b(Parameters{-1, bs * (1 - 1e-6), -1, 4}) < 2.0);
}

TEST_CASE("check_lower_upper") {
  const Parameters p{1, 0, -1, 3};
  const auto bc = BoundarySpec::dirichlet(1, 1);
  const auto ok = check_lower_upper(p, bc, GridFunction::constant(3, 0.5), GridFunction::constant(3, 2.0));
  CHECK(ok.lower_ok);
  CHECK(ok.upper_ok);
  CHECK(ok.violations.empty());
  const auto exact = check_lower_upper(p, bc, GridFunction::constant(3, 1.0), GridFunction::constant(3, 1.0));
  CHECK(exact.lower_ok);
  CHECK(exact.upper_ok);
  const auto bad = check_lower_upper(p, bc, GridFunction::constant(3, 1.5), GridFunction::constant(3, 0.9));
  CHECK_FALSE(bad.lower_ok);
  CHECK_FALSE(bad.upper_ok);
  REQUIRE_FALSE(bad.violations.empty());
  CHECK(bad.violations.front().amount > 0.0);
}

TEST_CASE("enumeration oracle") {
  for (int n = 2; n <= 8; ++n) {
    const auto res = enumerate_solutions(Parameters{1, 0, -1, n}, BoundarySpec::dirichlet(1, 1), {});
    bool found = false;
    for (const auto& s : res.solutions) {
      double d = 0.0;
      for (int x = 0; x <= n; ++x) d = std::max(d, std::abs(s.solution[x] - 1.0));
      found = found || d <= 1e-9;
      CHECK(s.residual_inf <= 1e-9);
    }
    CHECK(found);
  }
  CHECK_THROWS_AS(enumerate_solutions(Parameters{1, 0, -1, 9}, BoundarySpec::dirichlet(1, 1), {}), DomainError);

  // N = 2 against direct polynomial root counting.
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> ua(-3, -0.3), ub(-1, 4), uc(0.01, 3), ud(0.2, 1.5);
  for (int k = 0; k < 15; ++k) {
    const Parameters p{ua(rng), ub(rng), uc(rng), 2};
    const double d0 = ud(rng), d2 = ud(rng);
    const auto res = enumerate_solutions(p, BoundarySpec::dirichlet(d0, d2), {1e-4, 4.0, 1e-3});
    CHECK(static_cast<int>(res.solutions.size()) == count_p1_roots(p.a, 2 + p.b, d0 + d2, p.c));
  }

  const auto none = enumerate_solutions(Parameters{-1, 0, -100, 2}, BoundarySpec::dirichlet(1, 1), {1e-4, 10, 1e-3});
  CHECK(count_p1_roots(-1, 2, 2, -100) == 0);
  CHECK(none.solutions.empty());
  CHECK(none.grid_points > 0);

  const auto sh = shoot(Parameters{1, 0, -1, 3}, BoundarySpec::dirichlet(1, 1), 1.0);
  REQUIRE(sh.has_value());
  CHECK(*sh == GridFunction::constant(3, 1.0));
  CHECK(shooting_defect(Parameters{1, 0, -1, 3}, BoundarySpec::dirichlet(1, 1), 1.0).value() == 0.0);
}

TEST_CASE("N = 2 analysis") {
  const auto bc = BoundarySpec::dirichlet(1, 1);
  const auto r = n2_analysis(Parameters{-2, 0, 1, 2}, bc);
  CHECK(*r.report.detail("T") == doctest::Approx(2.25 * std::cbrt(4.0)));
  CHECK(r.report.margin == doctest::Approx(1.5716).epsilon(1e-4));
  CHECK(r.report.holds);
  CHECK(r.root_count == 1);

  const double T = 2.25 * std::cbrt(4.0);
  const Parameters tangent{-2, T - 2.0, 1, 2};
  const double k = 2 + tangent.b;
  const double u = std::sqrt(2 * k / (-9 * tangent.a));
  CHECK(std::abs(6 * tangent.a * u * u * u + 4 * k * u - 6.0) <= 1e-12);

  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> ub(-1, 5), lc(-3, 3);
  for (int i = 0; i < 40; ++i) {
    const Parameters p{-2, ub(rng), std::pow(10.0, lc(rng)), 2};
    const auto a = n2_analysis(p, bc);
    CHECK(a.root_count <= 3);
    CHECK(a.root_count == count_p1_roots(p.a, 2 + p.b, 2.0, p.c));
    if (a.report.holds) CHECK(a.root_count == 1);
  }
  CHECK_THROWS_AS(n2_analysis(Parameters{-2, 0, 1, 3}, bc), DomainError);
  CHECK_THROWS_AS(n2_analysis(Parameters{2, 0, 1, 2}, bc), DomainError);
}

TEST_CASE("other checkers") {
  CHECK(small_c_condition(Parameters{1, -1, 0.1, 3}, BoundarySpec::dirichlet(1, 0)).holds);
  CHECK_FALSE(small_c_condition(Parameters{1, -1, 0.1, 3}, BoundarySpec::dirichlet(0, 0)).holds);
  CHECK(small_c_condition(Parameters{1, -1.2, 0.1, 3}, BoundarySpec::dirichlet(0, 0)).holds);

  CHECK(homogeneous_condition(Parameters{1, 0, -1, 4}).holds);
  CHECK(homogeneous_condition(Parameters{0, 1, -1, 4}).holds);
  CHECK_FALSE(homogeneous_condition(Parameters{0, -1, -1, 4}).holds);
  CHECK_FALSE(homogeneous_condition(Parameters{-1, 1.5, -0.5, 4}).holds);
  CHECK(homogeneous_condition(Parameters{-1, 3, -1, 4}).holds);
  CHECK_FALSE(homogeneous_condition(Parameters{1, 0, 1, 4}).holds);

  const Parameters rep{-1, 0, 1, 4};
  const auto good = rob_rep_condition(rep, BoundarySpec::robin(RobinFunction::affine(-1, 1), RobinFunction::affine(1, -1)));
  CHECK(good.holds);
  CHECK(*good.detail("eta_found") == 1.0);
  const auto steep = rob_rep_condition(rep, BoundarySpec::robin(RobinFunction::affine(-1, -2), RobinFunction::affine(1, -1)));
  CHECK_FALSE(steep.holds);

  const auto conds = applicable_conditions(Parameters{1, 0, -1, 4}, BoundarySpec::dirichlet(0, 0));
  REQUIRE(conds.size() == 2);
  CHECK(conds[0].id == ConditionId::uniq_dirichlet);
  CHECK(conds[1].id == ConditionId::homogeneous_regime);
  CHECK(applicable_conditions(Parameters{-2, 0, 1, 2}, BoundarySpec::dirichlet(1, 1)).front().id ==
        ConditionId::n2_uniqueness);
  CHECK(to_string(ConditionId::beta_cond) == "beta_cond");
}
