#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ep2/analysis.hpp"
#include "ep2/continuum.hpp"
#include "ep2/errors.hpp"

using namespace ep2;

TEST_CASE("discretize") {
  const auto [p, bc] = discretize({4, 8, -4, 1, 2}, 2);
  CHECK(p.a == 1.0);
  CHECK(p.b == 1.0);
  CHECK(p.c == -1.0);
  CHECK(p.n == 2);
  CHECK(bc.dirichlet_data().d0 == 1.0);
  CHECK(bc.dirichlet_data().dn == 2.0);
  const auto zero = discretize({0, 0, 0, 1, 1}, 5).first;
  CHECK((zero.a == 0.0 && zero.b == 0.0 && zero.c == 0.0));
  const ContinuousParameters cp{3, -2, 5, 1, 1};
  for (int n = 2; n < 40; ++n) {
    CHECK(discretize(cp, 2 * n).first.a == discretize(cp, n).first.a / 4);
  }
  CHECK_THROWS_AS(discretize(cp, 1), DomainError);
}

TEST_CASE("interpolation") {
  const GridFunction u{0.0, 1.0, 4.0};
  CHECK(interpolate(u, 0.0) == 0.0);
  CHECK(interpolate(u, 0.25) == doctest::Approx(0.5));
  CHECK(interpolate(u, 1.0) == 4.0);
  CHECK(sup_difference(u, u) == 0.0);
  CHECK(sup_difference(GridFunction{0.0, 0.0}, GridFunction{0.0, 1.0, 0.0}) == doctest::Approx(1.0));
}

TEST_CASE("convergence study") {
  const auto flat = convergence_study({1, 0, -1, 1, 1}, {4, 8, 16});
  REQUIRE(flat.ok());
  for (const auto& r : flat.rows) {
    for (int x = 0; x <= r.n; ++x) CHECK(r.solution[x] == doctest::Approx(1.0).epsilon(1e-12));
    if (r.sup_diff) CHECK(*r.sup_diff <= 1e-12);
  }

  const auto study = convergence_study({1, 1, -1, 1, 1}, {16, 32, 64, 128});
  REQUIRE(study.ok());
  REQUIRE(study.rows.size() == 4);
  CHECK_FALSE(study.rows[0].sup_diff.has_value());
  for (const auto& r : study.rows) {
    if (r.ratio) CHECK((*r.ratio >= 3.0 && *r.ratio <= 5.0));
  }
  CHECK(study.rows[3].ratio.has_value());

  const auto broken = convergence_study({-1, 2, -1, 0.5, 0.5}, {4, 8});
  CHECK_FALSE(broken.ok());
  CHECK(broken.failed_n == 4);
  CHECK(broken.message.find("N = 4") != std::string::npos);
}

TEST_CASE("limiting uniqueness margin") {
  const ContinuousParameters cp{1, 1, -1, 1, 1};
  const double lim = limiting_uniqueness_margin(cp);
  CHECK(lim == doctest::Approx(1 - 9 * std::cbrt(-0.25) + std::numbers::pi * std::numbers::pi));
  double prev = std::abs(scaled_uniqueness_margin(cp, 10) - lim);
  for (int n : {100, 1000, 10000}) {
    const double err = std::abs(scaled_uniqueness_margin(cp, n) - lim);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev <= 1e-3 * std::abs(lim));
}

TEST_CASE("beta-cond fails for large N") {
  const ContinuousParameters cp{-1, 40, -2, 1, 1};
  const int n0 = beta_cond_failure_n(cp);
  const double threshold = 4.0 * 40 * 40 * 40 / (27.0 * 2.0);
  CHECK(static_cast<double>(n0) * n0 * n0 > threshold);
  CHECK(static_cast<double>(n0 - 1) * (n0 - 1) * (n0 - 1) <= threshold);
  for (int n = 2; n < n0 + 20; ++n) {
    const bool holds = beta_cond_check(discretize(cp, n).first).holds;
    CHECK(holds == (n < n0));
  }
  CHECK_THROWS_AS(beta_cond_failure_n({1, 1, -1, 1, 1}), DomainError);
}
