#include "ep2/difference_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ep2/errors.hpp"

namespace ep2 {

GridFunction::GridFunction(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw DomainError("GridFunction needs at least two values (N >= 1)");
  }
}

GridFunction::GridFunction(std::initializer_list<double> values)
    : GridFunction(std::vector<double>(values)) {}

GridFunction GridFunction::constant(int n, double value) {
  if (n < 1) throw DomainError("GridFunction::constant: N must be >= 1");
  return GridFunction(std::vector<double>(static_cast<std::size_t>(n) + 1, value));
}

bool GridFunction::is_positive() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v > 0.0; });
}

bool GridFunction::is_interior_positive() const {
  return std::all_of(values_.begin() + 1, values_.end() - 1, [](double v) { return v > 0.0; });
}

double GridFunction::min() const { return *std::min_element(values_.begin(), values_.end()); }
double GridFunction::max() const { return *std::max_element(values_.begin(), values_.end()); }

std::vector<double> delta(std::span<const double> u) {
  if (u.size() < 2) throw DomainError("delta: N must be >= 1");
  std::vector<double> out(u.size() - 1);
  for (std::size_t x = 0; x + 1 < u.size(); ++x) out[x] = u[x + 1] - u[x];
  return out;
}

std::vector<double> delta2(std::span<const double> u) {
  if (u.size() < 3) throw DomainError("delta2: N must be >= 2");
  std::vector<double> out(u.size() - 2);
  for (std::size_t x = 1; x + 1 < u.size(); ++x) out[x - 1] = u[x + 1] - 2.0 * u[x] + u[x - 1];
  return out;
}

double norm2(std::span<const double> v) {
  // Scaled accumulation avoids overflow for large entries.
  double scale = 0.0;
  for (double e : v) scale = std::max(scale, std::abs(e));
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (double e : v) {
    const double r = e / scale;
    acc += r * r;
  }
  return scale * std::sqrt(acc);
}

double norm_inf(std::span<const double> v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::abs(e));
  return m;
}

double lambda1(int n) {
  if (n < 2) throw DomainError("lambda1: N must be >= 2, got " + std::to_string(n));
  const double s = std::sin(std::numbers::pi / (2.0 * n));
  return 4.0 * s * s;
}

double summation_by_parts_residual(std::span<const double> u) {
  if (u.size() < 3) throw DomainError("summation_by_parts_residual: N must be >= 2");
  const std::size_t n = u.size() - 1;
  const auto du = delta(u);
  const auto d2u = delta2(u);
  double lhs = 0.0;
  for (std::size_t x = 1; x <= n - 1; ++x) lhs += d2u[x - 1] * u[x];
  double rhs = du[n - 1] * u[n - 1] - du[0] * u[1];
  for (std::size_t x = 1; x + 2 <= n; ++x) rhs -= du[x] * du[x];
  return std::abs(lhs - rhs);
}

}  // namespace ep2
