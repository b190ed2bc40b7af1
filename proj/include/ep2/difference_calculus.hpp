#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ep2 {

/// A real function on {0, ..., N}. Holds N+1 values; N >= 1.
class GridFunction {
 public:
  GridFunction() = default;
  explicit GridFunction(std::vector<double> values);
  GridFunction(std::initializer_list<double> values);

  /// Constant function on {0, ..., n}.
  static GridFunction constant(int n, double value);

  int n() const { return static_cast<int>(values_.size()) - 1; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  double operator[](std::size_t x) const { return values_[x]; }
  double& operator[](std::size_t x) { return values_[x]; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  const std::vector<double>& vector() const { return values_; }

  operator std::span<const double>() const { return values_; }

  /// True when every entry is strictly positive.
  bool is_positive() const;
  /// True when entries 1..N-1 are strictly positive.
  bool is_interior_positive() const;

  double min() const;
  double max() const;

  friend bool operator==(const GridFunction&, const GridFunction&) = default;

 private:
  std::vector<double> values_;
};

// Forward difference: result[x] = u[x+1] - u[x], x = 0..N-1.
std::vector<double> delta(std::span<const double> u);

// Second difference: result[x-1] = u[x+1] - 2u[x] + u[x-1], x = 1..N-1.
std::vector<double> delta2(std::span<const double> u);

/// Euclidean norm of a raw sequence, whichever space it came from.
double norm2(std::span<const double> v);

double norm_inf(std::span<const double> v);

/// First Dirichlet eigenvalue of -Delta^2 on {0..N}: 4 sin^2(pi / 2N).
double lambda1(int n);

/// Residual of the summation-by-parts identity
///   sum_{x=1}^{N-1} D2u_{x-1} u_x
///     = Du_{N-1} u_{N-1} - Du_0 u_1 - sum_{x=1}^{N-2} (Du_x)^2.
/// Zero up to rounding for every u.
double summation_by_parts_residual(std::span<const double> u);

}  // namespace ep2
