#pragma once

#include <cstddef>
#include <optional>
#include <span>

namespace swbnet {

struct CorrelationResult {
  double r = 0.0;
  std::optional<double> p_value;  // two-tailed; empty when n < 3
  std::size_t n = 0;
};

/// Sample Pearson correlation with a two-tailed Student-t p-value.
/// Throws ArgumentError on length mismatch or n < 2, ComputeError("degenerate vector")
/// when either input has zero variance.
CorrelationResult pearson(std::span<const double> x, std::span<const double> y);

/// Regularized incomplete beta I_x(a, b), continued fraction to relative 1e-12.
double regularized_incomplete_beta(double a, double b, double x);

/// P(|T| >= |t|) for Student's t with `dof` degrees of freedom.
double student_t_two_tailed(double t, double dof);

}  // namespace swbnet
