#pragma once

#include <optional>
#include <span>

namespace culdiv {

double mean(std::span<const double> xs);
double median(std::span<const double> xs);
// Unbiased (n - 1) sample variance; 0 for fewer than two values.
double sample_variance(std::span<const double> xs);

// Student-t CDF for real df > 0.
double student_t_cdf(double t, double df);
double two_sided_p(double t, double df);

struct PearsonResult {
  std::optional<double> r;  // absent when either side has zero variance
  std::optional<double> p;  // absent when r is absent or n < 3
  std::size_t n = 0;
};

// p from t = r sqrt((n - 2) / (1 - r^2)) with n - 2 degrees of freedom;
// |r| = 1 gives p = 0.
PearsonResult pearson(std::span<const double> x, std::span<const double> y);

struct WelchResult {
  double mean_a = 0.0;
  double mean_b = 0.0;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  std::optional<double> t;  // absent when either group has n < 2 or the standard error is 0
  std::optional<double> df;
  std::optional<double> p;
};

// Welch's unequal-variance t-test of mean(a) - mean(b).
WelchResult welch_t_test(std::span<const double> a, std::span<const double> b);

}  // namespace culdiv
