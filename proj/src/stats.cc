#include "culdiv/stats.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "culdiv/error.h"

namespace culdiv {

double mean(std::span<const double> xs) {
  if (xs.empty()) throw Error("mean of an empty sample");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double median(std::span<const double> xs) {
  if (xs.empty()) throw Error("median of an empty sample");
  std::vector<double> v(xs.begin(), xs.end());
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double sample_variance(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

double student_t_cdf(double t, double df) {
  if (!(df > 0.0)) throw Error("Student-t needs df > 0");
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  return boost::math::cdf(boost::math::students_t_distribution<double>(df), t);
}

double two_sided_p(double t, double df) {
  if (!(df > 0.0)) throw Error("Student-t needs df > 0");
  if (std::isinf(t)) return 0.0;
  const boost::math::students_t_distribution<double> dist(df);
  return std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))));
}

PearsonResult pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error("pearson: samples differ in length");
  PearsonResult out;
  out.n = x.size();
  if (out.n < 2) return out;
  // Constant samples are detected exactly; the mean of a constant is not
  // always that constant in floating point.
  const auto constant = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double e) { return e == v.front(); });
  };
  if (constant(x) || constant(y)) return out;
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < out.n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) return out;
  const double r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  out.r = r;
  if (out.n < 3) return out;
  const double df = static_cast<double>(out.n - 2);
  if (std::abs(r) >= 1.0) {
    out.p = 0.0;
  } else {
    out.p = two_sided_p(r * std::sqrt(df / (1.0 - r * r)), df);
  }
  return out;
}

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b) {
  WelchResult out;
  out.n_a = a.size();
  out.n_b = b.size();
  if (!a.empty()) out.mean_a = mean(a);
  if (!b.empty()) out.mean_b = mean(b);
  if (a.size() < 2 || b.size() < 2) return out;
  const auto constant = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double e) { return e == v.front(); });
  };
  if (constant(a) && constant(b)) return out;
  const double va = sample_variance(a) / static_cast<double>(a.size());
  const double vb = sample_variance(b) / static_cast<double>(b.size());
  const double se2 = va + vb;
  if (!(se2 > 0.0)) return out;
  const double t = (out.mean_a - out.mean_b) / std::sqrt(se2);
  const double df = se2 * se2 / (va * va / static_cast<double>(a.size() - 1) +
                                 vb * vb / static_cast<double>(b.size() - 1));
  out.t = t;
  out.df = df;
  out.p = two_sided_p(t, df);
  return out;
}

}  // namespace culdiv
