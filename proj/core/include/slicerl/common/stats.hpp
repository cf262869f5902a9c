#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace slicerl {

inline double mean(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("mean of empty sample");
  double s = 0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

// Unbiased sample variance (n-1 denominator). Requires n >= 2.
inline double sample_variance(std::span<const double> xs) {
  if (xs.size() < 2) throw std::invalid_argument("variance needs n >= 2");
  double m = mean(xs);
  double s = 0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

inline double sample_sd(std::span<const double> xs) {
  return std::sqrt(sample_variance(xs));
}

// Two-sided 97.5% Student-t quantile, i.e. the multiplier for a 95% CI.
inline double student_t975(int df) {
  static const double table[] = {
      12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
      2.201,  2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
      2.080,  2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042};
  if (df < 1) throw std::invalid_argument("t quantile needs df >= 1");
  if (df <= 30) return table[df - 1];
  if (df <= 40) return 2.021;
  if (df <= 60) return 2.000;
  if (df <= 120) return 1.980;
  return 1.960;
}

// Half-width of the 95% Student-t confidence interval for the mean.
inline double ci95_half_width(std::span<const double> xs) {
  if (xs.size() < 2) throw std::invalid_argument("CI needs n >= 2");
  int n = static_cast<int>(xs.size());
  return student_t975(n - 1) * sample_sd(xs) / std::sqrt(static_cast<double>(n));
}

// Pooled standard deviation of two samples (equal-variance form).
inline double pooled_sd(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw std::invalid_argument("pooled sd needs n >= 2 per sample");
  double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  double va = sample_variance(a), vb = sample_variance(b);
  return std::sqrt(((na - 1) * va + (nb - 1) * vb) / (na + nb - 2));
}

}  // namespace slicerl
