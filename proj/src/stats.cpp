#include "plageval/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "plageval/error.hpp"

namespace plageval::stats {

namespace {

void require_pairs(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error("LengthMismatch", "series lengths differ");
  }
  if (x.size() < 2) {
    throw Error("LengthMismatch", "at least two paired observations are required");
  }
}

bool constant(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [&](double e) { return e == v.front(); });
}

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 500;
  constexpr double kEpsilon = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEpsilon) break;
  }
  return h;
}

}  // namespace

double mean(std::span<const double> values) {
  if (values.empty()) throw Error("EmptyInput", "mean of an empty series");
  long double sum = 0;
  for (double v : values) sum += v;
  return static_cast<double>(sum / static_cast<long double>(values.size()));
}

double regularized_incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  // The fraction converges quickly only on one side of the mean.
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_tailed(double t, double df) {
  if (std::isinf(t)) return 0.0;
  const double x = df / (df + t * t);
  return std::clamp(regularized_incomplete_beta(df / 2.0, 0.5, x), 0.0, 1.0);
}

double pearson(std::span<const double> x, std::span<const double> y) {
  require_pairs(x, y);
  if (constant(x) || constant(y)) {
    throw Error("NoVariability",
                "cannot correlate two sequences when one of them has no variability");
  }
  const long double mx = mean(x);
  const long double my = mean(y);
  long double sxy = 0;
  long double sxx = 0;
  long double syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const long double dx = x[i] - mx;
    const long double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0 || syy == 0) {
    throw Error("NoVariability",
                "cannot correlate two sequences when one of them has no variability");
  }
  const double r = static_cast<double>(sxy / std::sqrt(sxx * syy));
  return std::clamp(r, -1.0, 1.0);
}

TTestResult paired_t_test(std::span<const double> x, std::span<const double> y) {
  require_pairs(x, y);
  std::vector<double> d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
  if (constant(d)) {
    throw Error("ZeroVariance", "all paired differences are equal");
  }
  const std::size_t n = d.size();
  const long double md = mean(d);
  long double ss = 0;
  for (double v : d) ss += (v - md) * (v - md);
  const long double sd = std::sqrt(ss / static_cast<long double>(n - 1));
  if (sd == 0) throw Error("ZeroVariance", "all paired differences are equal");

  TTestResult result;
  result.t = static_cast<double>(md / (sd / std::sqrt(static_cast<long double>(n))));
  result.df = static_cast<int>(n - 1);
  result.p = student_t_two_tailed(result.t, result.df);
  return result;
}

RankVector rank_descending(std::span<const double> values) {
  if (values.empty()) throw Error("EmptyInput", "cannot rank an empty list");
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return values[i] > values[j]; });
  RankVector out;
  out.ranks.resize(values.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const std::size_t idx = order[pos];
    if (pos > 0 && values[idx] == values[order[pos - 1]]) {
      out.ranks[idx] = out.ranks[order[pos - 1]];
    } else {
      out.ranks[idx] = static_cast<double>(pos + 1);
    }
  }
  return out;
}

std::vector<double> negate_average_ranks(std::span<const RankVector> rankings) {
  if (rankings.empty() || rankings.front().ranks.empty()) {
    throw Error("EmptyInput", "no rankings to average");
  }
  const std::size_t n = rankings.front().size();
  std::vector<long double> sum(n, 0.0L);
  for (const RankVector& r : rankings) {
    if (r.size() != n) throw Error("LengthMismatch", "rankings cover different subjects");
    for (std::size_t i = 0; i < n; ++i) sum[i] += r.ranks[i];
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = -static_cast<double>(sum[i] / static_cast<long double>(rankings.size()));
  }
  return out;
}

bool is_competition_ranking(std::span<const double> ranks) {
  for (double r : ranks) {
    if (!(r >= 1.0) || r != std::floor(r)) return false;
    const auto better = std::count_if(ranks.begin(), ranks.end(),
                                      [r](double o) { return o < r; });
    if (r != static_cast<double>(better + 1)) return false;
  }
  return !ranks.empty();
}

}  // namespace plageval::stats
