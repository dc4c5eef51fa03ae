#pragma once

// Independent reference implementations used only by the tests. None of
// these share code with the library paths they check.

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <cstdint>
#include <vector>

namespace plageval::testing {

struct OracleTile {
  std::size_t a;
  std::size_t b;
  std::size_t length;
};

struct OracleTiling {
  std::vector<OracleTile> tiles;
  std::size_t coverage = 0;
};

// Plain greedy string tiling by exhaustive search: at each step take the
// longest run of equal unmarked tokens (lowest a, then lowest b on ties)
// until the longest run is shorter than min_match.
template <typename T>
OracleTiling greedy_tiling_oracle(const std::vector<T>& a, const std::vector<T>& b,
                                  std::size_t min_match) {
  std::vector<bool> ma(a.size(), false);
  std::vector<bool> mb(b.size(), false);
  OracleTiling out;
  for (;;) {
    std::size_t best = 0, bi = 0, bj = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        std::size_t k = 0;
        while (i + k < a.size() && j + k < b.size() && !ma[i + k] && !mb[j + k] &&
               a[i + k] == b[j + k]) {
          ++k;
        }
        if (k > best) {
          best = k;
          bi = i;
          bj = j;
        }
      }
    }
    if (best < min_match || best == 0) break;
    for (std::size_t k = 0; k < best; ++k) {
      ma[bi + k] = true;
      mb[bj + k] = true;
    }
    out.tiles.push_back({bi, bj, best});
    out.coverage += best;
  }
  return out;
}

// Textbook sum-of-products Pearson formula.
inline double reference_pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  long double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += static_cast<long double>(x[i]) * x[i];
    syy += static_cast<long double>(y[i]) * y[i];
    sxy += static_cast<long double>(x[i]) * y[i];
  }
  const long double num = n * sxy - sx * sy;
  const long double den = std::sqrt(n * sxx - sx * sx) * std::sqrt(n * syy - sy * sy);
  return static_cast<double>(num / den);
}

struct ReferenceTTest {
  double t;
  double df;
  double p;
};

// Paired t-test with the tail mass taken from Boost.Math's Student's t.
inline ReferenceTTest reference_paired_t(const std::vector<double>& x,
                                         const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sum = 0;
  for (std::size_t i = 0; i < n; ++i) sum += x[i] - y[i];
  const double mean = sum / static_cast<double>(n);
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - y[i] - mean;
    ss += d * d;
  }
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  const double t = mean / (sd / std::sqrt(static_cast<double>(n)));
  const double df = static_cast<double>(n - 1);
  boost::math::students_t dist(df);
  const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
  return {t, df, p};
}

}  // namespace plageval::testing
