#pragma once

#include <span>
#include <vector>

namespace plageval::stats {

/// Ranks aligned by index with the subjects they describe. Single-respondent
/// rankings use competition ranking ("1, 1, 3").
struct RankVector {
  std::vector<double> ranks;

  std::size_t size() const noexcept { return ranks.size(); }
  bool operator==(const RankVector&) const = default;
};

struct TTestResult {
  double t = 0.0;
  int df = 0;
  double p = 1.0;  // two-tailed
};

/// Sample Pearson correlation.
/// Throws Error("LengthMismatch") unless |x| == |y| >= 2, and
/// Error("NoVariability") if either series is constant.
double pearson(std::span<const double> x, std::span<const double> y);

/// Two-tailed paired t-test on d = x - y with df = n - 1.
/// Throws Error("LengthMismatch") unless |x| == |y| >= 2, and
/// Error("ZeroVariance") when every difference is the same.
TTestResult paired_t_test(std::span<const double> x, std::span<const double> y);

/// Two-tailed tail mass P(|T| >= |t|) of Student's t with `df` degrees of
/// freedom.
double student_t_two_tailed(double t, double df);

/// Regularized incomplete beta I_x(a, b).
double regularized_incomplete_beta(double a, double b, double x);

/// Highest value gets rank 1; ties share the best rank and the following
/// ranks are skipped. Throws Error("EmptyInput") on an empty list.
RankVector rank_descending(std::span<const double> values);

/// Element-wise mean over respondents, negated so that "more similar" is
/// larger. Throws Error("EmptyInput") or Error("LengthMismatch").
std::vector<double> negate_average_ranks(std::span<const RankVector> rankings);

/// True when `ranks` is a competition ranking of its own entries: each rank
/// equals one plus the number of entries with a strictly better rank.
bool is_competition_ranking(std::span<const double> ranks);

double mean(std::span<const double> values);

}  // namespace plageval::stats
