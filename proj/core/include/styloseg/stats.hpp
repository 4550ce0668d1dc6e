#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "styloseg/errors.hpp"

namespace styloseg::stats {

double mean(const std::vector<double>& xs);
/// Sample variance (n-1 denominator); 0 for n < 2.
double sample_variance(const std::vector<double>& xs);

/// Regularized incomplete beta function I_x(a, b) via Lentz's continued
/// fraction. Exposed because the t and binomial tails both reduce to it.
double incomplete_beta(double a, double b, double x);

/// Two-sided p-value of a Student t statistic with `df` degrees of freedom.
double student_t_two_sided_p(double t, double df);

struct GroupSummary {
    std::string label;
    double mean = 0.0;
    double sd = 0.0;  // sample standard deviation, n-1 denominator
    std::size_t n = 0;
    bool degenerate = false;  // single-element group
};

struct WelchResult {
    double t = 0.0;
    double p = 1.0;
    double df = 0.0;
};

enum class TTestKind { welch, student };

/// Welch's unequal-variance t-test, two-sided. Both samples need n >= 2 and
/// nonzero variance. `kind` switches to the pooled-variance Student test.
WelchResult welch_t(const std::vector<double>& a, const std::vector<double>& b,
                    TTestKind kind = TTestKind::welch);

struct CorrelationRecord {
    std::string x_label;
    std::string y_label;
    double r = 0.0;
    double p = 1.0;
    std::size_t n = 0;
};

/// Product-moment correlation with a two-sided p-value from the t-transform.
/// Requires equal lengths, n >= 3 and nonzero variance on both sides.
CorrelationRecord pearson(const std::vector<double>& x, const std::vector<double>& y,
                          const std::string& x_label = "x", const std::string& y_label = "y");

enum class BinningKind { equal_count, equal_width };

constexpr std::size_t kDefaultBins = 25;

/// Z-score `values` within length bins: points are binned by `lengths`
/// (equal-count quantile bins by default), each value is transformed to
/// (v - bin_mean) / bin_sd, and the output keeps input order. Bins that
/// would receive fewer than two points are merged with a neighbor; a
/// zero-sd bin maps to all zeros.
std::vector<double> zscore_by_length_bins(const std::vector<double>& lengths,
                                          const std::vector<double>& values,
                                          std::size_t bins = kDefaultBins,
                                          BinningKind binning = BinningKind::equal_count);

/// Bin assignment used by zscore_by_length_bins; exposed for auditing.
std::vector<std::size_t> length_bin_assignment(const std::vector<double>& lengths,
                                               std::size_t bins,
                                               BinningKind binning = BinningKind::equal_count);

GroupSummary summarize(const std::string& label, const std::vector<double>& sample);

std::vector<GroupSummary> group_summaries(
    const std::vector<std::pair<std::string, std::vector<double>>>& groups);

struct CorrelationMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<CorrelationRecord>> cells;  // symmetric, unit diagonal
};

/// For each pair of sections, the Pearson correlation over documents present
/// in both (keyed by document id). Throws AlignmentError when a pair shares
/// fewer than 3 documents.
CorrelationMatrix section_correlation_matrix(
    const std::vector<std::pair<std::string, std::map<std::string, double>>>& per_section_scores);

/// The paper-style significance bucket for a p-value: "***" (<0.001),
/// "**" (<0.01), "*" (<0.05) or "".
std::string significance_stars(double p);

}  // namespace styloseg::stats
