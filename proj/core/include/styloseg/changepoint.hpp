#pragma once

#include <cstddef>
#include <vector>

#include "styloseg/classifier.hpp"

namespace styloseg::changepoint {

/// Which series PELT runs on. The per-document penalty is always normalized
/// by the variance of the raw per-word log odds, regardless of this choice.
enum class SignalKind { cumulative_sum, raw };

struct Series {
    std::vector<double> values;
    /// Population variance of the per-word log odds (not of `values` when
    /// `values` holds the cumulative sum).
    double variance = 0.0;
};

Series make_series(const classifier::ScoredDocument& doc,
                   SignalKind kind = SignalKind::cumulative_sum);

/// Population variance (divide by n), the normalizer for PELT penalties.
double population_variance(const std::vector<double>& values);

struct PeltResult {
    /// Segment start indices, strictly increasing, in (0, n).
    std::vector<std::size_t> changepoints;
    double penalty = 0.0;
    /// Sum of segment costs + penalty * |changepoints|.
    double cost_total = 0.0;
};

constexpr std::size_t kDefaultMinSegmentLength = 2;

/// L2 change-in-mean cost of values[i..j] (inclusive): sum of squared
/// deviations from the segment mean. Throws IndexOutOfRange.
double segment_cost(const std::vector<double>& values, std::size_t i, std::size_t j);

/// Exact penalized least-squares segmentation via PELT. Equal in objective
/// value to optimal_partitioning; pruning never discards a candidate that
/// could still participate in an optimal solution.
/// Throws SeriesTooShort when n < 2 * min_segment_length.
PeltResult pelt(const Series& series, double penalty,
                std::size_t min_segment_length = kDefaultMinSegmentLength);

/// O(n^2) exact dynamic program without pruning. Verification oracle for
/// pelt(); also used in benchmarks.
PeltResult optimal_partitioning(const Series& series, double penalty,
                                std::size_t min_segment_length = kDefaultMinSegmentLength);

/// penalty = multiplier * series.variance.
double normalized_penalty(const Series& series, double multiplier);

constexpr double kDefaultThresholdMargin = 1e-2;

struct ThresholdResult {
    /// Smallest variance-normalized penalty multiplier at which PELT reports
    /// zero changepoints, located to within `margin`.
    double multiplier = 0.0;
    double margin = kDefaultThresholdMargin;
    std::size_t passes = 0;     // PELT invocations used
    std::size_t doublings = 0;  // doubling-phase steps
    /// True when the series yields no changepoints even at multiplier 0
    /// (or has zero variance); multiplier is 0 in that case.
    bool never_segments = false;
};

/// Doubling from multiplier 1.0 until PELT reports no changepoints, then
/// binary search until the bracket is narrower than `margin`; returns the
/// bracket midpoint. O(log multiplier) PELT passes.
ThresholdResult threshold_search(const Series& series,
                                 std::size_t min_segment_length = kDefaultMinSegmentLength,
                                 double margin = kDefaultThresholdMargin);

enum class LengthNormScheme {
    /// Population-level 25-bin z-score against length; applied by the stats
    /// module over a whole corpus, not per document.
    binned_zscore,
    divide_by_length,
    identity,
};

/// Pointwise length adjustment for the divide-by-length and identity
/// schemes. The binned z-score scheme needs the whole corpus; callers apply
/// stats::zscore_by_length_bins instead, and this function returns the raw
/// multiplier unchanged for it.
double normalize_threshold_for_length(double multiplier, std::size_t length,
                                      LengthNormScheme scheme);

}  // namespace styloseg::changepoint
