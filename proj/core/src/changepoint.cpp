#include "styloseg/changepoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace styloseg::changepoint {

namespace {

/// Prefix sums for O(1) L2 change-in-mean cost over half-open ranges.
struct L2Cost {
    std::vector<double> prefix;
    std::vector<double> prefix_sq;

    explicit L2Cost(const std::vector<double>& values)
        : prefix(values.size() + 1, 0.0), prefix_sq(values.size() + 1, 0.0) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            prefix[i + 1] = prefix[i] + values[i];
            prefix_sq[i + 1] = prefix_sq[i] + values[i] * values[i];
        }
    }

    /// SSE of values[s..t) around the range mean.
    double operator()(std::size_t s, std::size_t t) const {
        const double len = static_cast<double>(t - s);
        const double sum = prefix[t] - prefix[s];
        const double sq = prefix_sq[t] - prefix_sq[s];
        const double sse = sq - (sum * sum) / len;
        return sse > 0.0 ? sse : 0.0;
    }
};

struct DpTable {
    std::vector<double> best;        // best[t]: optimal objective of values[0..t), offset by -penalty
    std::vector<std::size_t> prev;   // argmin segment start for the segment ending at t
};

std::vector<std::size_t> backtrack(const DpTable& dp, std::size_t n) {
    std::vector<std::size_t> cps;
    std::size_t t = n;
    while (t > 0) {
        const std::size_t s = dp.prev[t];
        if (s == 0) break;
        cps.push_back(s);
        t = s;
    }
    std::reverse(cps.begin(), cps.end());
    return cps;
}

PeltResult finish(const DpTable& dp, std::size_t n, double penalty) {
    PeltResult result;
    result.penalty = penalty;
    result.changepoints = backtrack(dp, n);
    result.cost_total = dp.best[n] + penalty;  // undo the F[0] = -penalty offset
    return result;
}

void check_preconditions(const Series& series, double penalty, std::size_t min_segment_length) {
    if (min_segment_length < 1) {
        throw Error("min_segment_length must be at least 1");
    }
    if (series.values.size() < 2 * min_segment_length) {
        throw SeriesTooShort(series.values.size(), min_segment_length);
    }
    if (!(penalty >= 0.0)) {
        throw Error("penalty must be non-negative");
    }
}

}  // namespace

Series make_series(const classifier::ScoredDocument& doc, SignalKind kind) {
    Series series;
    series.variance = population_variance(doc.word_odds);
    series.values = (kind == SignalKind::cumulative_sum) ? doc.cumsum : doc.word_odds;
    return series;
}

double population_variance(const std::vector<double>& values) {
    if (values.empty()) {
        return 0.0;
    }
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) {
        const double d = v - mean;
        ss += d * d;
    }
    return ss / static_cast<double>(values.size());
}

double segment_cost(const std::vector<double>& values, std::size_t i, std::size_t j) {
    if (i > j || j >= values.size()) {
        throw IndexOutOfRange(i, j, values.size());
    }
    const L2Cost cost(values);
    return cost(i, j + 1);
}

PeltResult optimal_partitioning(const Series& series, double penalty,
                                std::size_t min_segment_length) {
    check_preconditions(series, penalty, min_segment_length);
    const std::size_t n = series.values.size();
    const L2Cost cost(series.values);

    DpTable dp;
    dp.best.assign(n + 1, std::numeric_limits<double>::infinity());
    dp.prev.assign(n + 1, 0);
    dp.best[0] = -penalty;

    for (std::size_t t = min_segment_length; t <= n; ++t) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_s = 0;
        for (std::size_t s = 0; s + min_segment_length <= t;
             s = (s == 0) ? min_segment_length : s + 1) {
            const double total = dp.best[s] + cost(s, t) + penalty;
            if (total < best) {
                best = total;
                best_s = s;
            }
        }
        dp.best[t] = best;
        dp.prev[t] = best_s;
    }
    return finish(dp, n, penalty);
}

PeltResult pelt(const Series& series, double penalty, std::size_t min_segment_length) {
    check_preconditions(series, penalty, min_segment_length);
    const std::size_t n = series.values.size();
    const L2Cost cost(series.values);

    DpTable dp;
    dp.best.assign(n + 1, std::numeric_limits<double>::infinity());
    dp.prev.assign(n + 1, 0);
    dp.best[0] = -penalty;

    // Candidate last segment starts, ascending. Entries with t - s <
    // min_segment_length are not yet eligible and are never pruned.
    std::vector<std::size_t> candidates{0};
    std::vector<std::size_t> kept;
    candidates.reserve(64);

    for (std::size_t t = min_segment_length; t <= n; ++t) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_s = 0;
        for (std::size_t s : candidates) {
            if (t - s < min_segment_length) {
                break;  // ascending: later candidates are even younger
            }
            const double total = dp.best[s] + cost(s, t) + penalty;
            if (total < best) {
                best = total;
                best_s = s;
            }
        }
        dp.best[t] = best;
        dp.prev[t] = best_s;

        // Keep s whenever F[s] + C(s,t) <= F[t] + slack. The slack absorbs
        // floating-point loss in the prefix-sum cost so no candidate on an
        // optimal path is ever dropped.
        const double slack = 1e-8 + 1e-12 * std::abs(best);
        kept.clear();
        for (std::size_t s : candidates) {
            if (t - s < min_segment_length) {
                kept.push_back(s);
                continue;
            }
            if (dp.best[s] + cost(s, t) <= best + slack) {
                kept.push_back(s);
            }
        }
        candidates.swap(kept);
        if (t + min_segment_length <= n) {
            candidates.push_back(t);  // becomes eligible at t + min_segment_length
        }
    }
    return finish(dp, n, penalty);
}

double normalized_penalty(const Series& series, double multiplier) {
    if (!(multiplier >= 0.0)) {
        throw Error("penalty multiplier must be non-negative");
    }
    return multiplier * series.variance;
}

ThresholdResult threshold_search(const Series& series, std::size_t min_segment_length,
                                 double margin) {
    ThresholdResult result;
    result.margin = margin;

    if (series.variance <= 0.0) {
        // Penalty normalization degenerates; the document carries no signal.
        result.never_segments = true;
        return result;
    }

    auto count_changepoints = [&](double multiplier) {
        ++result.passes;
        return pelt(series, multiplier * series.variance, min_segment_length)
            .changepoints.size();
    };

    if (count_changepoints(0.0) == 0) {
        result.never_segments = true;
        return result;
    }

    // Doubling phase from multiplier 1.0.
    double lo = 0.0;  // known to yield >= 1 changepoint
    double hi = 1.0;
    while (count_changepoints(hi) > 0) {
        lo = hi;
        hi *= 2.0;
        ++result.doublings;
    }

    // Binary search until the bracket is narrower than the margin.
    while (hi - lo > margin) {
        const double mid = 0.5 * (lo + hi);
        if (count_changepoints(mid) == 0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    result.multiplier = 0.5 * (lo + hi);
    return result;
}

double normalize_threshold_for_length(double multiplier, std::size_t length,
                                      LengthNormScheme scheme) {
    if (length == 0) {
        throw Error("length must be positive");
    }
    switch (scheme) {
    case LengthNormScheme::divide_by_length:
        return multiplier / static_cast<double>(length);
    case LengthNormScheme::binned_zscore:
    case LengthNormScheme::identity:
        return multiplier;
    }
    return multiplier;
}

}  // namespace styloseg::changepoint
