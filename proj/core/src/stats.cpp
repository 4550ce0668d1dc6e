#include "styloseg/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace styloseg::stats {

namespace {

/// Continued fraction for the incomplete beta function (Lentz's algorithm).
double beta_cf(double a, double b, double x) {
    constexpr double tiny = 1e-30;
    constexpr double eps = 1e-15;
    constexpr int max_iter = 300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;

    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;

    for (int m = 1; m <= max_iter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;

        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps) {
            break;
        }
    }
    return h;
}

}  // namespace

double mean(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_variance(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean(xs);
    double ss = 0.0;
    for (double x : xs) {
        const double d = x - m;
        ss += d * d;
    }
    return ss / static_cast<double>(xs.size() - 1);
}

double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_cf(a, b, x) / a;
    }
    return 1.0 - std::exp(std::lgamma(a + b) - std::lgamma(b) - std::lgamma(a) +
                          b * std::log1p(-x) + a * std::log(x)) *
                     beta_cf(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
    if (!std::isfinite(t)) return 0.0;
    if (t == 0.0) return 1.0;
    const double p = incomplete_beta(0.5 * df, 0.5, df / (df + t * t));
    return std::min(1.0, std::max(p, std::numeric_limits<double>::min()));
}

WelchResult welch_t(const std::vector<double>& a, const std::vector<double>& b, TTestKind kind) {
    if (a.size() < 2 || b.size() < 2) {
        throw DegenerateSample("welch_t needs n >= 2 in both samples");
    }
    const double va = sample_variance(a);
    const double vb = sample_variance(b);
    if (va <= 0.0 || vb <= 0.0) {
        throw DegenerateSample("welch_t needs nonzero variance in both samples");
    }
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double ma = mean(a);
    const double mb = mean(b);

    WelchResult result;
    if (kind == TTestKind::welch) {
        const double ga = va / na;
        const double gb = vb / nb;
        result.t = (ma - mb) / std::sqrt(ga + gb);
        result.df = (ga + gb) * (ga + gb) / (ga * ga / (na - 1.0) + gb * gb / (nb - 1.0));
    } else {
        const double pooled = ((na - 1.0) * va + (nb - 1.0) * vb) / (na + nb - 2.0);
        result.t = (ma - mb) / std::sqrt(pooled * (1.0 / na + 1.0 / nb));
        result.df = na + nb - 2.0;
    }
    result.p = student_t_two_sided_p(result.t, result.df);
    return result;
}

CorrelationRecord pearson(const std::vector<double>& x, const std::vector<double>& y,
                          const std::string& x_label, const std::string& y_label) {
    if (x.size() != y.size()) {
        throw LengthMismatch(x.size(), y.size());
    }
    if (x.size() < 3) {
        throw DegenerateSample("pearson needs n >= 3");
    }
    const std::size_t n = x.size();
    const double mx = mean(x);
    const double my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) {
        throw DegenerateSample("pearson needs nonzero variance on both sides");
    }

    CorrelationRecord record;
    record.x_label = x_label;
    record.y_label = y_label;
    record.n = n;
    record.r = sxy / std::sqrt(sxx * syy);
    record.r = std::clamp(record.r, -1.0, 1.0);
    const double df = static_cast<double>(n - 2);
    if (std::abs(record.r) >= 1.0) {
        record.p = 0.0;
    } else {
        const double t = record.r * std::sqrt(df / (1.0 - record.r * record.r));
        record.p = student_t_two_sided_p(t, df);
    }
    return record;
}

std::vector<std::size_t> length_bin_assignment(const std::vector<double>& lengths,
                                               std::size_t bins, BinningKind binning) {
    const std::size_t n = lengths.size();
    std::vector<std::size_t> assignment(n, 0);
    if (n == 0 || bins <= 1) {
        return assignment;
    }
    // every bin must hold >= 2 points: shrink (merge) rather than error
    bins = std::min(bins, n / 2);
    if (bins <= 1) {
        return assignment;
    }

    if (binning == BinningKind::equal_count) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
            return lengths[i] < lengths[j];
        });
        const std::size_t base = n / bins;
        const std::size_t extra = n % bins;
        std::size_t pos = 0;
        for (std::size_t b = 0; b < bins; ++b) {
            const std::size_t size = base + (b < extra ? 1 : 0);
            for (std::size_t k = 0; k < size; ++k) {
                assignment[order[pos++]] = b;
            }
        }
        return assignment;
    }

    // equal width, then merge bins holding < 2 points into the next one
    const auto [lo_it, hi_it] = std::minmax_element(lengths.begin(), lengths.end());
    const double lo = *lo_it;
    const double span = *hi_it - lo;
    if (span <= 0.0) {
        return std::vector<std::size_t>(n, 0);
    }
    std::vector<std::size_t> raw(n);
    std::vector<std::size_t> counts(bins, 0);
    for (std::size_t i = 0; i < n; ++i) {
        auto b = static_cast<std::size_t>((lengths[i] - lo) / span * static_cast<double>(bins));
        if (b >= bins) b = bins - 1;
        raw[i] = b;
        ++counts[b];
    }
    std::vector<std::size_t> remap(bins, 0);
    std::size_t next_label = 0;
    std::size_t pending = 0;  // points carried into the merge-forward sweep
    for (std::size_t b = 0; b < bins; ++b) {
        pending += counts[b];
        remap[b] = next_label;
        if (pending >= 2 && b + 1 < bins) {
            ++next_label;
            pending = 0;
        }
    }
    if (pending > 0 && pending < 2 && next_label > 0) {
        // trailing underfull bin: fold into the previous label
        for (std::size_t b = 0; b < bins; ++b) {
            if (remap[b] == next_label) remap[b] = next_label - 1;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        assignment[i] = remap[raw[i]];
    }
    return assignment;
}

std::vector<double> zscore_by_length_bins(const std::vector<double>& lengths,
                                          const std::vector<double>& values, std::size_t bins,
                                          BinningKind binning) {
    if (lengths.size() != values.size()) {
        throw LengthMismatch(lengths.size(), values.size());
    }
    if (lengths.size() < 2) {
        throw TooFewPoints(lengths.size());
    }
    const auto assignment = length_bin_assignment(lengths, bins, binning);
    const std::size_t bin_count = 1 + *std::max_element(assignment.begin(), assignment.end());

    std::vector<double> sums(bin_count, 0.0);
    std::vector<std::size_t> counts(bin_count, 0);
    for (std::size_t i = 0; i < values.size(); ++i) {
        sums[assignment[i]] += values[i];
        ++counts[assignment[i]];
    }
    std::vector<double> means(bin_count, 0.0);
    for (std::size_t b = 0; b < bin_count; ++b) {
        means[b] = counts[b] > 0 ? sums[b] / static_cast<double>(counts[b]) : 0.0;
    }
    std::vector<double> ss(bin_count, 0.0);
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double d = values[i] - means[assignment[i]];
        ss[assignment[i]] += d * d;
    }
    std::vector<double> sds(bin_count, 0.0);
    for (std::size_t b = 0; b < bin_count; ++b) {
        if (counts[b] > 1) {
            sds[b] = std::sqrt(ss[b] / static_cast<double>(counts[b] - 1));
        }
    }

    std::vector<double> out(values.size(), 0.0);
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double sd = sds[assignment[i]];
        out[i] = sd > 0.0 ? (values[i] - means[assignment[i]]) / sd : 0.0;
    }
    return out;
}

GroupSummary summarize(const std::string& label, const std::vector<double>& sample) {
    GroupSummary summary;
    summary.label = label;
    summary.n = sample.size();
    summary.mean = mean(sample);
    summary.sd = std::sqrt(sample_variance(sample));
    summary.degenerate = sample.size() < 2;
    return summary;
}

std::vector<GroupSummary> group_summaries(
    const std::vector<std::pair<std::string, std::vector<double>>>& groups) {
    std::vector<GroupSummary> out;
    out.reserve(groups.size());
    for (const auto& [label, sample] : groups) {
        out.push_back(summarize(label, sample));
    }
    return out;
}

CorrelationMatrix section_correlation_matrix(
    const std::vector<std::pair<std::string, std::map<std::string, double>>>& per_section_scores) {
    CorrelationMatrix matrix;
    const std::size_t k = per_section_scores.size();
    matrix.labels.reserve(k);
    for (const auto& [label, scores] : per_section_scores) {
        (void)scores;
        matrix.labels.push_back(label);
    }
    matrix.cells.assign(k, std::vector<CorrelationRecord>(k));

    for (std::size_t i = 0; i < k; ++i) {
        const auto& [label_i, scores_i] = per_section_scores[i];
        matrix.cells[i][i] = {label_i, label_i, 1.0, 0.0, scores_i.size()};
        for (std::size_t j = i + 1; j < k; ++j) {
            const auto& [label_j, scores_j] = per_section_scores[j];
            std::vector<double> xs, ys;
            for (const auto& [id, x] : scores_i) {
                auto it = scores_j.find(id);
                if (it != scores_j.end()) {
                    xs.push_back(x);
                    ys.push_back(it->second);
                }
            }
            if (xs.size() < 3) {
                throw AlignmentError("sections '" + label_i + "' and '" + label_j +
                                     "' share only " + std::to_string(xs.size()) + " documents");
            }
            CorrelationRecord record = pearson(xs, ys, label_i, label_j);
            matrix.cells[i][j] = record;
            std::swap(record.x_label, record.y_label);
            matrix.cells[j][i] = record;
        }
    }
    return matrix;
}

std::string significance_stars(double p) {
    if (p < 0.001) return "***";
    if (p < 0.01) return "**";
    if (p < 0.05) return "*";
    return "";
}

}  // namespace styloseg::stats
