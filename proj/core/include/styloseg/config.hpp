#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "styloseg/changepoint.hpp"
#include "styloseg/regen.hpp"
#include "styloseg/stats.hpp"

namespace styloseg::config {

/// Everything a run needs, loadable from one declarative key = value config
/// file with [section] headers. A canonical snapshot is written beside every
/// command's outputs.
struct RunConfig {
    // [run]
    std::uint64_t seed = 42;       // the one source of all randomness
    std::size_t workers = 1;       // document-level parallelism

    // [corpus]
    std::size_t min_section_chars = 500;
    std::vector<std::string> extra_line_patterns;    // appended to the defaults
    std::vector<std::string> extra_inline_patterns;  // appended to the defaults

    // [classifier]
    double smoothing = classifier::kDefaultSmoothing;
    std::size_t min_doc_frequency = 0;
    double decision_threshold = 0.0;  // total > threshold  =>  predicted LLM

    // [changepoint]
    std::string cost_model = "l2";
    std::size_t min_segment_length = changepoint::kDefaultMinSegmentLength;
    double threshold_margin = changepoint::kDefaultThresholdMargin;
    std::string signal = "cumsum";              // or "raw"
    std::string length_norm = "binned_zscore";  // "divide_by_length", "identity"

    // [stats]
    std::size_t bins = stats::kDefaultBins;
    std::string binning = "quantile";  // or "width"
    std::string ttest = "welch";       // or "student"

    // [regen]
    double target_fraction = regen::kDefaultTargetFraction;
    double train_fraction = 2.0 / 3.0;

    // [provider]
    regen::ProviderConfig provider;

    // [output]
    bool emit_series = false;

    changepoint::SignalKind signal_kind() const;
    changepoint::LengthNormScheme length_norm_scheme() const;
    stats::BinningKind binning_kind() const;
    stats::TTestKind ttest_kind() const;
    corpus::SectioningOptions sectioning_options() const;
};

/// Parse the INI-style config file. Unknown keys are errors.
RunConfig load_config(const std::filesystem::path& path);

/// Apply one "section.key" override (same names as the config file).
void apply_override(RunConfig& cfg, const std::string& dotted_key, const std::string& value);

/// Canonical rendering: every key in a fixed order, suitable for the
/// config_snapshot written beside outputs. load(snapshot(cfg)) == cfg.
std::string snapshot(const RunConfig& cfg);

/// Validate cross-field constraints; throws ConfigError.
void validate(const RunConfig& cfg);

}  // namespace styloseg::config
