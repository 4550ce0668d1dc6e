#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "styloseg/changepoint.hpp"
#include "styloseg/config.hpp"
#include "styloseg/stats.hpp"

namespace styloseg::pipeline {

using config::RunConfig;

// ---------------------------------------------------------------------------
// prepare
// ---------------------------------------------------------------------------

struct PrepareOutcome {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
};

/// Read every .txt document in input_dir, detect and clean the sections,
/// write <id>.sections.json per accepted document plus rejections.csv, the
/// run manifest and the config snapshot.
PrepareOutcome prepare(const RunConfig& cfg, const std::filesystem::path& input_dir,
                       const std::filesystem::path& out_dir);

// ---------------------------------------------------------------------------
// corpus loading shared by the later stages
// ---------------------------------------------------------------------------

struct CorpusDocument {
    std::string id;
    std::string combined;
    // populated only when loaded from .sections.json
    std::string abstract;
    std::string introduction;
    std::string conclusion;
    bool has_sections = false;
};

/// Load .sections.json and/or plain .txt documents, sorted by id.
std::vector<CorpusDocument> load_corpus(const std::filesystem::path& dir);

// ---------------------------------------------------------------------------
// train
// ---------------------------------------------------------------------------

struct TrainOutcome {
    std::size_t human_docs = 0;
    std::size_t llm_docs = 0;
    std::size_t vocabulary = 0;
};

/// Build the two frequency profiles and write the log-odds model file. The
/// model file is written atomically: a failed run leaves no partial file.
TrainOutcome train(const RunConfig& cfg, const std::filesystem::path& human_dir,
                   const std::filesystem::path& llm_dir, const std::filesystem::path& model_out);

// ---------------------------------------------------------------------------
// segment
// ---------------------------------------------------------------------------

struct SegmentRow {
    std::string id;
    std::size_t length = 0;  // token count
    double total = 0.0;
    double variance = 0.0;
    double threshold_multiplier = 0.0;
    std::size_t passes = 0;
    bool never_segments = false;
    std::vector<std::size_t> unit_changepoints;  // PELT changepoints at multiplier 1.0
};

struct SegmentOutcome {
    std::vector<SegmentRow> rows;
    std::size_t skipped = 0;
    bool degenerate = false;  // every threshold 0 (analysis-level degeneracy)
};

/// Score a prepared corpus against a model and calibrate the per-document
/// threshold multiplier. Writes scores.csv, thresholds.csv, segment.csv and
/// (with --per-section corpora) segment_sections.csv.
SegmentOutcome segment(const RunConfig& cfg, const std::filesystem::path& model_path,
                       const std::filesystem::path& corpus_dir,
                       const std::filesystem::path& out_dir, bool per_section = false);

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

struct PairTest {
    std::string comparison;
    std::string metric;
    stats::WelchResult result;
};

struct ValidateOutcome {
    std::vector<stats::GroupSummary> summaries;  // per group x metric
    std::vector<PairTest> ttests;
    std::size_t train_docs = 0;
    std::size_t eval_docs = 0;
    std::size_t skipped = 0;

    const stats::GroupSummary* find_summary(const std::string& group,
                                            const std::string& metric) const;
    const PairTest* find_ttest(const std::string& comparison, const std::string& metric) const;
};

/// The three-corpus validation: regenerate a train split through the
/// provider, train a model, build original/regenerated/segmented versions of
/// the held-out split, then compare length-normalized threshold multipliers
/// across the groups. Writes summary.csv, ttests.csv, rows.csv,
/// confusion.csv, regen_manifest.jsonl and threshold_histogram.svg.
ValidateOutcome validate(const RunConfig& cfg, const std::filesystem::path& corpus_dir,
                         const std::filesystem::path& out_dir);

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

struct AnalyzeOutcome {
    std::vector<stats::CorrelationRecord> raw;
    std::vector<stats::CorrelationRecord> normalized;
    bool degenerate = false;
};

/// Correlation analysis of a segment.csv: raw and 25-bin z-score-normalized
/// correlations between length, total log odds and threshold multiplier.
/// Writes correlations.csv, correlations.txt and four scatter SVGs.
AnalyzeOutcome analyze(const RunConfig& cfg, const std::filesystem::path& segment_csv,
                       const std::filesystem::path& out_dir);

/// Per-section correlation matrix over a segment_sections.csv. Writes
/// section_matrix.csv and section_matrix.txt.
stats::CorrelationMatrix analyze_per_section(const RunConfig& cfg,
                                             const std::filesystem::path& sections_csv,
                                             const std::filesystem::path& out_dir);

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

/// Render the machine-readable CSVs found in `in_dir` as paper-style text
/// tables; returns the rendering and writes report.txt into the directory.
std::string report(const std::filesystem::path& in_dir);

}  // namespace styloseg::pipeline
