#include <cstdio>
#include <exception>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "styloseg/config.hpp"
#include "styloseg/pipeline.hpp"

namespace {

using styloseg::config::RunConfig;

struct CommonOptions {
    std::string config_path;
    std::vector<std::pair<std::string, std::string>> overrides;  // applied in order
};

/// Every config key is overridable by a same-named flag.
void add_config_flags(CLI::App* cmd, CommonOptions& common) {
    cmd->add_option("--config", common.config_path, "Config file (key = value sections)");

    auto add = [cmd, &common](const std::string& flag, const std::string& key,
                              const std::string& desc) {
        cmd->add_option_function<std::vector<std::string>>(
            flag,
            [key, &common](const std::vector<std::string>& values) {
                for (const auto& v : values) {
                    common.overrides.emplace_back(key, v);
                }
            },
            desc);
    };

    add("--seed", "run.seed", "Global seed; all randomness flows from it");
    add("--workers", "run.workers", "Document-level worker count");
    add("--min-section-chars", "corpus.min_section_chars", "Per-section length floor");
    add("--line-pattern", "corpus.line_pattern", "Extra cleaning rule: drop matching lines");
    add("--inline-pattern", "corpus.inline_pattern", "Extra cleaning rule: splice out matches");
    add("--smoothing", "classifier.smoothing", "Log-odds smoothing constant");
    add("--min-doc-frequency", "classifier.min_doc_frequency",
        "Drop words seen in fewer documents (0 = off)");
    add("--decision-threshold", "classifier.decision_threshold",
        "total > threshold predicts LLM authorship");
    add("--cost-model", "changepoint.cost_model", "Segment cost model");
    add("--min-segment-length", "changepoint.min_segment_length", "Minimum segment length");
    add("--threshold-margin", "changepoint.threshold_margin", "Threshold search margin");
    add("--signal", "changepoint.signal", "PELT input series: cumsum or raw");
    add("--length-norm", "changepoint.length_norm",
        "Threshold length normalization: binned_zscore, divide_by_length or identity");
    add("--bins", "stats.bins", "Bin count for z-score normalization");
    add("--binning", "stats.binning", "Binning: quantile or width");
    add("--ttest", "stats.ttest", "Pairwise test: welch or student");
    add("--target-fraction", "regen.target_fraction",
        "Inserted paragraph length as a fraction of the text");
    add("--train-fraction", "regen.train_fraction", "Share of documents used for training");
    add("--provider", "provider.kind", "Provider kind: mock or http");
    add("--endpoint", "provider.endpoint", "Chat-completion endpoint URL");
    add("--model-name", "provider.model", "Provider model name");
    add("--credential-env", "provider.credential_env",
        "Environment variable holding the API credential");
    add("--timeout-seconds", "provider.timeout_seconds", "Provider request timeout");
    add("--max-retries", "provider.max_retries", "Provider retry budget");
    add("--rewrite-prompt", "provider.rewrite_prompt", "Rewrite prompt template");
    add("--paragraph-prompt", "provider.paragraph_prompt", "Paragraph prompt template");
    add("--series", "output.series", "Emit per-document series CSVs (true/false)");
}

RunConfig resolve_config(const CommonOptions& common) {
    RunConfig cfg;
    if (!common.config_path.empty()) {
        cfg = styloseg::config::load_config(common.config_path);
    }
    for (const auto& [key, value] : common.overrides) {
        styloseg::config::apply_override(cfg, key, value);
    }
    styloseg::config::validate(cfg);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stylometric segmentation toolkit: word log-odds scoring and "
                 "variance-normalized changepoint thresholds for documents"};
    app.require_subcommand(1);

    CommonOptions common;

    // prepare
    auto* prepare = app.add_subcommand("prepare", "Section, filter and clean a raw corpus");
    std::string prepare_input, prepare_out;
    prepare->add_option("input_dir", prepare_input, "Directory of UTF-8 .txt documents")
        ->required();
    prepare->add_option("--out", prepare_out, "Output directory")->required();
    add_config_flags(prepare, common);

    // train
    auto* train = app.add_subcommand("train", "Train the word log-odds model");
    std::string train_human, train_llm, train_out;
    train->add_option("human_dir", train_human, "Human corpus directory")->required();
    train->add_option("llm_dir", train_llm, "LLM corpus directory")->required();
    train->add_option("--out", train_out, "Model file path")->required();
    add_config_flags(train, common);

    // segment
    auto* segment = app.add_subcommand(
        "segment", "Score a corpus and calibrate per-document threshold multipliers");
    std::string segment_model, segment_corpus, segment_out;
    bool segment_per_section = false;
    segment->add_option("corpus_dir", segment_corpus, "Prepared corpus directory")->required();
    segment->add_option("--model", segment_model, "Model file from train")->required();
    segment->add_option("--out", segment_out, "Output directory")->required();
    segment->add_flag("--per-section", segment_per_section,
                      "Also score each section separately");
    add_config_flags(segment, common);

    // validate
    auto* validate = app.add_subcommand(
        "validate", "Three-corpus validation through the configured provider");
    std::string validate_corpus, validate_out;
    validate->add_option("corpus_dir", validate_corpus, "Prepared corpus directory")->required();
    validate->add_option("--out", validate_out, "Output directory")->required();
    add_config_flags(validate, common);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Correlation analysis of segment outputs");
    std::string analyze_input, analyze_out;
    bool analyze_per_section = false;
    analyze->add_option("scores_csv", analyze_input,
                        "segment.csv (or segment_sections.csv with --per-section)")
        ->required();
    analyze->add_option("--out", analyze_out, "Output directory")->required();
    analyze->add_flag("--per-section", analyze_per_section,
                      "Section correlation matrix over a segment_sections.csv");
    add_config_flags(analyze, common);

    // report
    auto* report = app.add_subcommand("report", "Render machine outputs as text tables");
    std::string report_dir;
    report->add_option("dir", report_dir, "Directory holding the CSV outputs")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (prepare->parsed()) {
            const auto cfg = resolve_config(common);
            const auto outcome = styloseg::pipeline::prepare(cfg, prepare_input, prepare_out);
            std::printf("prepare: %zu accepted, %zu rejected\n", outcome.accepted,
                        outcome.rejected);
            if (outcome.accepted == 0 && outcome.rejected == 0) {
                std::fprintf(stderr, "warning: no .txt documents found in %s\n",
                             prepare_input.c_str());
            }
            return 0;
        }
        if (train->parsed()) {
            const auto cfg = resolve_config(common);
            const auto outcome = styloseg::pipeline::train(cfg, train_human, train_llm, train_out);
            std::printf("train: %zu human docs, %zu llm docs, vocabulary %zu -> %s\n",
                        outcome.human_docs, outcome.llm_docs, outcome.vocabulary,
                        train_out.c_str());
            return 0;
        }
        if (segment->parsed()) {
            const auto cfg = resolve_config(common);
            const auto outcome = styloseg::pipeline::segment(cfg, segment_model, segment_corpus,
                                                             segment_out, segment_per_section);
            std::printf("segment: %zu scored, %zu skipped\n", outcome.rows.size(),
                        outcome.skipped);
            if (outcome.degenerate) {
                std::fprintf(stderr, "warning: every threshold multiplier is zero\n");
                return 1;
            }
            return 0;
        }
        if (validate->parsed()) {
            const auto cfg = resolve_config(common);
            const auto outcome = styloseg::pipeline::validate(cfg, validate_corpus, validate_out);
            std::printf("validate: %zu train docs, %zu eval docs, %zu skipped\n",
                        outcome.train_docs, outcome.eval_docs, outcome.skipped);
            for (const auto& t : outcome.ttests) {
                if (t.metric == "threshold_normalized") {
                    std::printf("  %s: t=%.3f p=%.5f\n", t.comparison.c_str(), t.result.t,
                                t.result.p);
                }
            }
            return 0;
        }
        if (analyze->parsed()) {
            const auto cfg = resolve_config(common);
            if (analyze_per_section) {
                const auto matrix =
                    styloseg::pipeline::analyze_per_section(cfg, analyze_input, analyze_out);
                std::printf("analyze: %zux%zu section matrix\n", matrix.labels.size(),
                            matrix.labels.size());
                return 0;
            }
            const auto outcome = styloseg::pipeline::analyze(cfg, analyze_input, analyze_out);
            std::printf("analyze: %zu raw and %zu normalized correlation pairs\n",
                        outcome.raw.size(), outcome.normalized.size());
            if (outcome.degenerate) {
                std::fprintf(stderr, "warning: degenerate sample in correlation analysis\n");
                return 1;
            }
            return 0;
        }
        if (report->parsed()) {
            std::fputs(styloseg::pipeline::report(report_dir).c_str(), stdout);
            return 0;
        }
    } catch (const styloseg::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const styloseg::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const styloseg::SchemaError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const styloseg::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
