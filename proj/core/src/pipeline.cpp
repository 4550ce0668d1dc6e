#include "styloseg/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <thread>
#include <variant>

#include "json.hpp"
#include "styloseg/classifier.hpp"
#include "styloseg/corpus.hpp"
#include "styloseg/digest.hpp"
#include "styloseg/io.hpp"
#include "styloseg/regen.hpp"
#include "styloseg/svg.hpp"

namespace styloseg::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Collects a stage's output files so the run manifest can list their
/// digests. Manifests record names and digests only (no paths, no
/// timestamps) so reruns are byte-identical.
class StageWriter {
public:
    StageWriter(std::string command, const RunConfig& cfg, fs::path out_dir)
        : command_(std::move(command)), out_dir_(std::move(out_dir)) {
        snapshot_ = config::snapshot(cfg);
    }

    void add(const std::string& name, const std::string& content) {
        io::write_file(out_dir_ / name, content);
        outputs_[name] = fnv1a_hex(content);
    }

    void set_input_digest(const std::string& digest) { input_digest_ = digest; }
    void set_count(const std::string& key, std::size_t value) { counts_[key] = value; }

    void finish() {
        add("config_snapshot.ini", snapshot_);
        json manifest;
        manifest["command"] = command_;
        manifest["config_digest"] = fnv1a_hex(snapshot_);
        manifest["input_digest"] = input_digest_;
        manifest["counts"] = counts_;
        manifest["outputs"] = outputs_;
        io::write_file(out_dir_ / "run_manifest.json", manifest.dump(2) + "\n");
    }

private:
    std::string command_;
    fs::path out_dir_;
    std::string snapshot_;
    std::string input_digest_ = "";
    std::map<std::string, std::size_t> counts_;
    std::map<std::string, std::string> outputs_;
};

std::string digest_documents(const std::vector<CorpusDocument>& docs) {
    Fnv1a h;
    for (const auto& d : docs) {
        h.update(d.id);
        h.update(std::string_view("\0", 1));
        h.update(d.combined);
        h.update(std::string_view("\0", 1));
    }
    return h.hex();
}

std::string join_indices(const std::vector<std::size_t>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i > 0) out += ';';
        out += std::to_string(xs[i]);
    }
    return out;
}

/// Guard against tiny corpora: never ask for bins with fewer than ~8 points
/// each, while leaving the configured count untouched for real corpora.
std::size_t effective_bins(std::size_t configured, std::size_t n) {
    return std::min(configured, std::max<std::size_t>(1, n / 8));
}

struct DocScore {
    std::string id;
    std::size_t length = 0;
    double total = 0.0;
    double variance = 0.0;
    double threshold = 0.0;
    std::size_t passes = 0;
    bool never_segments = false;
    std::vector<std::size_t> unit_changepoints;
};

/// Tokenize, score and calibrate one document. Returns the skip reason on
/// failure instead of a score.
std::variant<DocScore, std::string> score_document(const RunConfig& cfg,
                                                   const classifier::LogOddsModel& model,
                                                   const std::string& id,
                                                   const std::string& text,
                                                   bool unit_changepoints) {
    const auto tokens = corpus::tokenize_allow_empty(text);
    if (tokens.tokens.empty()) {
        return std::string("empty token stream");
    }
    const auto scored = classifier::score(model, tokens, id);
    const auto series = changepoint::make_series(scored, cfg.signal_kind());

    DocScore out;
    out.id = id;
    out.length = scored.length;
    out.total = scored.total;
    out.variance = series.variance;
    try {
        const auto threshold =
            changepoint::threshold_search(series, cfg.min_segment_length, cfg.threshold_margin);
        out.threshold = threshold.multiplier;
        out.passes = threshold.passes;
        out.never_segments = threshold.never_segments;
        if (unit_changepoints && series.variance > 0.0) {
            out.unit_changepoints =
                changepoint::pelt(series, changepoint::normalized_penalty(series, 1.0),
                                  cfg.min_segment_length)
                    .changepoints;
        }
    } catch (const SeriesTooShort&) {
        return std::string("series too short for changepoint search");
    }
    return out;
}

/// Normalize thresholds for length under the configured scheme.
std::vector<double> normalize_thresholds(const RunConfig& cfg, const std::vector<double>& lengths,
                                         const std::vector<double>& thresholds) {
    switch (cfg.length_norm_scheme()) {
    case changepoint::LengthNormScheme::divide_by_length: {
        std::vector<double> out(thresholds.size());
        for (std::size_t i = 0; i < thresholds.size(); ++i) {
            out[i] = changepoint::normalize_threshold_for_length(
                thresholds[i], static_cast<std::size_t>(lengths[i]),
                changepoint::LengthNormScheme::divide_by_length);
        }
        return out;
    }
    case changepoint::LengthNormScheme::identity:
        return thresholds;
    case changepoint::LengthNormScheme::binned_zscore:
    default:
        return stats::zscore_by_length_bins(lengths, thresholds,
                                            effective_bins(cfg.bins, thresholds.size()),
                                            cfg.binning_kind());
    }
}

std::string render_table(const std::string& title, const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> widths(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
        widths[c] = header[c].size();
    }
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size() && c < widths.size(); ++c) {
            widths[c] = std::max(widths[c], row[c].size());
        }
    }
    std::string out = title + "\n";
    auto emit_row = [&](const std::vector<std::string>& row) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out += "  ";
            out += row[c];
            out.append(widths[c] - row[c].size(), ' ');
        }
        while (!out.empty() && out.back() == ' ') out.pop_back();
        out += '\n';
    };
    emit_row(header);
    std::size_t total = 0;
    for (std::size_t c = 0; c < widths.size(); ++c) {
        total += widths[c] + (c > 0 ? 2 : 0);
    }
    out.append(total, '-');
    out += '\n';
    for (const auto& row : rows) {
        emit_row(row);
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// prepare
// ---------------------------------------------------------------------------

PrepareOutcome prepare(const RunConfig& cfg, const fs::path& input_dir, const fs::path& out_dir) {
    const auto files = io::list_files(input_dir, {".txt"});
    const auto options = cfg.sectioning_options();

    StageWriter writer("prepare", cfg, out_dir);
    PrepareOutcome outcome;
    std::string rejections = "id,reason\n";
    Fnv1a input_hash;

    for (const auto& file : files) {
        const std::string id = file.stem().string();
        const std::string body = io::read_file(file);
        input_hash.update(id);
        input_hash.update(body);
        try {
            const auto sectioned = corpus::detect_sections({id, body}, options);
            json j;
            j["id"] = sectioned.id;
            j["abstract"] = sectioned.abstract;
            j["introduction"] = sectioned.introduction;
            j["conclusion"] = sectioned.conclusion;
            j["combined"] = sectioned.combined;
            writer.add(id + ".sections.json", j.dump(2) + "\n");
            ++outcome.accepted;
        } catch (const Error& e) {
            rejections += io::csv_row({id, e.what()});
            ++outcome.rejected;
        }
    }

    writer.add("rejections.csv", rejections);
    writer.set_input_digest(input_hash.hex());
    writer.set_count("accepted", outcome.accepted);
    writer.set_count("rejected", outcome.rejected);
    writer.finish();
    return outcome;
}

// ---------------------------------------------------------------------------
// corpus loading
// ---------------------------------------------------------------------------

std::vector<CorpusDocument> load_corpus(const fs::path& dir) {
    std::vector<CorpusDocument> docs;
    for (const auto& file : io::list_files(dir, {".sections.json"})) {
        const std::string content = io::read_file(file);
        json j;
        try {
            j = json::parse(content);
        } catch (const json::exception& e) {
            throw IoError(file.string() + ": " + e.what());
        }
        CorpusDocument doc;
        doc.id = j.value("id", file.stem().stem().string());
        doc.abstract = j.value("abstract", "");
        doc.introduction = j.value("introduction", "");
        doc.conclusion = j.value("conclusion", "");
        doc.combined = j.value("combined", "");
        doc.has_sections = true;
        docs.push_back(std::move(doc));
    }
    for (const auto& file : io::list_files(dir, {".txt"})) {
        CorpusDocument doc;
        doc.id = file.stem().string();
        doc.combined = io::read_file(file);
        docs.push_back(std::move(doc));
    }
    std::sort(docs.begin(), docs.end(),
              [](const CorpusDocument& a, const CorpusDocument& b) { return a.id < b.id; });
    return docs;
}

// ---------------------------------------------------------------------------
// train
// ---------------------------------------------------------------------------

TrainOutcome train(const RunConfig& cfg, const fs::path& human_dir, const fs::path& llm_dir,
                   const fs::path& model_out) {
    const auto human_docs = load_corpus(human_dir);
    const auto llm_docs = load_corpus(llm_dir);

    auto tokenize_corpus = [](const std::vector<CorpusDocument>& docs) {
        std::vector<corpus::TokenStream> streams;
        for (const auto& d : docs) {
            auto tokens = corpus::tokenize_allow_empty(d.combined);
            if (!tokens.tokens.empty()) {
                streams.push_back(std::move(tokens));
            }
        }
        return streams;
    };
    const auto human_streams = tokenize_corpus(human_docs);
    const auto llm_streams = tokenize_corpus(llm_docs);
    if (human_streams.empty() || llm_streams.empty()) {
        throw EmptyCorpus();
    }

    classifier::TrainOptions options;
    options.smoothing = cfg.smoothing;
    options.min_doc_frequency = cfg.min_doc_frequency;

    std::map<std::string, std::size_t> doc_frequency;
    if (options.min_doc_frequency > 0) {
        for (const auto* streams : {&human_streams, &llm_streams}) {
            for (const auto& stream : *streams) {
                std::map<std::string, bool> seen;
                for (const auto& token : stream.tokens) {
                    if (!seen.count(token)) {
                        seen.emplace(token, true);
                        ++doc_frequency[token];
                    }
                }
            }
        }
    }

    const auto model = classifier::train_filtered(classifier::build_profile(human_streams),
                                                  classifier::build_profile(llm_streams),
                                                  doc_frequency, options);

    // write atomically: a failing run must not leave a partial model
    const fs::path tmp = model_out.string() + ".tmp";
    classifier::serialize_model(model, tmp);
    fs::rename(tmp, model_out);

    TrainOutcome outcome;
    outcome.human_docs = human_streams.size();
    outcome.llm_docs = llm_streams.size();
    outcome.vocabulary = model.log_odds.size();

    const fs::path out_dir = model_out.has_parent_path() ? model_out.parent_path() : fs::path(".");
    StageWriter writer("train", cfg, out_dir);
    writer.set_input_digest(fnv1a_hex(digest_documents(human_docs) + digest_documents(llm_docs)));
    writer.set_count("human_docs", outcome.human_docs);
    writer.set_count("llm_docs", outcome.llm_docs);
    writer.set_count("vocabulary", outcome.vocabulary);
    writer.finish();
    return outcome;
}

// ---------------------------------------------------------------------------
// segment
// ---------------------------------------------------------------------------

SegmentOutcome segment(const RunConfig& cfg, const fs::path& model_path, const fs::path& corpus_dir,
                       const fs::path& out_dir, bool per_section) {
    const auto model = classifier::load_model(model_path);
    const auto docs = load_corpus(corpus_dir);

    std::vector<std::variant<DocScore, std::string>> results(
        docs.size(), std::variant<DocScore, std::string>(std::string("not processed")));

    const std::size_t workers = std::max<std::size_t>(1, cfg.workers);
    std::atomic<std::size_t> next{0};
    auto run = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= docs.size()) break;
            results[i] = score_document(cfg, model, docs[i].id, docs[i].combined, true);
        }
    };
    if (workers == 1 || docs.size() <= 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < std::min(workers, docs.size()); ++w) {
            pool.emplace_back(run);
        }
        for (auto& t : pool) t.join();
    }

    SegmentOutcome outcome;
    std::string scores_csv = "id,length,total\n";
    std::string thresholds_csv =
        "id,length,variance,threshold_multiplier,passes,changepoints_at_unit_multiplier\n";
    std::string segment_csv =
        "id,length,total,variance,threshold_multiplier,passes,never_segments,"
        "changepoints_at_unit_multiplier\n";
    std::string skips_csv = "id,reason\n";

    StageWriter writer("segment", cfg, out_dir);
    bool any_positive = false;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (std::holds_alternative<std::string>(results[i])) {
            ++outcome.skipped;
            skips_csv += io::csv_row({docs[i].id, std::get<std::string>(results[i])});
            continue;
        }
        const DocScore& s = std::get<DocScore>(results[i]);
        SegmentRow row;
        row.id = s.id;
        row.length = s.length;
        row.total = s.total;
        row.variance = s.variance;
        row.threshold_multiplier = s.threshold;
        row.passes = s.passes;
        row.never_segments = s.never_segments;
        row.unit_changepoints = s.unit_changepoints;

        scores_csv += io::csv_row({row.id, std::to_string(row.length), io::format_double(row.total)});
        thresholds_csv += io::csv_row({row.id, std::to_string(row.length),
                                       io::format_double(row.variance),
                                       io::format_double(row.threshold_multiplier),
                                       std::to_string(row.passes),
                                       join_indices(row.unit_changepoints)});
        segment_csv += io::csv_row(
            {row.id, std::to_string(row.length), io::format_double(row.total),
             io::format_double(row.variance), io::format_double(row.threshold_multiplier),
             std::to_string(row.passes), row.never_segments ? "1" : "0",
             join_indices(row.unit_changepoints)});
        if (row.threshold_multiplier > 0.0) {
            any_positive = true;
        }

        if (cfg.emit_series) {
            const auto tokens = corpus::tokenize_allow_empty(docs[i].combined);
            const auto scored = classifier::score(model, tokens, docs[i].id);
            std::string series_csv = "index,token,log_odds,cumsum\n";
            for (std::size_t k = 0; k < scored.length; ++k) {
                series_csv += io::csv_row({std::to_string(k), tokens.tokens[k],
                                           io::format_double(scored.word_odds[k]),
                                           io::format_double(scored.cumsum[k])});
            }
            writer.add("series/" + docs[i].id + ".series.csv", series_csv);
        }

        outcome.rows.push_back(std::move(row));
    }
    outcome.degenerate = !outcome.rows.empty() && !any_positive;

    if (per_section) {
        std::string sections_csv = "id,section,length,total,variance,threshold_multiplier\n";
        bool any_sectioned = false;
        for (const auto& doc : docs) {
            if (!doc.has_sections) continue;
            any_sectioned = true;
            const std::vector<std::pair<std::string, const std::string*>> parts = {
                {"abstract", &doc.abstract},
                {"introduction", &doc.introduction},
                {"conclusion", &doc.conclusion},
                {"combined", &doc.combined},
            };
            for (const auto& [name, text] : parts) {
                auto result = score_document(cfg, model, doc.id, *text, false);
                if (std::holds_alternative<std::string>(result)) continue;
                const DocScore& s = std::get<DocScore>(result);
                sections_csv += io::csv_row({doc.id, name, std::to_string(s.length),
                                             io::format_double(s.total),
                                             io::format_double(s.variance),
                                             io::format_double(s.threshold)});
            }
        }
        if (!any_sectioned) {
            throw ConfigError("--per-section needs a corpus of .sections.json documents");
        }
        writer.add("segment_sections.csv", sections_csv);
    }

    writer.add("scores.csv", scores_csv);
    writer.add("thresholds.csv", thresholds_csv);
    writer.add("segment.csv", segment_csv);
    writer.add("skips.csv", skips_csv);
    writer.set_input_digest(digest_documents(docs));
    writer.set_count("documents", docs.size());
    writer.set_count("scored", outcome.rows.size());
    writer.set_count("skipped", outcome.skipped);
    writer.finish();
    return outcome;
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

const stats::GroupSummary* ValidateOutcome::find_summary(const std::string& group,
                                                         const std::string& metric) const {
    for (const auto& s : summaries) {
        if (s.label == group + "/" + metric) {
            return &s;
        }
    }
    return nullptr;
}

const PairTest* ValidateOutcome::find_ttest(const std::string& comparison,
                                            const std::string& metric) const {
    for (const auto& t : ttests) {
        if (t.comparison == comparison && t.metric == metric) {
            return &t;
        }
    }
    return nullptr;
}

ValidateOutcome validate(const RunConfig& cfg, const fs::path& corpus_dir,
                         const fs::path& out_dir) {
    const auto docs = load_corpus(corpus_dir);
    if (docs.size() < 4) {
        throw EmptyCorpus();
    }

    // seeded train/eval split
    std::vector<std::size_t> order(docs.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 split_rng(mix_seed(cfg.seed, fnv1a("validate-split")));
    std::shuffle(order.begin(), order.end(), split_rng);
    std::size_t train_n = static_cast<std::size_t>(
        std::llround(cfg.train_fraction * static_cast<double>(docs.size())));
    train_n = std::clamp<std::size_t>(train_n, 1, docs.size() - 1);

    std::vector<std::size_t> train_idx(order.begin(), order.begin() + train_n);
    std::vector<std::size_t> eval_idx(order.begin() + train_n, order.end());
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(eval_idx.begin(), eval_idx.end());

    auto provider_cfg = cfg.provider;
    provider_cfg.seed = cfg.seed;
    auto provider = regen::make_provider(provider_cfg);
    std::string provider_log;
    provider->set_archive([&provider_log](const std::string& request, const std::string& response) {
        json record;
        record["request"] = request;
        record["response"] = response;
        provider_log += record.dump() + "\n";
    });

    ValidateOutcome outcome;
    std::string skips_csv = "id,reason\n";
    std::string manifest_jsonl;
    const std::string prompt_digest =
        fnv1a_hex(provider_cfg.rewrite_prompt + "\n" + provider_cfg.paragraph_prompt);
    const std::string provider_digest = provider->digest();

    auto manifest_record = [&](const std::string& id, const std::string& kind,
                               std::optional<std::pair<std::size_t, std::size_t>> span) {
        json record;
        record["id"] = id;
        record["kind"] = kind;
        if (span) {
            record["span_offset"] = span->first;
            record["span_length"] = span->second;
        }
        record["prompt_digest"] = prompt_digest;
        record["provider_digest"] = provider_digest;
        manifest_jsonl += record.dump() + "\n";
    };

    // train phase: regenerate the train split and fit the model
    std::vector<corpus::TokenStream> human_streams;
    std::vector<corpus::TokenStream> llm_streams;
    for (std::size_t i : train_idx) {
        const auto& doc = docs[i];
        try {
            const std::string regenerated = regen::regenerate(*provider, doc.combined);
            auto human_tokens = corpus::tokenize_allow_empty(doc.combined);
            auto llm_tokens = corpus::tokenize_allow_empty(regenerated);
            if (human_tokens.tokens.empty() || llm_tokens.tokens.empty()) {
                skips_csv += io::csv_row({doc.id, "empty token stream"});
                continue;
            }
            manifest_record(doc.id, "original", std::nullopt);
            manifest_record(doc.id, "regenerated", std::nullopt);
            human_streams.push_back(std::move(human_tokens));
            llm_streams.push_back(std::move(llm_tokens));
            ++outcome.train_docs;
        } catch (const Error& e) {
            skips_csv += io::csv_row({doc.id, e.what()});
            ++outcome.skipped;
        }
    }
    if (human_streams.empty()) {
        throw EmptyCorpus();
    }

    classifier::TrainOptions train_options;
    train_options.smoothing = cfg.smoothing;
    train_options.min_doc_frequency = cfg.min_doc_frequency;
    const auto model = classifier::train_filtered(classifier::build_profile(human_streams),
                                                  classifier::build_profile(llm_streams), {},
                                                  train_options);

    // eval phase: three aligned corpora over the held-out split
    std::vector<std::pair<std::string, std::string>> eval_docs;
    for (std::size_t i : eval_idx) {
        eval_docs.emplace_back(docs[i].id, docs[i].combined);
    }
    const auto sets = regen::build_validation_sets(eval_docs, *provider, provider_cfg,
                                                   cfg.target_fraction, cfg.seed);
    for (const auto& skip : sets.skips) {
        skips_csv += io::csv_row({skip.id, skip.reason});
        ++outcome.skipped;
    }

    struct EvalRow {
        std::string id;
        std::string group;
        DocScore score;
        double normalized = 0.0;
    };
    std::vector<EvalRow> rows;
    static const std::vector<std::string> kGroups = {"original", "regenerated", "segmented"};

    for (const auto& triple : sets.triples) {
        const std::vector<const std::string*> texts = {&triple.original, &triple.regenerated,
                                                       &triple.segmented};
        std::vector<DocScore> scores;
        std::string failure;
        for (std::size_t g = 0; g < kGroups.size(); ++g) {
            auto result = score_document(cfg, model, triple.id, *texts[g], false);
            if (std::holds_alternative<std::string>(result)) {
                failure = kGroups[g] + ": " + std::get<std::string>(result);
                break;
            }
            scores.push_back(std::get<DocScore>(result));
        }
        if (!failure.empty()) {
            skips_csv += io::csv_row({triple.id, failure});
            ++outcome.skipped;
            continue;
        }
        manifest_record(triple.id, "original", std::nullopt);
        manifest_record(triple.id, "regenerated", std::nullopt);
        manifest_record(triple.id, "segmented",
                        std::make_pair(triple.span_offset, triple.span_length));
        for (std::size_t g = 0; g < kGroups.size(); ++g) {
            rows.push_back({triple.id, kGroups[g], std::move(scores[g]), 0.0});
        }
        ++outcome.eval_docs;
    }
    if (rows.empty()) {
        throw EmptyCorpus();
    }

    // length normalization over the pooled rows
    std::vector<double> lengths, thresholds;
    lengths.reserve(rows.size());
    for (const auto& row : rows) {
        lengths.push_back(static_cast<double>(row.score.length));
        thresholds.push_back(row.score.threshold);
    }
    const auto normalized = normalize_thresholds(cfg, lengths, thresholds);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i].normalized = normalized[i];
    }

    // group samples per metric
    auto collect = [&](const std::string& group, auto&& get) {
        std::vector<double> out;
        for (const auto& row : rows) {
            if (row.group == group) {
                out.push_back(get(row));
            }
        }
        return out;
    };
    const std::vector<std::pair<std::string, std::function<double(const EvalRow&)>>> metrics = {
        {"threshold_normalized", [](const EvalRow& r) { return r.normalized; }},
        {"threshold_raw", [](const EvalRow& r) { return r.score.threshold; }},
        {"total_log_odds", [](const EvalRow& r) { return r.score.total; }},
    };

    std::string summary_csv = "group,metric,mean,sd,n\n";
    for (const auto& [metric, get] : metrics) {
        for (const auto& group : kGroups) {
            const auto sample = collect(group, get);
            auto summary = stats::summarize(group + "/" + metric, sample);
            summary_csv += io::csv_row({group, metric, io::format_double(summary.mean),
                                        io::format_double(summary.sd),
                                        std::to_string(summary.n)});
            outcome.summaries.push_back(std::move(summary));
        }
    }

    static const std::vector<std::pair<std::string, std::pair<std::string, std::string>>> kPairs = {
        {"original_vs_regenerated", {"original", "regenerated"}},
        {"segmented_vs_original", {"segmented", "original"}},
        {"segmented_vs_regenerated", {"segmented", "regenerated"}},
    };
    std::string ttests_csv = "comparison,metric,t,df,p,significance\n";
    for (const auto& [metric, get] : metrics) {
        for (const auto& [name, pair] : kPairs) {
            const auto a = collect(pair.first, get);
            const auto b = collect(pair.second, get);
            try {
                const auto result = stats::welch_t(a, b, cfg.ttest_kind());
                ttests_csv += io::csv_row({name, metric, io::format_double(result.t),
                                           io::format_double(result.df),
                                           io::format_double(result.p),
                                           stats::significance_stars(result.p)});
                outcome.ttests.push_back({name, metric, result});
            } catch (const DegenerateSample&) {
                ttests_csv += io::csv_row({name, metric, "", "", "", "degenerate"});
            }
        }
    }

    // classifier decision rule over the non-segmented groups (confusion counts)
    std::string confusion_csv = "group,predicted_llm,predicted_human\n";
    for (const auto& group : {"original", "regenerated"}) {
        std::size_t llm = 0, human = 0;
        for (const auto& row : rows) {
            if (row.group != group) continue;
            (row.score.total > cfg.decision_threshold ? llm : human) += 1;
        }
        confusion_csv += io::csv_row({group, std::to_string(llm), std::to_string(human)});
    }

    std::string rows_csv =
        "id,group,length,total,variance,threshold_multiplier,threshold_normalized\n";
    for (const auto& row : rows) {
        rows_csv += io::csv_row({row.id, row.group, std::to_string(row.score.length),
                                 io::format_double(row.score.total),
                                 io::format_double(row.score.variance),
                                 io::format_double(row.score.threshold),
                                 io::format_double(row.normalized)});
    }

    std::vector<svg::HistogramGroup> histogram_groups;
    for (std::size_t g = 0; g < kGroups.size(); ++g) {
        svg::HistogramGroup hg;
        hg.label = kGroups[g];
        hg.color = svg::default_colors()[g];
        hg.values = collect(kGroups[g], metrics[0].second);
        histogram_groups.push_back(std::move(hg));
    }

    StageWriter writer("validate", cfg, out_dir);
    writer.add("model.logodds", classifier::serialize_model_to_string(model));
    writer.add("summary.csv", summary_csv);
    writer.add("ttests.csv", ttests_csv);
    writer.add("rows.csv", rows_csv);
    writer.add("confusion.csv", confusion_csv);
    writer.add("skips.csv", skips_csv);
    writer.add("regen_manifest.jsonl", manifest_jsonl);
    writer.add("provider_log.jsonl", provider_log);
    writer.add("threshold_histogram.svg",
               svg::grouped_histogram("Normalized threshold multipliers by group",
                                      "normalized threshold", histogram_groups));
    writer.set_input_digest(digest_documents(docs));
    writer.set_count("documents", docs.size());
    writer.set_count("train_docs", outcome.train_docs);
    writer.set_count("eval_docs", outcome.eval_docs);
    writer.set_count("skipped", outcome.skipped);
    writer.finish();
    return outcome;
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

namespace {

struct Columns {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t index_of(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) return i;
        }
        throw SchemaError(name);
    }
};

Columns read_csv_columns(const fs::path& path) {
    auto rows = io::parse_csv(io::read_file(path));
    if (rows.empty()) {
        throw SchemaError("id");
    }
    Columns out;
    out.header = rows.front();
    out.rows.assign(rows.begin() + 1, rows.end());
    return out;
}

double to_double(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

std::string correlation_row(const stats::CorrelationRecord& r) {
    return io::csv_row({r.x_label, r.y_label, io::format_double(r.r), io::format_double(r.p),
                        std::to_string(r.n), stats::significance_stars(r.p)});
}

}  // namespace

AnalyzeOutcome analyze(const RunConfig& cfg, const fs::path& segment_csv, const fs::path& out_dir) {
    const auto table = read_csv_columns(segment_csv);
    const std::size_t id_col = table.index_of("id");
    const std::size_t length_col = table.index_of("length");
    const std::size_t total_col = table.index_of("total");
    const std::size_t threshold_col = table.index_of("threshold_multiplier");
    (void)id_col;

    std::vector<double> lengths, totals, thresholds;
    for (const auto& row : table.rows) {
        lengths.push_back(to_double(row[length_col]));
        totals.push_back(to_double(row[total_col]));
        thresholds.push_back(to_double(row[threshold_col]));
    }
    if (lengths.size() < 3) {
        throw TooFewPoints(lengths.size());
    }

    const std::size_t bins = effective_bins(cfg.bins, lengths.size());
    const auto z_totals = stats::zscore_by_length_bins(lengths, totals, bins, cfg.binning_kind());
    const auto z_thresholds =
        stats::zscore_by_length_bins(lengths, thresholds, bins, cfg.binning_kind());

    AnalyzeOutcome outcome;
    auto try_pearson = [&](const std::vector<double>& x, const std::vector<double>& y,
                           const std::string& xl, const std::string& yl,
                           std::vector<stats::CorrelationRecord>& sink) {
        try {
            sink.push_back(stats::pearson(x, y, xl, yl));
        } catch (const DegenerateSample&) {
            outcome.degenerate = true;
        }
    };
    try_pearson(lengths, totals, "length", "log_odds", outcome.raw);
    try_pearson(lengths, thresholds, "length", "threshold", outcome.raw);
    try_pearson(totals, thresholds, "log_odds", "threshold", outcome.raw);
    try_pearson(lengths, z_totals, "length", "zscore_log_odds", outcome.normalized);
    try_pearson(lengths, z_thresholds, "length", "zscore_threshold", outcome.normalized);
    try_pearson(z_totals, z_thresholds, "zscore_log_odds", "zscore_threshold", outcome.normalized);

    std::string correlations_csv = "variables,x,y,r,p,n,significance\n";
    for (const auto& r : outcome.raw) {
        correlations_csv += "original," + correlation_row(r);
    }
    for (const auto& r : outcome.normalized) {
        correlations_csv += "zscore_normalized," + correlation_row(r);
    }

    auto table_rows = [](const std::vector<stats::CorrelationRecord>& records) {
        std::vector<std::vector<std::string>> rows;
        for (const auto& r : records) {
            rows.push_back({r.x_label + " vs " + r.y_label, io::format_fixed(r.r, 4),
                            io::format_double(r.p), stats::significance_stars(r.p)});
        }
        return rows;
    };
    std::string text;
    text += render_table("Pearson correlations (original variables)",
                         {"variable pair", "r", "p", ""}, table_rows(outcome.raw));
    text += "\n";
    text += render_table("Pearson correlations (z-score normalized on length)",
                         {"variable pair", "r", "p", ""}, table_rows(outcome.normalized));

    auto scatter = [&](const std::vector<double>& x, const std::vector<double>& y,
                       const std::string& title, const std::string& xl, const std::string& yl) {
        svg::ScatterSeries series;
        series.label = "documents";
        series.color = svg::default_colors()[0];
        for (std::size_t i = 0; i < x.size(); ++i) {
            series.points.push_back({x[i], y[i]});
        }
        return svg::scatter_plot(title, xl, yl, {series});
    };

    StageWriter writer("analyze", cfg, out_dir);
    writer.add("correlations.csv", correlations_csv);
    writer.add("correlations.txt", text);
    writer.add("scatter_length_log_odds.svg",
               scatter(lengths, totals, "Length vs total log odds", "length", "total log odds"));
    writer.add("scatter_length_threshold.svg",
               scatter(lengths, thresholds, "Length vs threshold multiplier", "length",
                       "threshold multiplier"));
    writer.add("scatter_length_zscore_log_odds.svg",
               scatter(lengths, z_totals, "Length vs z-scored log odds", "length",
                       "z-scored log odds"));
    writer.add("scatter_length_zscore_threshold.svg",
               scatter(lengths, z_thresholds, "Length vs z-scored threshold", "length",
                       "z-scored threshold"));
    writer.set_input_digest(fnv1a_hex(io::read_file(segment_csv)));
    writer.set_count("documents", lengths.size());
    writer.finish();
    return outcome;
}

stats::CorrelationMatrix analyze_per_section(const RunConfig& cfg, const fs::path& sections_csv,
                                             const fs::path& out_dir) {
    const auto table = read_csv_columns(sections_csv);
    const std::size_t id_col = table.index_of("id");
    const std::size_t section_col = table.index_of("section");
    const std::size_t length_col = table.index_of("length");
    const std::size_t total_col = table.index_of("total");

    static const std::vector<std::string> kSections = {"abstract", "introduction", "conclusion",
                                                       "combined"};
    std::vector<std::pair<std::string, std::map<std::string, double>>> per_section;
    for (const auto& section : kSections) {
        std::vector<std::string> ids;
        std::vector<double> lengths, totals;
        for (const auto& row : table.rows) {
            if (row[section_col] != section) continue;
            ids.push_back(row[id_col]);
            lengths.push_back(to_double(row[length_col]));
            totals.push_back(to_double(row[total_col]));
        }
        if (ids.size() < 3) {
            throw AlignmentError("section '" + section + "' has only " +
                                 std::to_string(ids.size()) + " rows");
        }
        const auto z = stats::zscore_by_length_bins(
            lengths, totals, effective_bins(cfg.bins, ids.size()), cfg.binning_kind());
        std::map<std::string, double> scores;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            scores[ids[i]] = z[i];
        }
        per_section.emplace_back(section, std::move(scores));
    }

    const auto matrix = stats::section_correlation_matrix(per_section);

    std::string matrix_csv = "section";
    for (const auto& label : matrix.labels) {
        matrix_csv += "," + label;
    }
    matrix_csv += "\n";
    for (std::size_t i = 0; i < matrix.labels.size(); ++i) {
        matrix_csv += matrix.labels[i];
        for (std::size_t j = 0; j < matrix.labels.size(); ++j) {
            matrix_csv += "," + io::format_double(matrix.cells[i][j].r);
        }
        matrix_csv += "\n";
    }

    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < matrix.labels.size(); ++i) {
        std::vector<std::string> row{matrix.labels[i]};
        for (std::size_t j = 0; j < matrix.labels.size(); ++j) {
            row.push_back(io::format_fixed(matrix.cells[i][j].r, 3) +
                          stats::significance_stars(matrix.cells[i][j].p));
        }
        rows.push_back(std::move(row));
    }
    std::vector<std::string> header{"section"};
    header.insert(header.end(), matrix.labels.begin(), matrix.labels.end());
    const std::string text = render_table(
        "Pearson correlations between normalized log-odds scores per section", header, rows);

    StageWriter writer("analyze-per-section", cfg, out_dir);
    writer.add("section_matrix.csv", matrix_csv);
    writer.add("section_matrix.txt", text);
    writer.set_input_digest(fnv1a_hex(io::read_file(sections_csv)));
    writer.set_count("sections", matrix.labels.size());
    writer.finish();
    return matrix;
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

std::string report(const fs::path& in_dir) {
    std::string out;

    auto render_csv = [&](const std::string& file, const std::string& title) {
        const fs::path path = in_dir / file;
        if (!fs::exists(path)) return;
        auto rows = io::parse_csv(io::read_file(path));
        if (rows.size() < 1) return;
        std::vector<std::vector<std::string>> body(rows.begin() + 1, rows.end());
        out += render_table(title, rows.front(), body);
        out += "\n";
    };

    render_csv("rejections.csv", "Rejected documents");
    render_csv("summary.csv", "Summary statistics by group");
    render_csv("ttests.csv", "Pairwise comparisons");
    render_csv("confusion.csv", "Classifier decision counts");
    render_csv("correlations.csv", "Pearson correlations");
    render_csv("section_matrix.csv", "Section correlation matrix");

    if (out.empty()) {
        out = "no reportable CSV outputs found in " + in_dir.string() + "\n";
    }
    io::write_file(in_dir / "report.txt", out);
    return out;
}

}  // namespace styloseg::pipeline
