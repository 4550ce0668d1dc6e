#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "styloseg/corpus.hpp"

namespace styloseg::classifier {

/// Per-word mean frequency rates across a corpus. Rates are per-document
/// fractions (each document's rates sum to 1) averaged over documents, with
/// a word absent from a document contributing 0 for that document.
struct FrequencyProfile {
    std::map<std::string, double> rates;
    std::size_t doc_count = 0;

    /// Provenance hash over the rate table.
    std::string digest() const;
};

constexpr double kDefaultSmoothing = 1e-4;

/// Word -> log((llm_rate + eps) / (human_rate + eps)), stored for the union
/// of the two vocabularies. Positive values are evidence of LLM authorship.
struct LogOddsModel {
    std::map<std::string, double> log_odds;
    double smoothing = kDefaultSmoothing;
    std::string human_profile_digest;
    std::string llm_profile_digest;

    /// 0 for out-of-vocabulary words (the smoothed ratio of two unseen words).
    double lookup(const std::string& word) const {
        auto it = log_odds.find(word);
        return it == log_odds.end() ? 0.0 : it->second;
    }

    std::string digest() const;
};

struct ScoredDocument {
    std::string id;
    std::vector<double> word_odds;  // per-token log odds, source order
    std::vector<double> cumsum;     // running sum of word_odds
    double total = 0.0;             // cumsum.back()
    std::size_t length = 0;         // token count
};

/// rate(w) = count(w) / token count. Throws EmptyTokenStream.
std::map<std::string, double> frequency_rates(const corpus::TokenStream& tokens);

/// Mean of per-document frequency rates; absent words count as 0 in the
/// documents that lack them. Throws EmptyCorpus.
FrequencyProfile build_profile(const std::vector<corpus::TokenStream>& docs);

struct TrainOptions {
    double smoothing = kDefaultSmoothing;
    /// Drop words seen in fewer than this many documents across the two
    /// corpora combined. 0 disables the filter.
    std::size_t min_doc_frequency = 0;
};

/// log odds = log(llm + eps) - log(human + eps), computed as a difference so
/// that swapping the profiles negates every value exactly.
LogOddsModel train(const FrequencyProfile& human, const FrequencyProfile& llm,
                   const TrainOptions& options = {});

/// Variant of train() that can apply the min-document-frequency filter; the
/// per-word document counts must cover both corpora.
LogOddsModel train_filtered(const FrequencyProfile& human, const FrequencyProfile& llm,
                            const std::map<std::string, std::size_t>& doc_frequency,
                            const TrainOptions& options);

ScoredDocument score(const LogOddsModel& model, const corpus::TokenStream& tokens,
                     const std::string& id);

struct TopWords {
    std::vector<std::pair<std::string, double>> llm;    // log odds > threshold, descending
    std::vector<std::pair<std::string, double>> human;  // log odds < -threshold, ascending
};

TopWords export_top_words(const LogOddsModel& model, double threshold);

/// Line-oriented UTF-8: one header line (format tag, smoothing constant and
/// profile digests), then "word<TAB>log_odds" rows sorted by word. Values
/// round-trip bit-identically.
void serialize_model(const LogOddsModel& model, const std::filesystem::path& path);
std::string serialize_model_to_string(const LogOddsModel& model);

LogOddsModel load_model(const std::filesystem::path& path);
LogOddsModel load_model_from_string(const std::string& content);

}  // namespace styloseg::classifier
