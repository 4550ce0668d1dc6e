#include "styloseg/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "styloseg/digest.hpp"
#include "styloseg/io.hpp"

namespace styloseg::classifier {

namespace {

constexpr char kModelTag[] = "styloseg-model";
constexpr char kModelVersion[] = "1";

std::string profile_digest(const std::map<std::string, double>& rates, std::size_t doc_count) {
    Fnv1a h;
    h.update_u64(doc_count);
    for (const auto& [word, rate] : rates) {
        h.update(word);
        h.update("=");
        h.update(io::format_double(rate));
        h.update("\n");
    }
    return h.hex();
}

}  // namespace

std::string FrequencyProfile::digest() const { return profile_digest(rates, doc_count); }

std::string LogOddsModel::digest() const {
    return fnv1a_hex(serialize_model_to_string(*this));
}

std::map<std::string, double> frequency_rates(const corpus::TokenStream& tokens) {
    if (tokens.tokens.empty()) {
        throw EmptyTokenStream();
    }
    std::map<std::string, std::size_t> counts;
    for (const auto& t : tokens.tokens) {
        ++counts[t];
    }
    const double n = static_cast<double>(tokens.tokens.size());
    std::map<std::string, double> rates;
    for (const auto& [word, count] : counts) {
        rates[word] = static_cast<double>(count) / n;
    }
    return rates;
}

FrequencyProfile build_profile(const std::vector<corpus::TokenStream>& docs) {
    if (docs.empty()) {
        throw EmptyCorpus();
    }
    FrequencyProfile profile;
    profile.doc_count = docs.size();
    std::map<std::string, double> sums;
    for (const auto& doc : docs) {
        for (const auto& [word, rate] : frequency_rates(doc)) {
            sums[word] += rate;
        }
    }
    const double n = static_cast<double>(docs.size());
    for (const auto& [word, sum] : sums) {
        profile.rates[word] = sum / n;
    }
    return profile;
}

LogOddsModel train(const FrequencyProfile& human, const FrequencyProfile& llm,
                   const TrainOptions& options) {
    return train_filtered(human, llm, {}, options);
}

LogOddsModel train_filtered(const FrequencyProfile& human, const FrequencyProfile& llm,
                            const std::map<std::string, std::size_t>& doc_frequency,
                            const TrainOptions& options) {
    LogOddsModel model;
    model.smoothing = options.smoothing;
    model.human_profile_digest = human.digest();
    model.llm_profile_digest = llm.digest();

    auto rate_of = [](const FrequencyProfile& p, const std::string& word) {
        auto it = p.rates.find(word);
        return it == p.rates.end() ? 0.0 : it->second;
    };
    auto passes_filter = [&](const std::string& word) {
        if (options.min_doc_frequency == 0 || doc_frequency.empty()) {
            return true;
        }
        auto it = doc_frequency.find(word);
        return it != doc_frequency.end() && it->second >= options.min_doc_frequency;
    };

    // union of the two vocabularies; words absent from both are implied 0
    for (const auto* profile : {&human, &llm}) {
        for (const auto& [word, rate] : profile->rates) {
            (void)rate;
            if (model.log_odds.count(word) || !passes_filter(word)) {
                continue;
            }
            const double h = rate_of(human, word);
            const double l = rate_of(llm, word);
            // difference of logs keeps profile-swap antisymmetry exact
            model.log_odds[word] =
                std::log(l + options.smoothing) - std::log(h + options.smoothing);
        }
    }
    return model;
}

ScoredDocument score(const LogOddsModel& model, const corpus::TokenStream& tokens,
                     const std::string& id) {
    if (tokens.tokens.empty()) {
        throw EmptyTokenStream();
    }
    ScoredDocument doc;
    doc.id = id;
    doc.length = tokens.tokens.size();
    doc.word_odds.reserve(doc.length);
    doc.cumsum.reserve(doc.length);
    double running = 0.0;
    for (const auto& token : tokens.tokens) {
        const double odds = model.lookup(token);
        doc.word_odds.push_back(odds);
        running += odds;
        doc.cumsum.push_back(running);
    }
    doc.total = running;
    return doc;
}

TopWords export_top_words(const LogOddsModel& model, double threshold) {
    TopWords out;
    for (const auto& [word, odds] : model.log_odds) {
        if (odds > threshold) {
            out.llm.emplace_back(word, odds);
        } else if (odds < -threshold) {
            out.human.emplace_back(word, odds);
        }
    }
    std::stable_sort(out.llm.begin(), out.llm.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    std::stable_sort(out.human.begin(), out.human.end(),
                     [](const auto& a, const auto& b) { return a.second < b.second; });
    return out;
}

std::string serialize_model_to_string(const LogOddsModel& model) {
    std::string out;
    out += kModelTag;
    out += '\t';
    out += kModelVersion;
    out += '\t';
    out += io::format_double(model.smoothing);
    out += '\t';
    out += model.human_profile_digest;
    out += '\t';
    out += model.llm_profile_digest;
    out += '\n';
    for (const auto& [word, odds] : model.log_odds) {
        out += word;
        out += '\t';
        out += io::format_double(odds);
        out += '\n';
    }
    return out;
}

void serialize_model(const LogOddsModel& model, const std::filesystem::path& path) {
    io::write_file(path, serialize_model_to_string(model));
}

LogOddsModel load_model_from_string(const std::string& content) {
    LogOddsModel model;
    std::size_t pos = 0;

    auto next_line = [&](std::string& line) {
        if (pos >= content.size()) {
            return false;
        }
        std::size_t nl = content.find('\n', pos);
        if (nl == std::string::npos) {
            throw MalformedModelFile("missing trailing newline", content.size());
        }
        line = content.substr(pos, nl - pos);
        pos = nl + 1;
        return true;
    };

    std::string header;
    if (!next_line(header)) {
        throw MalformedModelFile("empty file", 0);
    }
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t tab = header.find('\t', start);
        fields.push_back(header.substr(start, tab == std::string::npos ? tab : tab - start));
        if (tab == std::string::npos) break;
        start = tab + 1;
    }
    if (fields.size() != 5 || fields[0] != kModelTag) {
        throw MalformedModelFile("bad header", 0);
    }
    if (fields[1] != kModelVersion) {
        throw MalformedModelFile("unsupported version " + fields[1], 0);
    }
    char* end = nullptr;
    model.smoothing = std::strtod(fields[2].c_str(), &end);
    if (end == fields[2].c_str() || *end != '\0') {
        throw MalformedModelFile("bad smoothing constant", 0);
    }
    model.human_profile_digest = fields[3];
    model.llm_profile_digest = fields[4];

    std::string line;
    std::string prev_word;
    while (true) {
        const std::size_t line_offset = pos;
        if (!next_line(line)) break;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0) {
            throw MalformedModelFile("expected word<TAB>log_odds", line_offset);
        }
        std::string word = line.substr(0, tab);
        const std::string value = line.substr(tab + 1);
        end = nullptr;
        const double odds = std::strtod(value.c_str(), &end);
        if (end == value.c_str() || *end != '\0') {
            throw MalformedModelFile("bad log-odds value", line_offset + tab + 1);
        }
        if (!prev_word.empty() && !(prev_word < word)) {
            throw MalformedModelFile("words not sorted", line_offset);
        }
        prev_word = word;
        model.log_odds.emplace(std::move(word), odds);
    }
    return model;
}

LogOddsModel load_model(const std::filesystem::path& path) {
    return load_model_from_string(io::read_file(path));
}

}  // namespace styloseg::classifier
