#include "styloseg/synthetic.hpp"

#include <random>

#include "styloseg/digest.hpp"
#include "styloseg/io.hpp"

namespace styloseg::synthetic {

namespace {

// Weighted human-flavored vocabulary. The early entries are deliberately the
// source side of the mock provider's substitution table so rewritten text
// diverges measurably from the original.
struct WeightedWord {
    const char* word;
    int weight;
};

const std::vector<WeightedWord>& vocabulary() {
    static const std::vector<WeightedWord> words = {
        // substitutable words kept sparse (~5% of tokens) so the per-token
        // evidence is a thin signal over mostly neutral text
        {"use", 3},      {"used", 2},     {"using", 2},    {"show", 3},     {"shows", 2},
        {"help", 2},     {"large", 2},    {"main", 2},     {"new", 3},      {"important", 2},
        {"method", 3},   {"methods", 2},  {"results", 3},  {"improve", 2},  {"study", 3},
        {"test", 2},     {"find", 2},     {"found", 2},    {"good", 2},     {"because", 3},
        {"recent", 2},   {"expect", 2},   {"shall", 1},    {"come", 1},     {"devise", 1},
        {"great", 1},    {"work", 3},     {"change", 2},   {"problem", 2},  {"way", 2},
        {"also", 2},     {"but", 2},      {"so", 2},       {"very", 2},     {"many", 2},
        {"some", 2},     {"paper", 2},
        // neutral filler shared by both corpora
        {"the", 60},     {"of", 40},      {"and", 34},     {"to", 34},      {"a", 30},
        {"in", 28},      {"we", 20},      {"that", 18},    {"this", 18},    {"for", 16},
        {"with", 14},    {"is", 14},      {"are", 12},     {"on", 12},      {"our", 10},
        {"it", 10},      {"as", 10},      {"be", 10},      {"by", 10},      {"from", 10},
        {"have", 8},     {"can", 8},      {"not", 8},      {"has", 6},      {"at", 6},
        {"or", 6},       {"an", 6},       {"was", 6},      {"were", 6},     {"which", 6},
        {"model", 10},   {"data", 10},    {"analysis", 8}, {"system", 8},   {"time", 8},
        {"experiment", 5}, {"experiments", 5}, {"section", 5}, {"figure", 4}, {"table", 4},
        {"value", 5},    {"values", 5},   {"case", 5},     {"cases", 3},    {"number", 6},
        {"function", 6}, {"error", 5},    {"errors", 3},   {"linear", 4},   {"random", 4},
        {"sample", 5},   {"samples", 3},  {"measure", 4},  {"observed", 5}, {"baseline", 4},
        {"signal", 4},   {"each", 6},     {"under", 4},    {"over", 4},     {"between", 5},
        {"these", 6},    {"those", 4},    {"first", 5},    {"second", 4},   {"then", 5},
        {"when", 5},     {"where", 4},    {"more", 6},     {"less", 4},     {"small", 5},
        {"one", 5},      {"two", 5},      {"three", 4},    {"evaluate", 4}, {"compare", 4},
        {"compared", 4}, {"setting", 3},  {"settings", 3}, {"training", 5}, {"rate", 3},
        {"rates", 3},    {"present", 4},  {"report", 4},   {"term", 3},     {"terms", 3},
        {"point", 4},    {"points", 3},   {"input", 4},    {"output", 4},   {"state", 4},
    };
    return words;
}

class WordSampler {
public:
    explicit WordSampler(std::mt19937_64& rng) : rng_(rng) {
        for (const auto& w : vocabulary()) {
            total_ += w.weight;
        }
    }

    const char* draw() {
        int target = static_cast<int>(rng_() % static_cast<std::uint64_t>(total_));
        for (const auto& w : vocabulary()) {
            target -= w.weight;
            if (target < 0) {
                return w.word;
            }
        }
        return vocabulary().back().word;
    }

private:
    std::mt19937_64& rng_;
    int total_ = 0;
};

std::string sentence(WordSampler& sampler, std::mt19937_64& rng) {
    const std::size_t words = 8 + rng() % 9;
    std::string out;
    for (std::size_t i = 0; i < words; ++i) {
        std::string w = sampler.draw();
        if (i == 0) {
            w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
        }
        if (i > 0) out += ' ';
        out += w;
    }
    out += '.';
    return out;
}

std::string paragraph(WordSampler& sampler, std::mt19937_64& rng, std::size_t min_chars) {
    std::string out;
    std::size_t sentences = 3 + rng() % 4;
    for (std::size_t i = 0; i < sentences || out.size() < min_chars; ++i) {
        if (i > 0) out += ' ';
        out += sentence(sampler, rng);
    }
    return out;
}

std::string section_body(WordSampler& sampler, std::mt19937_64& rng, std::size_t paragraphs,
                         std::size_t min_chars) {
    std::string out;
    for (std::size_t p = 0; p < paragraphs; ++p) {
        if (p > 0) out += "\n\n";
        out += paragraph(sampler, rng, min_chars / paragraphs + 1);
    }
    while (out.size() < min_chars) {
        out += ' ';
        out += sentence(sampler, rng);
    }
    return out;
}

struct HeaderSet {
    const char* abstract;
    const char* introduction;
    const char* conclusion;
};

const std::vector<HeaderSet>& header_styles() {
    static const std::vector<HeaderSet> styles = {
        {"Abstract", "1 Introduction", "5 Conclusion"},
        {"Abstract", "Introduction", "Conclusions"},
        {"ABSTRACT", "1. Introduction", "6 Discussion"},
        {"Abstract", "I. INTRODUCTION", "V. CONCLUSION"},
        {"Abstract", "1 Introduction", "7 Concluding Remarks"},
    };
    return styles;
}

}  // namespace

corpus::RawDocument generate_document(const std::string& id, std::uint64_t seed, Defect defect,
                                      const GeneratorOptions& options) {
    std::mt19937_64 rng(mix_seed(seed, fnv1a(id)));
    WordSampler sampler(rng);
    const HeaderSet& style = header_styles()[rng() % header_styles().size()];

    const std::size_t floor = options.min_section_chars;
    // keep the length band fairly tight so population statistics are not
    // dominated by cubic length effects in the changepoint search
    const std::size_t abstract_chars = floor + 120 + rng() % 160;
    const std::size_t intro_paragraphs =
        options.intro_paragraphs_min +
        rng() % (options.intro_paragraphs_max - options.intro_paragraphs_min + 1);
    const std::size_t conclusion_paragraphs =
        options.conclusion_paragraphs_min +
        rng() % (options.conclusion_paragraphs_max - options.conclusion_paragraphs_min + 1);
    const std::size_t intro_chars = floor + 400 + rng() % 300;
    const std::size_t conclusion_chars = floor + 150 + rng() % 200;

    std::string abstract = section_body(sampler, rng, 1, abstract_chars);
    std::string intro = section_body(sampler, rng, intro_paragraphs, intro_chars);
    std::string conclusion = section_body(sampler, rng, conclusion_paragraphs, conclusion_chars);

    if (defect == Defect::short_abstract) {
        abstract = abstract.substr(0, 300);
    }

    std::string body;
    auto add = [&](const std::string& header, const std::string& text) {
        body += header;
        body += '\n';
        body += text;
        body += "\n\n";
    };

    switch (defect) {
    case Defect::headers_out_of_order:
        add(style.introduction, intro);
        add(style.abstract, abstract);
        add(style.conclusion, conclusion);
        break;
    case Defect::missing_conclusion:
        add(style.abstract, abstract);
        add(style.introduction, intro);
        body += paragraph(sampler, rng, 400);
        body += '\n';
        break;
    case Defect::missing_introduction:
        add(style.abstract, abstract);
        add(style.conclusion, conclusion);
        break;
    default:
        add(style.abstract, abstract);
        if (rng() % 3 == 0) {
            body += "Keywords: analysis, modeling, evaluation\n";
        }
        add(style.introduction, intro);
        if (rng() % 4 == 0) {
            body += "2 Setup\n";
            body += paragraph(sampler, rng, 350);
            body += "\n\n";
        }
        add(style.conclusion, conclusion);
        body += "References\n[1] An earlier technical report. https://example.org/report\n";
        break;
    }

    return {id, body};
}

std::vector<std::string> write_fixture_corpus(const std::filesystem::path& dir,
                                              std::size_t n_good, std::size_t n_defective,
                                              std::uint64_t seed) {
    std::filesystem::create_directories(dir);
    std::vector<std::string> ids;
    char buf[32];
    for (std::size_t i = 0; i < n_good; ++i) {
        std::snprintf(buf, sizeof(buf), "doc%03zu", i);
        const std::string id = buf;
        const auto doc = generate_document(id, seed);
        io::write_file(dir / (id + ".txt"), doc.body);
        ids.push_back(id);
    }
    static const std::vector<Defect> defects = {
        Defect::missing_conclusion,
        Defect::short_abstract,
        Defect::headers_out_of_order,
        Defect::missing_introduction,
    };
    for (std::size_t i = 0; i < n_defective; ++i) {
        std::snprintf(buf, sizeof(buf), "bad%03zu", i);
        const std::string id = buf;
        const auto doc = generate_document(id, seed, defects[i % defects.size()]);
        io::write_file(dir / (id + ".txt"), doc.body);
        ids.push_back(id);
    }
    return ids;
}

}  // namespace styloseg::synthetic
