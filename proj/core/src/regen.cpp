#include "styloseg/regen.hpp"

#include <algorithm>
#include <cctype>
#include <random>

#include "styloseg/digest.hpp"

namespace styloseg::regen {

namespace {

std::string lower_ascii(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::vector<std::string> split_paragraphs(const std::string& text) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t sep = text.find("\n\n", pos);
        if (sep == std::string::npos) {
            out.push_back(text.substr(pos));
            break;
        }
        out.push_back(text.substr(pos, sep - pos));
        pos = sep;
        while (pos < text.size() && text[pos] == '\n') ++pos;
    }
    return out;
}

std::vector<std::string> split_sentences(const std::string& paragraph) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i < paragraph.size(); ++i) {
        if (paragraph[i] == '.' &&
            (i + 1 == paragraph.size() || paragraph[i + 1] == ' ' || paragraph[i + 1] == '\n')) {
            out.push_back(paragraph.substr(start, i - start + 1));
            start = i + 1;
            while (start < paragraph.size() && paragraph[start] == ' ') ++start;
            i = start;
            if (i > 0) --i;
        }
    }
    if (start < paragraph.size()) {
        out.push_back(paragraph.substr(start));
    }
    return out;
}

const std::vector<std::string>& connectors() {
    static const std::vector<std::string> words = {"Moreover", "Furthermore", "Notably",
                                                   "Consequently", "Additionally"};
    return words;
}

}  // namespace

const std::map<std::string, std::string>& MockProvider::default_synonyms() {
    static const std::map<std::string, std::string> table = {
        {"use", "utilize"},       {"uses", "utilizes"},     {"used", "utilized"},
        {"using", "utilizing"},   {"show", "demonstrate"},  {"shows", "demonstrates"},
        {"showed", "demonstrated"}, {"shown", "demonstrated"}, {"help", "facilitate"},
        {"helps", "facilitates"}, {"big", "substantial"},   {"large", "significant"},
        {"main", "pivotal"},      {"new", "novel"},         {"important", "crucial"},
        {"method", "methodology"}, {"methods", "methodologies"}, {"result", "outcome"},
        {"results", "outcomes"},  {"improve", "enhance"},   {"improves", "enhances"},
        {"improved", "enhanced"}, {"study", "investigation"}, {"field", "realm"},
        {"area", "domain"},       {"explore", "delve"},     {"start", "commence"},
        {"end", "conclude"},      {"build", "construct"},   {"make", "generate"},
        {"check", "verify"},      {"test", "validate"},     {"find", "ascertain"},
        {"found", "ascertained"}, {"useful", "beneficial"}, {"good", "effective"},
        {"fast", "efficient"},    {"speed", "efficiency"},  {"whole", "holistic"},
        {"full", "comprehensive"}, {"deep", "profound"},    {"because", "given"},
        {"recent", "contemporary"}, {"expect", "anticipate"}, {"expected", "anticipated"},
        {"shall", "will"},        {"thank", "acknowledge"}, {"come", "emerge"},
        {"devise", "formulate"},  {"great", "remarkable"},  {"work", "endeavor"},
        {"change", "modification"}, {"changes", "modifications"}, {"careful", "meticulous"},
        {"hard", "challenging"},  {"problem", "challenge"}, {"idea", "concept"},
        {"way", "approach"},      {"ways", "approaches"},   {"also", "additionally"},
        {"but", "however"},       {"so", "therefore"},      {"very", "remarkably"},
        {"many", "numerous"},     {"some", "several"},      {"clear", "transparent"},
        {"paper", "manuscript"},
    };
    return table;
}

// Kept to words the substitution table and connectors also emit, so a model
// trained on mock-regenerated text recognizes every one of them.
const std::vector<std::string>& MockProvider::default_flavor_words() {
    static const std::vector<std::string> words = {
        "utilize",      "demonstrate", "methodology", "significant", "novel",
        "crucial",      "enhance",     "investigation", "outcomes",  "validate",
        "facilitate",   "pivotal",     "endeavor",    "moreover",    "furthermore",
        "notably",      "consequently", "additionally", "therefore", "however",
        "remarkable",   "numerous",    "several",     "effective",   "challenge",
        "modification", "formulate",   "ascertain",   "emerge",      "anticipate",
    };
    return words;
}

MockProvider::MockProvider(std::uint64_t seed)
    : MockProvider(seed, default_synonyms(), default_flavor_words()) {}

MockProvider::MockProvider(std::uint64_t seed, std::map<std::string, std::string> synonyms,
                           std::vector<std::string> flavor_words)
    : seed_(seed), synonyms_(std::move(synonyms)), flavor_words_(std::move(flavor_words)) {}

std::string MockProvider::digest() const {
    Fnv1a h;
    h.update("mock-provider/1");
    h.update_u64(seed_);
    for (const auto& [from, to] : synonyms_) {
        h.update(from);
        h.update(">");
        h.update(to);
        h.update(";");
    }
    for (const auto& w : flavor_words_) {
        h.update(w);
        h.update(";");
    }
    return h.hex();
}

std::string MockProvider::rewrite(const std::string& text) {
    std::mt19937_64 rng(mix_seed(seed_, fnv1a(text)));
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    auto substitute = [&](const std::string& sentence) {
        std::string out;
        out.reserve(sentence.size());
        std::string word;
        auto flush = [&]() {
            if (word.empty()) return;
            auto it = synonyms_.find(lower_ascii(word));
            if (it != synonyms_.end() && coin(rng) < 0.85) {
                std::string repl = it->second;
                if (std::isupper(static_cast<unsigned char>(word[0])) && !repl.empty()) {
                    repl[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(repl[0])));
                }
                out += repl;
            } else {
                out += word;
            }
            word.clear();
        };
        for (char c : sentence) {
            if (std::isalpha(static_cast<unsigned char>(c))) {
                word += c;
            } else {
                flush();
                out += c;
            }
        }
        flush();
        return out;
    };

    std::vector<std::string> paragraphs = split_paragraphs(text);
    std::string result;
    for (std::size_t p = 0; p < paragraphs.size(); ++p) {
        std::vector<std::string> sentences = split_sentences(paragraphs[p]);
        for (auto& sentence : sentences) {
            sentence = substitute(sentence);
            if (coin(rng) < 0.22 && !sentence.empty() &&
                std::isupper(static_cast<unsigned char>(sentence[0]))) {
                const auto& connector = connectors()[rng() % connectors().size()];
                std::string rest = sentence;
                rest[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(rest[0])));
                sentence = connector + ", " + rest;
            }
        }
        // light reordering; the opening sentence stays put
        for (std::size_t i = 2; i < sentences.size(); ++i) {
            if (coin(rng) < 0.25) {
                std::swap(sentences[i - 1], sentences[i]);
            }
        }
        if (p > 0) result += "\n\n";
        for (std::size_t i = 0; i < sentences.size(); ++i) {
            if (i > 0) result += ' ';
            result += sentences[i];
        }
    }

    if (result == text) {
        result += " Moreover, these findings underscore the efficacy of the methodology.";
    }
    archive("mock-rewrite:" + std::to_string(text.size()) + " chars",
            "mock-rewrite:" + std::to_string(result.size()) + " chars");
    return result;
}

std::string MockProvider::generate_paragraph(const std::string& context,
                                             std::size_t target_chars) {
    std::mt19937_64 rng(mix_seed(seed_ ^ 0x70617261ULL, fnv1a(context) + target_chars));
    std::uniform_int_distribution<std::size_t> word_count(8, 15);
    std::uniform_int_distribution<std::size_t> pick(0, flavor_words_.size() - 1);
    static const std::vector<std::string> glue = {"the", "of", "and", "to", "a",
                                                  "that", "this", "can", "we", "in"};

    std::string out;
    const double target = static_cast<double>(target_chars);
    while (out.size() < static_cast<std::size_t>(0.95 * target)) {
        std::string sentence;
        const std::size_t words = word_count(rng);
        for (std::size_t i = 0; i < words; ++i) {
            std::string w = (i % 3 == 2) ? glue[rng() % glue.size()] : flavor_words_[pick(rng)];
            if (i == 0) {
                w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
            }
            if (i > 0) sentence += ' ';
            sentence += w;
        }
        sentence += '.';
        if (!out.empty() &&
            out.size() + sentence.size() + 1 > static_cast<std::size_t>(1.25 * target) &&
            out.size() >= static_cast<std::size_t>(0.75 * target)) {
            break;
        }
        if (!out.empty()) out += ' ';
        out += sentence;
    }
    archive("mock-paragraph:" + std::to_string(target_chars) + " chars",
            "mock-paragraph:" + std::to_string(out.size()) + " chars");
    return out;
}

std::unique_ptr<TextProvider> make_provider(const ProviderConfig& cfg) {
    if (cfg.kind == "mock") {
        return std::make_unique<MockProvider>(cfg.seed);
    }
    if (cfg.kind == "http") {
        return make_http_provider(cfg);
    }
    throw ConfigError("unknown provider kind: " + cfg.kind);
}

std::string regenerate(TextProvider& provider, const std::string& text) {
    if (text.empty()) {
        throw Error("regenerate: input text is empty");
    }
    std::string out = provider.rewrite(text);
    if (out.empty()) {
        throw EmptyCompletion();
    }
    if (out == text) {
        throw ProviderError("provider returned the input unchanged");
    }
    return out;
}

InjectionResult inject_paragraph(TextProvider& provider, const std::string& text,
                                 double target_fraction, std::uint64_t seed) {
    if (text.empty()) {
        throw Error("inject_paragraph: input text is empty");
    }
    if (!(target_fraction > 0.0 && target_fraction < 1.0)) {
        throw Error("inject_paragraph: target_fraction must be in (0, 1)");
    }

    // candidate insertion points: just after each blank-line separator
    std::vector<std::size_t> boundaries;
    for (std::size_t i = 0; i + 1 < text.size(); ++i) {
        if (text[i] == '\n' && text[i + 1] == '\n') {
            std::size_t j = i;
            while (j < text.size() && text[j] == '\n') ++j;
            if (j < text.size()) {
                boundaries.push_back(j);
            }
            i = j;
        }
    }
    if (boundaries.size() < 2) {
        throw NoParagraphBoundary();
    }

    std::mt19937_64 rng(seed);
    const std::size_t pos = boundaries[rng() % boundaries.size()];
    const auto target = static_cast<std::size_t>(target_fraction * static_cast<double>(text.size()));
    const std::string paragraph = provider.generate_paragraph(text, target);
    if (paragraph.empty()) {
        throw EmptyCompletion();
    }
    const std::string inserted = paragraph + "\n\n";

    InjectionResult result;
    result.segmented = text.substr(0, pos) + inserted + text.substr(pos);
    result.span_offset = pos;
    result.span_length = inserted.size();
    return result;
}

ValidationSets build_validation_sets(const std::vector<std::pair<std::string, std::string>>& docs,
                                     TextProvider& provider, const ProviderConfig& cfg,
                                     double target_fraction, std::uint64_t seed) {
    ValidationSets sets;
    sets.provider_digest = provider.digest();
    sets.prompt_digest = fnv1a_hex(cfg.rewrite_prompt + "\n" + cfg.paragraph_prompt);
    for (const auto& [id, text] : docs) {
        try {
            ValidationTriple triple;
            triple.id = id;
            triple.original = text;
            triple.regenerated = regenerate(provider, text);
            InjectionResult injection =
                inject_paragraph(provider, text, target_fraction, mix_seed(seed, fnv1a(id)));
            triple.segmented = std::move(injection.segmented);
            triple.span_offset = injection.span_offset;
            triple.span_length = injection.span_length;
            sets.triples.push_back(std::move(triple));
        } catch (const Error& e) {
            sets.skips.push_back({id, e.what()});
        }
    }
    return sets;
}

}  // namespace styloseg::regen
