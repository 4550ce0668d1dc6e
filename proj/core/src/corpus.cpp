#include "styloseg/corpus.hpp"

#include <algorithm>
#include <cctype>

namespace styloseg {

const char* section_name(SectionKind kind) {
    switch (kind) {
    case SectionKind::abstract: return "abstract";
    case SectionKind::introduction: return "introduction";
    case SectionKind::conclusion: return "conclusion";
    }
    return "?";
}

}  // namespace styloseg

namespace styloseg::corpus {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string lower_ascii(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

SectionKind kind_from_word(const std::string& word) {
    const std::string w = lower_ascii(word);
    if (w.rfind("abstract", 0) == 0) return SectionKind::abstract;
    if (w.rfind("introduction", 0) == 0) return SectionKind::introduction;
    return SectionKind::conclusion;  // conclusion(s), discussion, concluding remarks
}

struct CompiledRule {
    std::regex re;
    std::optional<SectionKind> section;
};

// Lines that end a section without starting one of the three tracked ones:
// generic numbered headings, references, acknowledgments, appendices.
const std::vector<std::string>& terminator_patterns() {
    static const std::vector<std::string> patterns = {
        R"(\d+(\.\d+)*\.?\s+[A-Z][A-Za-z \-:]{0,80})",
        R"([IVXLCDM]+\.?\s+[A-Z][A-Za-z \-:]{0,80})",
        R"((References|REFERENCES|Bibliography|BIBLIOGRAPHY)\s*:?)",
        R"((\d+\.?\s+)?(Acknowledge?ments?|ACKNOWLEDGE?MENTS?)\s*:?)",
        R"((Appendix|APPENDIX)(\s+[A-Z0-9])?.{0,60})",
        R"(\\(section|subsection)\*?\{[^}]*\})",
    };
    return patterns;
}

struct LineSpan {
    std::size_t begin;  // offset of first char of the line
    std::size_t end;    // offset one past the last char (excluding newline)
    std::string text;   // trimmed copy
};

std::vector<LineSpan> split_lines(const std::string& body) {
    std::vector<LineSpan> lines;
    std::size_t pos = 0;
    while (pos <= body.size()) {
        std::size_t nl = body.find('\n', pos);
        std::size_t end = (nl == std::string::npos) ? body.size() : nl;
        lines.push_back({pos, end, trim(body.substr(pos, end - pos))});
        if (nl == std::string::npos) break;
        pos = nl + 1;
    }
    return lines;
}

}  // namespace

const std::vector<HeaderRule>& default_header_rules() {
    static const std::vector<HeaderRule> rules = {
        {"abstract-exact", R"(Abstract\s*[:.]?)", SectionKind::abstract},
        {"introduction-numbered", R"(\d+\.?\s+Introduction\s*[:.]?)", SectionKind::introduction},
        {"introduction-plain", R"(Introduction\s*[:.]?)", SectionKind::introduction},
        {"roman-numbered",
         R"([IVXLCDM]+\.?\s+(Abstract|Introduction|Conclusions?|Discussion|Concluding Remarks)\s*[:.]?)",
         std::nullopt},
        {"all-caps",
         R"((?:\d+\.?\s+|[IVXLCDM]+\.?\s+)?(ABSTRACT|INTRODUCTION|CONCLUSIONS?|DISCUSSION|CONCLUDING REMARKS)\s*[:.]?)",
         std::nullopt},
        {"conclusion", R"((?:\d+\.?\s+)?Conclusions?\s*[:.]?)", SectionKind::conclusion},
        {"discussion",
         R"((?:\d+\.?\s+)?Discussion(?:\s+and\s+Conclusions?)?\s*[:.]?)",
         SectionKind::conclusion},
        {"concluding-remarks", R"((?:\d+\.?\s+)?Concluding Remarks\s*[:.]?)", SectionKind::conclusion},
        {"latex-section",
         R"(\\section\*?\{(Abstract|Introduction|Conclusions?|Discussion|Concluding Remarks)\})",
         std::nullopt},
    };
    return rules;
}

const CleaningRules& default_cleaning_rules() {
    static const CleaningRules rules = {
        // line_patterns
        {
            R"(\s*(Keywords?|KEYWORDS?|Key\s?words|Index Terms|INDEX TERMS)\s*[:\-–—].*)",
            R"(\s*(arXiv:\S+|doi:\s*\S+|DOI:\s*\S+|https?://\S+)\s*)",
            R"(\s*(ISSN|ISBN|ACM Reference Format|Report\s+(No|Number)\.?\s*\S+).*)",
            R"(\s*(Journal|Proceedings|Proc\.)[^,]{0,60},\s*(Vol\.?|Volume|No\.?|Number)\s*\d+.*)",
        },
        // inline_patterns
        {
            R"(https?://[^\s]+)",
            R"(www\.[^\s]+)",
            R"(\bdoi:\s*[^\s]+)",
            R"(\barXiv:\d{4}\.\d{4,5}(v\d+)?)",
        },
    };
    return rules;
}

std::string clean_section(const std::string& text, const CleaningRules& rules) {
    std::vector<std::regex> line_res;
    line_res.reserve(rules.line_patterns.size());
    for (const auto& p : rules.line_patterns) {
        line_res.emplace_back(p);
    }
    std::vector<std::regex> inline_res;
    inline_res.reserve(rules.inline_patterns.size());
    for (const auto& p : rules.inline_patterns) {
        inline_res.emplace_back(p);
    }

    std::vector<std::string> kept;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::size_t end = (nl == std::string::npos) ? text.size() : nl;
        std::string line = text.substr(pos, end - pos);

        bool drop = false;
        for (const auto& re : line_res) {
            if (std::regex_match(line, re)) {
                drop = true;
                break;
            }
        }
        if (!drop) {
            for (const auto& re : inline_res) {
                line = std::regex_replace(line, re, "");
            }
            // collapse runs of spaces/tabs, strip edges
            std::string norm;
            norm.reserve(line.size());
            bool in_space = true;  // swallows leading whitespace
            for (char c : line) {
                if (c == ' ' || c == '\t') {
                    if (!in_space) norm += ' ';
                    in_space = true;
                } else {
                    norm += c;
                    in_space = false;
                }
            }
            while (!norm.empty() && norm.back() == ' ') norm.pop_back();
            kept.push_back(std::move(norm));
        }
        if (nl == std::string::npos) break;
        pos = nl + 1;
    }

    // drop leading/trailing blank lines, collapse 2+ blank lines to one
    std::string out;
    std::size_t blanks = 0;
    bool any_content = false;
    for (const auto& line : kept) {
        if (line.empty()) {
            ++blanks;
            continue;
        }
        if (any_content) {
            out += blanks > 0 ? "\n\n" : "\n";
        }
        blanks = 0;
        any_content = true;
        out += line;
    }
    return out;
}

SectionedDocument detect_sections(const RawDocument& doc, const SectioningOptions& options) {
    std::vector<CompiledRule> compiled;
    compiled.reserve(options.rules.size());
    for (const auto& rule : options.rules) {
        compiled.push_back({std::regex(rule.pattern), rule.section});
    }
    std::vector<std::regex> terminators;
    for (const auto& p : terminator_patterns()) {
        terminators.emplace_back(p);
    }

    const auto lines = split_lines(doc.body);

    // classify: for each line, the first matching rule wins
    struct Mark {
        std::size_t line_index;
        SectionKind kind;
    };
    std::vector<std::size_t> boundary_lines;
    std::optional<std::size_t> first_abstract, first_intro, first_conclusion;
    std::vector<Mark> marks;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string& text = lines[i].text;
        if (text.empty()) continue;
        std::optional<SectionKind> kind;
        for (const auto& rule : compiled) {
            std::smatch m;
            if (std::regex_match(text, m, rule.re)) {
                kind = rule.section ? *rule.section : kind_from_word(m[1].str());
                break;
            }
        }
        if (kind) {
            marks.push_back({i, *kind});
            boundary_lines.push_back(i);
            if (*kind == SectionKind::abstract && !first_abstract) first_abstract = i;
            if (*kind == SectionKind::introduction && !first_intro) first_intro = i;
            if (*kind == SectionKind::conclusion && !first_conclusion) first_conclusion = i;
            continue;
        }
        for (const auto& re : terminators) {
            if (std::regex_match(text, re)) {
                boundary_lines.push_back(i);
                break;
            }
        }
    }

    if (!first_abstract) throw MissingSection(SectionKind::abstract);
    if (!first_intro) throw MissingSection(SectionKind::introduction);
    if (!first_conclusion) throw MissingSection(SectionKind::conclusion);
    if (!(*first_abstract < *first_intro && *first_intro < *first_conclusion)) {
        throw HeaderOrderViolation();
    }

    auto section_text = [&](std::size_t header_line) {
        auto it = std::upper_bound(boundary_lines.begin(), boundary_lines.end(), header_line);
        std::size_t begin = lines[header_line].end;
        if (begin < doc.body.size() && doc.body[begin] == '\n') ++begin;
        std::size_t end = (it == boundary_lines.end()) ? doc.body.size() : lines[*it].begin;
        return trim(doc.body.substr(begin, end - begin));
    };

    const std::string raw_abstract = section_text(*first_abstract);
    const std::string raw_intro = section_text(*first_intro);
    const std::string raw_conclusion = section_text(*first_conclusion);

    if (raw_abstract.size() < options.min_section_chars) {
        throw SectionTooShort(SectionKind::abstract, raw_abstract.size());
    }
    if (raw_intro.size() < options.min_section_chars) {
        throw SectionTooShort(SectionKind::introduction, raw_intro.size());
    }
    if (raw_conclusion.size() < options.min_section_chars) {
        throw SectionTooShort(SectionKind::conclusion, raw_conclusion.size());
    }

    SectionedDocument out;
    out.id = doc.id;
    out.abstract = clean_section(raw_abstract, options.cleaning);
    out.introduction = clean_section(raw_intro, options.cleaning);
    out.conclusion = clean_section(raw_conclusion, options.cleaning);
    out.combined = out.abstract + "\n" + out.introduction + "\n" + out.conclusion;
    return out;
}

TokenStream tokenize_allow_empty(const std::string& text) {
    TokenStream out;
    out.source_len = text.size();
    std::string current;
    for (unsigned char c : text) {
        if (c < 0x80 && std::isalpha(c)) {
            current += static_cast<char>(std::tolower(c));
        } else if (!current.empty()) {
            out.tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) {
        out.tokens.push_back(std::move(current));
    }
    return out;
}

TokenStream tokenize(const std::string& text) {
    TokenStream out = tokenize_allow_empty(text);
    if (out.tokens.empty()) {
        throw EmptyTokenStream();
    }
    return out;
}

}  // namespace styloseg::corpus
