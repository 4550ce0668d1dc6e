#pragma once

#include <cstddef>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "styloseg/errors.hpp"

namespace styloseg::corpus {

struct RawDocument {
    std::string id;
    std::string body;
};

struct SectionedDocument {
    std::string id;
    std::string abstract;      // cleaned
    std::string introduction;  // cleaned
    std::string conclusion;    // cleaned (Conclusion or Discussion)
    std::string combined;      // abstract + "\n" + introduction + "\n" + conclusion
};

struct TokenStream {
    std::vector<std::string> tokens;  // lowercase alphabetic, source order
    std::size_t source_len = 0;       // characters in the source text
};

/// One header-matching criterion. Criteria are applied per line in priority
/// order; the first match classifies the line. A rule either names the
/// section it detects or derives it from the first capture group.
struct HeaderRule {
    std::string name;
    std::string pattern;  // anchored to the whole trimmed line
    std::optional<SectionKind> section;  // nullopt => derive from capture
};

/// The default ordered rule set (nine criteria).
const std::vector<HeaderRule>& default_header_rules();

/// Line-level and inline regex removals applied by clean_section.
struct CleaningRules {
    std::vector<std::string> line_patterns;    // drop the whole line on match
    std::vector<std::string> inline_patterns;  // splice the match out
};

const CleaningRules& default_cleaning_rules();

struct SectioningOptions {
    std::vector<HeaderRule> rules = default_header_rules();
    CleaningRules cleaning = default_cleaning_rules();
    std::size_t min_section_chars = 500;  // measured on raw (pre-cleaning) text
};

/// Locate the Abstract, Introduction and Conclusion/Discussion headers with
/// the ordered criteria, demarcate the sections, enforce the length floor on
/// the raw text, then clean each section.
/// Throws MissingSection, SectionTooShort or HeaderOrderViolation.
SectionedDocument detect_sections(const RawDocument& doc, const SectioningOptions& options = {});

/// Remove web links, keyword lists and journal/report-number lines, then
/// normalize whitespace. Idempotent.
std::string clean_section(const std::string& text,
                          const CleaningRules& rules = default_cleaning_rules());

/// Lowercased alphabetic runs in source order; digits and punctuation are
/// separators. Throws EmptyTokenStream when nothing survives.
TokenStream tokenize(const std::string& text);

/// tokenize() without the non-empty requirement; used where empty documents
/// are filtered rather than fatal.
TokenStream tokenize_allow_empty(const std::string& text);

}  // namespace styloseg::corpus
