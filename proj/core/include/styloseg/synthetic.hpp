#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "styloseg/corpus.hpp"

namespace styloseg::synthetic {

/// Ways a generated document can violate the sectioning criteria; used to
/// exercise the rejection paths.
enum class Defect {
    none,
    missing_conclusion,
    missing_introduction,
    short_abstract,
    headers_out_of_order,
};

struct GeneratorOptions {
    /// Target combined length band, in characters, before headers.
    std::size_t min_section_chars = 500;
    std::size_t intro_paragraphs_min = 3;
    std::size_t intro_paragraphs_max = 5;
    std::size_t conclusion_paragraphs_min = 2;
    std::size_t conclusion_paragraphs_max = 3;
};

/// A deterministic human-flavored document with Abstract, Introduction and
/// Conclusion/Discussion headers (header styles rotate across seeds). The
/// same (id, seed) always yields the same text.
corpus::RawDocument generate_document(const std::string& id, std::uint64_t seed,
                                      Defect defect = Defect::none,
                                      const GeneratorOptions& options = {});

/// Write `n_good` well-formed and `n_defective` defective documents as
/// UTF-8 .txt files (one per document, file stem = id). Returns the ids in
/// the order written.
std::vector<std::string> write_fixture_corpus(const std::filesystem::path& dir,
                                              std::size_t n_good, std::size_t n_defective,
                                              std::uint64_t seed);

}  // namespace styloseg::synthetic
