#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace styloseg {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// corpus
// ---------------------------------------------------------------------------

enum class SectionKind { abstract, introduction, conclusion };

const char* section_name(SectionKind kind);

class MissingSection : public Error {
public:
    explicit MissingSection(SectionKind which)
        : Error(std::string("missing section header: ") + section_name(which)), section(which) {}
    SectionKind section;
};

class SectionTooShort : public Error {
public:
    SectionTooShort(SectionKind which, std::size_t len)
        : Error(std::string("section too short: ") + section_name(which) + " (" +
                std::to_string(len) + " chars)"),
          section(which),
          length(len) {}
    SectionKind section;
    std::size_t length;
};

class HeaderOrderViolation : public Error {
public:
    HeaderOrderViolation() : Error("section headers found out of order") {}
};

class EmptyTokenStream : public Error {
public:
    EmptyTokenStream() : Error("tokenizer produced no tokens") {}
};

// ---------------------------------------------------------------------------
// classifier
// ---------------------------------------------------------------------------

class EmptyCorpus : public Error {
public:
    EmptyCorpus() : Error("corpus contains no documents") {}
};

class MalformedModelFile : public Error {
public:
    MalformedModelFile(const std::string& detail, std::size_t offset)
        : Error("malformed model file at byte " + std::to_string(offset) + ": " + detail),
          byte_offset(offset) {}
    std::size_t byte_offset;
};

// ---------------------------------------------------------------------------
// changepoint
// ---------------------------------------------------------------------------

class SeriesTooShort : public Error {
public:
    SeriesTooShort(std::size_t n, std::size_t min_segment_length)
        : Error("series of length " + std::to_string(n) + " too short for min segment length " +
                std::to_string(min_segment_length)) {}
};

class IndexOutOfRange : public Error {
public:
    IndexOutOfRange(std::size_t i, std::size_t j, std::size_t n)
        : Error("segment [" + std::to_string(i) + ", " + std::to_string(j) +
                "] out of range for series of length " + std::to_string(n)) {}
};

// ---------------------------------------------------------------------------
// stats
// ---------------------------------------------------------------------------

class DegenerateSample : public Error {
public:
    explicit DegenerateSample(const std::string& detail) : Error("degenerate sample: " + detail) {}
};

class LengthMismatch : public Error {
public:
    LengthMismatch(std::size_t a, std::size_t b)
        : Error("sample lengths differ: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class TooFewPoints : public Error {
public:
    explicit TooFewPoints(std::size_t n) : Error("too few points: " + std::to_string(n)) {}
};

class AlignmentError : public Error {
public:
    explicit AlignmentError(const std::string& detail) : Error("alignment error: " + detail) {}
};

// ---------------------------------------------------------------------------
// regen / providers
// ---------------------------------------------------------------------------

class ProviderError : public Error {
public:
    explicit ProviderError(const std::string& what) : Error(what) {}
};

class ProviderTimeout : public ProviderError {
public:
    explicit ProviderTimeout(const std::string& detail) : ProviderError("provider timeout: " + detail) {}
};

class ProviderRefusal : public ProviderError {
public:
    explicit ProviderRefusal(const std::string& detail) : ProviderError("provider refusal: " + detail) {}
};

class RateLimited : public ProviderError {
public:
    explicit RateLimited(double retry_after_s)
        : ProviderError("rate limited, retry after " + std::to_string(retry_after_s) + "s"),
          retry_after_seconds(retry_after_s) {}
    double retry_after_seconds;
};

class EmptyCompletion : public ProviderError {
public:
    EmptyCompletion() : ProviderError("provider returned an empty completion") {}
};

class NoParagraphBoundary : public Error {
public:
    NoParagraphBoundary() : Error("text has fewer than two paragraph boundaries") {}
};

// ---------------------------------------------------------------------------
// io / cli
// ---------------------------------------------------------------------------

class IoError : public Error {
public:
    explicit IoError(const std::string& detail) : Error("io error: " + detail) {}
};

class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& column)
        : Error("input is missing required column: " + column), column_name(column) {}
    std::string column_name;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& detail) : Error("config error: " + detail) {}
};

}  // namespace styloseg
