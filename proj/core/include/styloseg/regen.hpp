#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "styloseg/errors.hpp"

namespace styloseg::regen {

/// Vendor-agnostic chat-completion provider configuration. The credential is
/// referenced by environment variable name and is never persisted or logged.
struct ProviderConfig {
    std::string kind = "mock";  // "mock" or "http"
    std::string endpoint = "http://localhost:8080/v1/chat/completions";
    std::string model = "rewrite-model";
    std::string credential_env = "STYLOSEG_API_KEY";
    double timeout_seconds = 30.0;
    std::size_t max_retries = 3;
    std::uint64_t seed = 42;  // drives the mock provider
    std::string rewrite_prompt =
        "Rewrite the following academic text preserving its meaning:";
    std::string paragraph_prompt =
        "Write one additional paragraph, of about {chars} characters, that could "
        "extend the following academic text:";
};

struct RegenPair {
    std::string id;
    std::string original;
    std::string regenerated;
    std::string provider_digest;
    std::string prompt_digest;
};

/// Raw request/response archive hook for provenance.
using ArchiveSink = std::function<void(const std::string& request, const std::string& response)>;

class TextProvider {
public:
    virtual ~TextProvider() = default;

    /// Full-document rewrite under the configured rewrite prompt.
    virtual std::string rewrite(const std::string& text) = 0;

    /// A fresh paragraph of roughly `target_chars` characters, conditioned on
    /// `context` (the document it will be inserted into).
    virtual std::string generate_paragraph(const std::string& context,
                                           std::size_t target_chars) = 0;

    /// Identifies the provider and its parameters in manifests.
    virtual std::string digest() const = 0;

    void set_archive(ArchiveSink sink) { archive_ = std::move(sink); }

protected:
    void archive(const std::string& request, const std::string& response) const {
        if (archive_) archive_(request, response);
    }

private:
    ArchiveSink archive_;
};

/// Deterministic offline provider: seeded synonym substitution and light
/// sentence reordering, biased toward a configurable set of LLM-flavored
/// words so synthetic training yields a non-degenerate model. Identical
/// (seed, input) always yields identical output.
class MockProvider : public TextProvider {
public:
    explicit MockProvider(std::uint64_t seed);
    MockProvider(std::uint64_t seed, std::map<std::string, std::string> synonyms,
                 std::vector<std::string> flavor_words);

    std::string rewrite(const std::string& text) override;
    std::string generate_paragraph(const std::string& context, std::size_t target_chars) override;
    std::string digest() const override;

    /// The built-in human-word -> LLM-word substitution table.
    static const std::map<std::string, std::string>& default_synonyms();
    /// The built-in LLM-flavored word pool used for generated paragraphs.
    static const std::vector<std::string>& default_flavor_words();

private:
    std::uint64_t seed_;
    std::map<std::string, std::string> synonyms_;
    std::vector<std::string> flavor_words_;
};

/// Chat-completion HTTP adapter (JSON request with model and messages, JSON
/// response with the completion text). Retries transient failures with
/// backoff and honors Retry-After on 429.
std::unique_ptr<TextProvider> make_http_provider(const ProviderConfig& cfg);

/// Builds the provider named by cfg.kind.
std::unique_ptr<TextProvider> make_provider(const ProviderConfig& cfg);

/// Rewrite `text` through the provider; the empty input is a precondition
/// violation and provider failures surface as ProviderError subclasses.
std::string regenerate(TextProvider& provider, const std::string& text);

struct InjectionResult {
    std::string segmented;
    std::size_t span_offset = 0;
    std::size_t span_length = 0;  // erase [offset, offset+length) to recover the original
};

/// Insert a generated paragraph of about target_fraction * len(text)
/// characters at a seeded uniform-random paragraph boundary. Requires at
/// least two internal paragraph boundaries.
InjectionResult inject_paragraph(TextProvider& provider, const std::string& text,
                                 double target_fraction, std::uint64_t seed);

constexpr double kDefaultTargetFraction = 0.194;

struct ValidationTriple {
    std::string id;
    std::string original;
    std::string regenerated;
    std::string segmented;
    std::size_t span_offset = 0;
    std::size_t span_length = 0;
};

struct SkipRecord {
    std::string id;
    std::string reason;
};

struct ValidationSets {
    std::vector<ValidationTriple> triples;  // aligned by id
    std::vector<SkipRecord> skips;
    std::string provider_digest;
    std::string prompt_digest;
};

/// Build the original / regenerated / segmented corpora for a set of
/// documents (id -> combined text). Per-document provider failures become
/// skip records; nothing is silently substituted.
ValidationSets build_validation_sets(const std::vector<std::pair<std::string, std::string>>& docs,
                                     TextProvider& provider, const ProviderConfig& cfg,
                                     double target_fraction, std::uint64_t seed);

}  // namespace styloseg::regen
