#include <chrono>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "styloseg/digest.hpp"
#include "styloseg/regen.hpp"

namespace styloseg::regen {

namespace {

using nlohmann::json;

struct ParsedEndpoint {
    std::string host_base;  // scheme://host[:port]
    std::string path;
};

ParsedEndpoint parse_endpoint(const std::string& endpoint) {
    const std::size_t scheme = endpoint.find("://");
    if (scheme == std::string::npos) {
        throw ConfigError("endpoint must include a scheme: " + endpoint);
    }
    const std::size_t path_start = endpoint.find('/', scheme + 3);
    if (path_start == std::string::npos) {
        return {endpoint, "/"};
    }
    return {endpoint.substr(0, path_start), endpoint.substr(path_start)};
}

class HttpProvider : public TextProvider {
public:
    explicit HttpProvider(ProviderConfig cfg) : cfg_(std::move(cfg)) {
        const char* key = std::getenv(cfg_.credential_env.c_str());
        credential_ = key ? key : "";
    }

    std::string rewrite(const std::string& text) override {
        return complete(cfg_.rewrite_prompt + "\n\n" + text);
    }

    std::string generate_paragraph(const std::string& context,
                                   std::size_t target_chars) override {
        std::string prompt = cfg_.paragraph_prompt;
        const std::string placeholder = "{chars}";
        const std::size_t at = prompt.find(placeholder);
        if (at != std::string::npos) {
            prompt.replace(at, placeholder.size(), std::to_string(target_chars));
        }
        return complete(prompt + "\n\n" + context);
    }

    std::string digest() const override {
        Fnv1a h;
        h.update("http-provider/1");
        h.update(cfg_.endpoint);
        h.update("|");
        h.update(cfg_.model);
        return h.hex();
    }

private:
    std::string complete(const std::string& prompt) {
        const ParsedEndpoint ep = parse_endpoint(cfg_.endpoint);
        httplib::Client client(ep.host_base);
        const auto timeout = std::chrono::duration<double>(cfg_.timeout_seconds);
        client.set_connection_timeout(timeout);
        client.set_read_timeout(timeout);
        client.set_write_timeout(timeout);

        httplib::Headers headers;
        if (!credential_.empty()) {
            headers.emplace("Authorization", "Bearer " + credential_);
        }

        const json request = {
            {"model", cfg_.model},
            {"messages", json::array({json{{"role", "user"}, {"content", prompt}}})},
        };
        const std::string body = request.dump();

        std::string last_error = "no attempt made";
        for (std::size_t attempt = 0; attempt <= cfg_.max_retries; ++attempt) {
            if (attempt > 0) {
                std::this_thread::sleep_for(std::chrono::duration<double>(backoff_));
                backoff_ = std::min(backoff_ * 2.0, 30.0);
            }
            auto res = client.Post(ep.path, headers, body, "application/json");
            if (!res) {
                last_error = httplib::to_string(res.error());
                continue;  // connection failure or timeout: retry
            }
            archive(body, res->body);
            if (res->status == 429) {
                double retry_after = backoff_;
                if (res->has_header("Retry-After")) {
                    retry_after = std::strtod(res->get_header_value("Retry-After").c_str(), nullptr);
                }
                if (attempt == cfg_.max_retries) {
                    throw RateLimited(retry_after);
                }
                std::this_thread::sleep_for(std::chrono::duration<double>(std::max(retry_after, 0.0)));
                continue;
            }
            if (res->status >= 500) {
                last_error = "server status " + std::to_string(res->status);
                continue;
            }
            if (res->status != 200) {
                throw ProviderRefusal("status " + std::to_string(res->status) + ": " + res->body);
            }
            return extract_content(res->body);
        }
        throw ProviderTimeout(last_error + " after " + std::to_string(cfg_.max_retries + 1) +
                              " attempts");
    }

    static std::string extract_content(const std::string& body) {
        json parsed;
        try {
            parsed = json::parse(body);
        } catch (const json::exception& e) {
            throw ProviderRefusal(std::string("unparseable response: ") + e.what());
        }
        if (parsed.contains("error")) {
            throw ProviderRefusal(parsed["error"].dump());
        }
        if (!parsed.contains("choices") || !parsed["choices"].is_array() ||
            parsed["choices"].empty()) {
            throw EmptyCompletion();
        }
        const auto& first = parsed["choices"][0];
        if (!first.contains("message") || !first["message"].contains("content")) {
            throw EmptyCompletion();
        }
        std::string content = first["message"]["content"].get<std::string>();
        if (content.empty()) {
            throw EmptyCompletion();
        }
        return content;
    }

    ProviderConfig cfg_;
    std::string credential_;  // held in memory only, never logged or persisted
    double backoff_ = 0.5;
};

}  // namespace

std::unique_ptr<TextProvider> make_http_provider(const ProviderConfig& cfg) {
    return std::make_unique<HttpProvider>(cfg);
}

}  // namespace styloseg::regen
