#include "styloseg/config.hpp"

#include <cstdlib>

#include "styloseg/io.hpp"

namespace styloseg::config {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0') {
        throw ConfigError(key + ": expected an unsigned integer, got '" + value + "'");
    }
    return v;
}

double parse_double(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0') {
        throw ConfigError(key + ": expected a number, got '" + value + "'");
    }
    return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError(key + ": expected a boolean, got '" + value + "'");
}

std::string one_of(const std::string& key, const std::string& value,
                   const std::vector<std::string>& allowed) {
    for (const auto& a : allowed) {
        if (value == a) return value;
    }
    std::string list;
    for (const auto& a : allowed) {
        if (!list.empty()) list += ", ";
        list += a;
    }
    throw ConfigError(key + ": expected one of {" + list + "}, got '" + value + "'");
}

}  // namespace

changepoint::SignalKind RunConfig::signal_kind() const {
    return signal == "raw" ? changepoint::SignalKind::raw
                           : changepoint::SignalKind::cumulative_sum;
}

changepoint::LengthNormScheme RunConfig::length_norm_scheme() const {
    if (length_norm == "divide_by_length") return changepoint::LengthNormScheme::divide_by_length;
    if (length_norm == "identity") return changepoint::LengthNormScheme::identity;
    return changepoint::LengthNormScheme::binned_zscore;
}

stats::BinningKind RunConfig::binning_kind() const {
    return binning == "width" ? stats::BinningKind::equal_width : stats::BinningKind::equal_count;
}

stats::TTestKind RunConfig::ttest_kind() const {
    return ttest == "student" ? stats::TTestKind::student : stats::TTestKind::welch;
}

corpus::SectioningOptions RunConfig::sectioning_options() const {
    corpus::SectioningOptions options;
    options.min_section_chars = min_section_chars;
    for (const auto& p : extra_line_patterns) {
        options.cleaning.line_patterns.push_back(p);
    }
    for (const auto& p : extra_inline_patterns) {
        options.cleaning.inline_patterns.push_back(p);
    }
    return options;
}

void apply_override(RunConfig& cfg, const std::string& dotted_key, const std::string& value) {
    const std::string& k = dotted_key;
    if (k == "run.seed") {
        cfg.seed = parse_u64(k, value);
    } else if (k == "run.workers") {
        cfg.workers = parse_u64(k, value);
    } else if (k == "corpus.min_section_chars") {
        cfg.min_section_chars = parse_u64(k, value);
    } else if (k == "corpus.line_pattern") {
        cfg.extra_line_patterns.push_back(value);
    } else if (k == "corpus.inline_pattern") {
        cfg.extra_inline_patterns.push_back(value);
    } else if (k == "classifier.smoothing") {
        cfg.smoothing = parse_double(k, value);
    } else if (k == "classifier.min_doc_frequency") {
        cfg.min_doc_frequency = parse_u64(k, value);
    } else if (k == "classifier.decision_threshold") {
        cfg.decision_threshold = parse_double(k, value);
    } else if (k == "changepoint.cost_model") {
        cfg.cost_model = one_of(k, value, {"l2"});
    } else if (k == "changepoint.min_segment_length") {
        cfg.min_segment_length = parse_u64(k, value);
    } else if (k == "changepoint.threshold_margin") {
        cfg.threshold_margin = parse_double(k, value);
    } else if (k == "changepoint.signal") {
        cfg.signal = one_of(k, value, {"cumsum", "raw"});
    } else if (k == "changepoint.length_norm") {
        cfg.length_norm = one_of(k, value, {"binned_zscore", "divide_by_length", "identity"});
    } else if (k == "stats.bins") {
        cfg.bins = parse_u64(k, value);
    } else if (k == "stats.binning") {
        cfg.binning = one_of(k, value, {"quantile", "width"});
    } else if (k == "stats.ttest") {
        cfg.ttest = one_of(k, value, {"welch", "student"});
    } else if (k == "regen.target_fraction") {
        cfg.target_fraction = parse_double(k, value);
    } else if (k == "regen.train_fraction") {
        cfg.train_fraction = parse_double(k, value);
    } else if (k == "provider.kind") {
        cfg.provider.kind = one_of(k, value, {"mock", "http"});
    } else if (k == "provider.endpoint") {
        cfg.provider.endpoint = value;
    } else if (k == "provider.model") {
        cfg.provider.model = value;
    } else if (k == "provider.credential_env") {
        cfg.provider.credential_env = value;
    } else if (k == "provider.timeout_seconds") {
        cfg.provider.timeout_seconds = parse_double(k, value);
    } else if (k == "provider.max_retries") {
        cfg.provider.max_retries = parse_u64(k, value);
    } else if (k == "provider.rewrite_prompt") {
        cfg.provider.rewrite_prompt = value;
    } else if (k == "provider.paragraph_prompt") {
        cfg.provider.paragraph_prompt = value;
    } else if (k == "output.series") {
        cfg.emit_series = parse_bool(k, value);
    } else {
        throw ConfigError("unknown config key: " + k);
    }
}

RunConfig load_config(const std::filesystem::path& path) {
    RunConfig cfg;
    const std::string content = io::read_file(path);
    std::string section;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos <= content.size()) {
        std::size_t nl = content.find('\n', pos);
        const std::size_t end = (nl == std::string::npos) ? content.size() : nl;
        std::string line = trim(content.substr(pos, end - pos));
        ++line_no;
        pos = (nl == std::string::npos) ? content.size() + 1 : nl + 1;

        if (line.empty() || line[0] == '#' || line[0] == ';') {
            continue;
        }
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                              ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty()) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                              ": key outside of a [section]");
        }
        apply_override(cfg, section + "." + key, value);
    }
    validate(cfg);
    return cfg;
}

void validate(const RunConfig& cfg) {
    if (cfg.min_segment_length < 1) {
        throw ConfigError("changepoint.min_segment_length must be >= 1");
    }
    if (!(cfg.threshold_margin > 0.0)) {
        throw ConfigError("changepoint.threshold_margin must be > 0");
    }
    if (!(cfg.smoothing > 0.0)) {
        throw ConfigError("classifier.smoothing must be > 0");
    }
    if (!(cfg.target_fraction > 0.0 && cfg.target_fraction < 1.0)) {
        throw ConfigError("regen.target_fraction must be in (0, 1)");
    }
    if (!(cfg.train_fraction > 0.0 && cfg.train_fraction < 1.0)) {
        throw ConfigError("regen.train_fraction must be in (0, 1)");
    }
    if (cfg.bins < 1) {
        throw ConfigError("stats.bins must be >= 1");
    }
}

std::string snapshot(const RunConfig& cfg) {
    std::string out;
    out += "[run]\n";
    out += "seed = " + std::to_string(cfg.seed) + "\n";
    out += "workers = " + std::to_string(cfg.workers) + "\n";
    out += "\n[corpus]\n";
    out += "min_section_chars = " + std::to_string(cfg.min_section_chars) + "\n";
    for (const auto& p : cfg.extra_line_patterns) {
        out += "line_pattern = " + p + "\n";
    }
    for (const auto& p : cfg.extra_inline_patterns) {
        out += "inline_pattern = " + p + "\n";
    }
    out += "\n[classifier]\n";
    out += "smoothing = " + io::format_double(cfg.smoothing) + "\n";
    out += "min_doc_frequency = " + std::to_string(cfg.min_doc_frequency) + "\n";
    out += "decision_threshold = " + io::format_double(cfg.decision_threshold) + "\n";
    out += "\n[changepoint]\n";
    out += "cost_model = " + cfg.cost_model + "\n";
    out += "min_segment_length = " + std::to_string(cfg.min_segment_length) + "\n";
    out += "threshold_margin = " + io::format_double(cfg.threshold_margin) + "\n";
    out += "signal = " + cfg.signal + "\n";
    out += "length_norm = " + cfg.length_norm + "\n";
    out += "\n[stats]\n";
    out += "bins = " + std::to_string(cfg.bins) + "\n";
    out += "binning = " + cfg.binning + "\n";
    out += "ttest = " + cfg.ttest + "\n";
    out += "\n[regen]\n";
    out += "target_fraction = " + io::format_double(cfg.target_fraction) + "\n";
    out += "train_fraction = " + io::format_double(cfg.train_fraction) + "\n";
    out += "\n[provider]\n";
    out += "kind = " + cfg.provider.kind + "\n";
    out += "endpoint = " + cfg.provider.endpoint + "\n";
    out += "model = " + cfg.provider.model + "\n";
    out += "credential_env = " + cfg.provider.credential_env + "\n";
    out += "timeout_seconds = " + io::format_double(cfg.provider.timeout_seconds) + "\n";
    out += "max_retries = " + std::to_string(cfg.provider.max_retries) + "\n";
    out += "rewrite_prompt = " + cfg.provider.rewrite_prompt + "\n";
    out += "paragraph_prompt = " + cfg.provider.paragraph_prompt + "\n";
    out += "\n[output]\n";
    out += std::string("series = ") + (cfg.emit_series ? "true" : "false") + "\n";
    return out;
}

}  // namespace styloseg::config
