#pragma once

// Configuration loading (defaults < file < flags) and report envelopes with a
// pinned schema version. The config file is a single flat JSON object;
// unknown keys are rejected rather than ignored so typos surface immediately.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>
#include <unistd.h>

#include "hintforge/errors.hpp"
#include "hintforge/version.hpp"

namespace hintforge {

struct CliConfig {
    // session
    int T = 2;
    int N = 5;
    int k = 4;
    int reps = 10;
    double temperature = 1.0;
    double top_p = 1.0;
    int max_tokens = 8192;
    std::string strategy = "cot";
    // profiling
    std::string cc = "g++";
    std::string flags = "-O3";
    double timeout_s = 0.0; // 0 = use the suite's per-case timeouts
    double noise_floor_ms = 1.0;
    double noise_floor_frac = 0.02;
    // paths
    std::string kb;          // empty = built-in seed KB
    std::string workspace = "workspace";
    // backend
    std::string backend = "mock";
    std::string backend_script;
    std::string endpoint;
    std::string model;
    bool json_mode = false;
    int retry_budget = 3;
    int max_requests = 0;

    bool operator==(const CliConfig&) const = default;
};

namespace detail {

inline void assign_config_key(CliConfig& cfg, const std::string& key,
                              const nlohmann::json& value) {
    try {
        if (key == "T") cfg.T = value.get<int>();
        else if (key == "N") cfg.N = value.get<int>();
        else if (key == "k") cfg.k = value.get<int>();
        else if (key == "reps") cfg.reps = value.get<int>();
        else if (key == "temperature") cfg.temperature = value.get<double>();
        else if (key == "top_p") cfg.top_p = value.get<double>();
        else if (key == "max_tokens") cfg.max_tokens = value.get<int>();
        else if (key == "strategy") cfg.strategy = value.get<std::string>();
        else if (key == "cc") cfg.cc = value.get<std::string>();
        else if (key == "flags") cfg.flags = value.get<std::string>();
        else if (key == "timeout_s") cfg.timeout_s = value.get<double>();
        else if (key == "noise_floor_ms") cfg.noise_floor_ms = value.get<double>();
        else if (key == "noise_floor_frac") cfg.noise_floor_frac = value.get<double>();
        else if (key == "kb") cfg.kb = value.get<std::string>();
        else if (key == "workspace") cfg.workspace = value.get<std::string>();
        else if (key == "backend") cfg.backend = value.get<std::string>();
        else if (key == "backend_script") cfg.backend_script = value.get<std::string>();
        else if (key == "endpoint") cfg.endpoint = value.get<std::string>();
        else if (key == "model") cfg.model = value.get<std::string>();
        else if (key == "json_mode") cfg.json_mode = value.get<bool>();
        else if (key == "retry_budget") cfg.retry_budget = value.get<int>();
        else if (key == "max_requests") cfg.max_requests = value.get<int>();
        else throw Error(ErrorCode::UnknownKey, "unknown config key '" + key + "'");
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ConfigParse,
                    "bad value for config key '" + key + "': " + e.what());
    }
}

// Coerces a flag-style string override onto the typed key.
inline nlohmann::json coerce_override(const CliConfig& cfg, const std::string& key,
                                      const std::string& value) {
    (void)cfg;
    static const std::map<std::string, char> kinds = {
        {"T", 'i'},           {"N", 'i'},        {"k", 'i'},
        {"reps", 'i'},        {"max_tokens", 'i'}, {"retry_budget", 'i'},
        {"max_requests", 'i'}, {"temperature", 'd'}, {"top_p", 'd'},
        {"timeout_s", 'd'},   {"noise_floor_ms", 'd'}, {"noise_floor_frac", 'd'},
        {"json_mode", 'b'},
    };
    auto it = kinds.find(key);
    try {
        if (it == kinds.end()) return value;
        if (it->second == 'i') return std::stoi(value);
        if (it->second == 'd') return std::stod(value);
        return value == "true" || value == "1";
    } catch (const std::exception&) {
        throw Error(ErrorCode::ConfigParse,
                    "bad value '" + value + "' for config key '" + key + "'");
    }
}

} // namespace detail

// Precedence: flag overrides > file values > defaults.
inline CliConfig load_config(const std::optional<std::string>& file_path,
                             const std::map<std::string, std::string>& overrides = {}) {
    CliConfig cfg;
    if (file_path) {
        std::ifstream in(*file_path, std::ios::binary);
        if (!in) throw Error(ErrorCode::IoError, "cannot read config " + *file_path);
        std::stringstream ss;
        ss << in.rdbuf();
        std::string text = ss.str();
        if (text.find_first_not_of(" \t\r\n") != std::string::npos) {
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(text);
            } catch (const nlohmann::json::parse_error& e) {
                throw Error(ErrorCode::ConfigParse,
                            "config is not valid JSON: " + std::string(e.what()));
            }
            if (!j.is_object()) {
                throw Error(ErrorCode::ConfigParse, "config must be a JSON object");
            }
            for (auto it = j.begin(); it != j.end(); ++it) {
                detail::assign_config_key(cfg, it.key(), it.value());
            }
        }
    }
    for (const auto& [key, value] : overrides) {
        detail::assign_config_key(cfg, key, detail::coerce_override(cfg, key, value));
    }
    if (cfg.T < 1 || cfg.N < 1 || cfg.k < 1 || cfg.reps < 1) {
        throw Error(ErrorCode::ConfigParse, "T, N, k, and reps must all be >= 1");
    }
    return cfg;
}

// --- report envelope ---------------------------------------------------------

struct ReportEnvelope {
    std::string schema_version = kReportSchemaVersion;
    std::string tool_version = kToolVersion;
    std::string kb_version;
    std::string compiler_id;
    std::string host;
    std::string timestamp; // ISO 8601 UTC
    nlohmann::ordered_json payload;

    bool operator==(const ReportEnvelope& other) const {
        return schema_version == other.schema_version &&
               tool_version == other.tool_version && kb_version == other.kb_version &&
               compiler_id == other.compiler_id && host == other.host &&
               timestamp == other.timestamp && payload == other.payload;
    }
};

inline ReportEnvelope make_envelope(nlohmann::ordered_json payload,
                                    const std::string& kb_version,
                                    const std::string& compiler_id) {
    ReportEnvelope env;
    env.kb_version = kb_version;
    env.compiler_id = compiler_id;
    char hostname[256] = {0};
    if (::gethostname(hostname, sizeof(hostname) - 1) == 0) env.host = hostname;
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    env.timestamp = buf;
    env.payload = std::move(payload);
    return env;
}

inline nlohmann::ordered_json envelope_to_json(const ReportEnvelope& env) {
    return {{"schema_version", env.schema_version},
            {"tool_version", env.tool_version},
            {"kb_version", env.kb_version},
            {"compiler_id", env.compiler_id},
            {"host", env.host},
            {"timestamp", env.timestamp},
            {"payload", env.payload}};
}

inline void emit_report(const ReportEnvelope& env, const std::string& path) {
    std::filesystem::path p(path);
    if (!p.parent_path().empty()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write report " + path);
    out << envelope_to_json(env).dump(2) << "\n";
    if (!out) throw Error(ErrorCode::IoError, "failed writing report " + path);
}

inline ReportEnvelope parse_report(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read report " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(ss.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ConfigParse,
                    "report is not valid JSON: " + std::string(e.what()));
    }
    ReportEnvelope env;
    env.schema_version = j.value("schema_version", std::string());
    if (env.schema_version != kReportSchemaVersion) {
        throw Error(ErrorCode::SchemaVersionMismatch,
                    "report schema version '" + env.schema_version +
                        "' does not match expected '" + kReportSchemaVersion + "'");
    }
    env.tool_version = j.value("tool_version", std::string());
    env.kb_version = j.value("kb_version", std::string());
    env.compiler_id = j.value("compiler_id", std::string());
    env.host = j.value("host", std::string());
    env.timestamp = j.value("timestamp", std::string());
    env.payload = j.value("payload", nlohmann::ordered_json());
    return env;
}

} // namespace hintforge
