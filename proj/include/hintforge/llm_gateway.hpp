#pragma once

// Prompt assembly and plan-generator backends. Prompts combine the marked
// source, retrieved knowledge-base context, and feedback from earlier
// iterations; backends return raw plan texts that plan_model parses and
// validates. The mock backend replays a scripted list of responses so the
// whole pipeline can run deterministically without a model.

#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "hintforge/errors.hpp"
#include "hintforge/feedback.hpp"
#include "hintforge/retriever.hpp"
#include "hintforge/source_model.hpp"

namespace hintforge {

enum class PromptStrategy { ZeroShot, Cot, CotFewshot };

inline std::string_view strategy_name(PromptStrategy s) {
    switch (s) {
        case PromptStrategy::ZeroShot:   return "zero-shot";
        case PromptStrategy::Cot:        return "cot";
        case PromptStrategy::CotFewshot: return "cot-fewshot";
    }
    return "?";
}

inline std::optional<PromptStrategy> strategy_from_name(std::string_view s) {
    if (s == "zero-shot") return PromptStrategy::ZeroShot;
    if (s == "cot") return PromptStrategy::Cot;
    if (s == "cot-fewshot") return PromptStrategy::CotFewshot;
    return std::nullopt;
}

struct SamplingParams {
    double temperature = 1.0;
    double top_p = 1.0;
    int n = 5;
    int max_tokens = 8192;
};

struct PromptBundle {
    std::string system;
    std::string task;        // strategy-specific instruction text
    std::string marked_code;
    std::string rag_context; // rendered retrieved docs
    std::string feedback;    // rendered feedback history; empty on iteration 1
    SamplingParams sampling;
    PromptStrategy strategy = PromptStrategy::Cot;
    std::string site_json;   // compact JSON of the parsed insertion sites
};

enum class BackendKind { MockScripted, HttpChat };

struct BackendConfig {
    BackendKind kind = BackendKind::MockScripted;
    std::string script_path;             // mock: JSON array of response texts
    std::string endpoint;                // http: full chat-completions URL
    std::string model;
    std::string api_key_env = "HINT_API_KEY";
    bool json_mode = false;              // request structured output when supported
    int retry_budget = 3;                // attempts per sample on transport errors
    int max_requests = 0;                // 0 = unlimited
};

// --- prompt text blocks -----------------------------------------------------

inline const char* system_prompt_text() {
    return "You are a compiler attribute advisor.\n"
           "Your goal: recommend only semantics-preserving GCC/Clang attributes\n"
           "that can potentially accelerate program execution time.";
}

inline const char* task_instruction_text() {
    return "Output requirements:\n"
           "- Strictly return a single valid JSON object (UTF-8),\n"
           "  with no Markdown, no code fences, and no extra text.\n"
           "- Do not include comments or unused / extra keys.\n"
           "- Return ONLY valid JSON.\n"
           "\n"
           "Constraints:\n"
           "- Recommend only semantics-preserving edits. If safety is uncertain,\n"
           "  lower confidence or skip.\n"
           "- Use mainstream GCC/Clang attributes, e.g.:\n"
           "  * function: hot, cold, flatten, noinline, always_inline, malloc,\n"
           "    pure, const (when safe)\n"
           "  * variable: aligned(...), visibility(...)\n"
           "\n"
           "- Loops:\n"
           "  * OpenMP only if no loop-carried dependencies\n"
           "  * Use collapse(N) only for perfectly nested independent loops\n"
           "  * Reductions only when clearly safe\n"
           "\n"
           "- Insert attributes before variables/functions.\n"
           "- Multiple hints/candidates allowed.\n"
           "- JSON output only; no hidden reasoning.";
}

inline const char* deliberation_text() {
    return "Deliberate privately:\n"
           "- Reason step by step about safety, dependencies, aliasing,\n"
           "  reductions, side effects, and OpenMP semantics.";
}

inline const char* output_schema_text() {
    return "Output ONLY JSON:\n"
           "{\"hints\":[{\"symbol\":\"<name>\",\"kind\":\"function|global|statement\",\n"
           "\"line\":<int>,\"col\":<int>,\"reason\":\"<str>\",\n"
           "\"candidates\":[{\"attr\":\"__attribute__((...))|#pragma\",\n"
           "\"reason\":\"<str>\"}]}]}";
}

namespace detail {

inline std::string render_rag_context(const std::vector<RetrievedDoc>& docs) {
    if (docs.empty()) return "";
    std::string out = "RAG_CONTEXT:\n";
    for (const auto& d : docs) {
        out += "- hint: " + d.entry->hint_id + "\n";
        out += "  insert as: " + d.entry->surface_form + "\n";
        out += "  description: " + d.entry->description + "\n";
        out += "  applicability: " + d.entry->applicability + "\n";
    }
    return out;
}

inline std::string render_fewshot_examples(const std::vector<RetrievedDoc>& docs) {
    if (docs.empty()) return "";
    std::string out = "Examples of correct hint usage:\n";
    int idx = 1;
    for (const auto& d : docs) {
        if (d.entry->example_annotated.empty()) continue;
        out += "Example " + std::to_string(idx++) + " (" + d.entry->hint_id + "):\n";
        out += "Before:\n" + d.entry->example_plain;
        if (!out.empty() && out.back() != '\n') out += '\n';
        out += "After:\n" + d.entry->example_annotated;
        if (!out.empty() && out.back() != '\n') out += '\n';
    }
    return out;
}

inline std::string render_feedback(const FeedbackHistory& history) {
    if (history.records.empty()) return "";
    std::string out = "PREVIOUS ATTEMPTS (bad hint sets and bad logs):\n";
    for (const auto& r : history.records) {
        out += "- iteration " + std::to_string(r.iteration) + " [" +
               std::string(candidate_outcome_name(r.outcome)) + "]";
        if (r.metric) {
            std::ostringstream m;
            m << *r.metric;
            out += " metric=" + m.str() + "s";
        }
        out += "\n  plan: " + r.plan_text + "\n";
        if (!r.log_excerpt.empty()) {
            out += "  log: " + r.log_excerpt + "\n";
        }
    }
    return out;
}

inline std::string site_list_json(const StructuralAbstraction& abs) {
    nlohmann::ordered_json sites = nlohmann::ordered_json::array();
    for (const auto& f : abs.functions) {
        sites.push_back({{"symbol", f.name},
                         {"kind", "function"},
                         {"line", f.def_pos.line},
                         {"col", f.def_pos.col},
                         {"type", f.return_type}});
    }
    for (const auto& v : abs.variables) {
        sites.push_back({{"symbol", v.name},
                         {"kind", "global"},
                         {"line", v.decl_pos.line},
                         {"col", v.decl_pos.col},
                         {"type", v.type}});
    }
    for (const auto& s : abs.statements) {
        sites.push_back({{"symbol", std::string(loop_kind_name(s.kind))},
                         {"kind", "statement"},
                         {"line", s.pos.line},
                         {"col", s.pos.col}});
    }
    return sites.dump();
}

} // namespace detail

inline PromptBundle construct_prompt(const std::string& source_text,
                                     const StructuralAbstraction& abstraction,
                                     const std::vector<RetrievedDoc>& docs,
                                     const FeedbackHistory& feedback,
                                     PromptStrategy strategy,
                                     const SamplingParams& sampling) {
    PromptBundle b;
    b.system = system_prompt_text();
    b.marked_code = render_markers(abstraction, source_text);
    b.rag_context = detail::render_rag_context(docs);
    b.feedback = detail::render_feedback(feedback);
    b.sampling = sampling;
    b.strategy = strategy;
    b.site_json = detail::site_list_json(abstraction);

    switch (strategy) {
        case PromptStrategy::ZeroShot:
            b.task = task_instruction_text();
            break;
        case PromptStrategy::Cot:
            b.task = std::string(deliberation_text()) + "\n\n" + task_instruction_text();
            break;
        case PromptStrategy::CotFewshot:
            b.task = "You are a compiler attribute advisor.\n"
                     "Your goal: recommend only semantics-preserving GCC/Clang attributes.\n\n"
                     "Deliberate privately about safety and semantic preservation.\n\n" +
                     detail::render_fewshot_examples(docs) + "\n" + task_instruction_text();
            break;
    }
    return b;
}

// The single user message sent to the backend; byte-exact function of the
// bundle.
inline std::string render_user_message(const PromptBundle& b) {
    std::string out = b.task;
    out += "\n\n";
    if (b.strategy == PromptStrategy::CotFewshot) {
        out += "Parsed attribute positions (JSON):\n" + b.site_json + "\n\n";
    }
    if (!b.rag_context.empty()) out += b.rag_context + "\n";
    if (!b.feedback.empty()) out += b.feedback + "\n";
    out += "CODE WITH MARKERS:\n" + b.marked_code + "\n\n";
    out += output_schema_text();
    return out;
}

// --- backends ----------------------------------------------------------------

// Retryable transport failure; anything else a backend throws is fatal.
class TransportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PlanBackend {
public:
    virtual ~PlanBackend() = default;
    virtual std::string fetch_sample(const PromptBundle& bundle, int sample_index) = 0;
    virtual const BackendConfig& config() const = 0;
};

// Replays a JSON array of scripted responses in order, cycling when
// exhausted. An entry may be a plain string (a response) or an object
// {"transport_error": "<msg>"} to simulate a retryable failure.
class MockScriptBackend : public PlanBackend {
public:
    explicit MockScriptBackend(BackendConfig cfg) : cfg_(std::move(cfg)) {
        std::ifstream in(cfg_.script_path, std::ios::binary);
        if (!in) {
            throw Error(ErrorCode::IoError,
                        "cannot read mock script " + cfg_.script_path);
        }
        std::stringstream ss;
        ss << in.rdbuf();
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(ss.str());
        } catch (const nlohmann::json::parse_error& e) {
            throw Error(ErrorCode::ConfigParse,
                        std::string("mock script is not valid JSON: ") + e.what());
        }
        if (!j.is_array() || j.empty()) {
            throw Error(ErrorCode::ConfigParse, "mock script must be a non-empty array");
        }
        for (const auto& entry : j) entries_.push_back(entry);
    }

    std::string fetch_sample(const PromptBundle&, int) override {
        const nlohmann::json& entry = entries_[cursor_ % entries_.size()];
        cursor_++;
        if (entry.is_string()) return entry.get<std::string>();
        if (entry.is_object() && entry.contains("transport_error")) {
            throw TransportError(entry["transport_error"].get<std::string>());
        }
        return entry.dump(); // scripted plan given as a JSON object
    }

    const BackendConfig& config() const override { return cfg_; }

private:
    BackendConfig cfg_;
    std::vector<nlohmann::json> entries_;
    size_t cursor_ = 0;
};

// Generic chat-completions client: POST {model, messages, temperature, top_p,
// n, max_tokens} and read choices[i].message.content. Credentials come from
// the configured environment variable and are only ever sent as a header.
class HttpChatBackend : public PlanBackend {
public:
    explicit HttpChatBackend(BackendConfig cfg) : cfg_(std::move(cfg)) {
        if (cfg_.endpoint.empty()) {
            throw Error(ErrorCode::ConfigParse, "http backend requires an endpoint");
        }
    }

    std::string fetch_sample(const PromptBundle& bundle, int sample_index) override;

    const BackendConfig& config() const override { return cfg_; }

    int requests_made() const { return requests_; }

private:
    BackendConfig cfg_;
    std::vector<std::string> cache_;
    std::string cached_prompt_;
    int requests_ = 0;
};

struct GenerateStats {
    int samples_requested = 0;
    int transport_retries = 0;
};

// Obtains exactly sampling.n raw plan texts, retrying each sample on
// transport errors up to the backend's retry budget.
inline std::vector<std::string> generate_plans(const PromptBundle& bundle,
                                               PlanBackend& backend,
                                               GenerateStats* stats = nullptr) {
    std::vector<std::string> texts;
    int budget = std::max(1, backend.config().retry_budget);
    for (int i = 0; i < bundle.sampling.n; i++) {
        if (stats) stats->samples_requested++;
        std::string text;
        bool got = false;
        std::string last_error;
        for (int attempt = 0; attempt < budget; attempt++) {
            try {
                text = backend.fetch_sample(bundle, i);
                got = true;
                break;
            } catch (const TransportError& e) {
                last_error = e.what();
                if (stats) stats->transport_retries++;
            }
        }
        if (!got) {
            throw Error(ErrorCode::BackendUnavailable,
                        "sample " + std::to_string(i) + " failed after " +
                            std::to_string(budget) + " attempts: " + last_error);
        }
        texts.push_back(std::move(text));
    }
    return texts;
}

std::unique_ptr<PlanBackend> make_backend(const BackendConfig& cfg);

} // namespace hintforge

#include "httplib.h"

namespace hintforge {

namespace detail {

struct ParsedUrl {
    std::string base; // scheme://host:port
    std::string path;
};

inline ParsedUrl parse_url(const std::string& url) {
    size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw Error(ErrorCode::ConfigParse, "endpoint must include a scheme: " + url);
    }
    size_t path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

} // namespace detail

inline std::string HttpChatBackend::fetch_sample(const PromptBundle& bundle,
                                                 int sample_index) {
    std::string prompt = render_user_message(bundle);
    if (prompt != cached_prompt_) {
        cache_.clear();
        cached_prompt_ = prompt;
    }
    if (sample_index < static_cast<int>(cache_.size())) {
        return cache_[static_cast<size_t>(sample_index)];
    }

    if (cfg_.max_requests > 0 && requests_ >= cfg_.max_requests) {
        throw Error(ErrorCode::BudgetExceeded,
                    "request cap of " + std::to_string(cfg_.max_requests) + " reached");
    }

    // first request asks for the full batch; stragglers are fetched one by one
    int want = cache_.empty() ? bundle.sampling.n : 1;

    nlohmann::json body = {
        {"model", cfg_.model},
        {"messages",
         {{{"role", "system"}, {"content", bundle.system}},
          {{"role", "user"}, {"content", prompt}}}},
        {"temperature", bundle.sampling.temperature},
        {"top_p", bundle.sampling.top_p},
        {"n", want},
        {"max_tokens", bundle.sampling.max_tokens},
    };
    if (cfg_.json_mode) body["response_format"] = {{"type", "json_object"}};

    auto url = detail::parse_url(cfg_.endpoint);
    httplib::Client client(url.base);
    client.set_read_timeout(120, 0);
    httplib::Headers headers;
    const char* key = cfg_.api_key_env.empty() ? nullptr : std::getenv(cfg_.api_key_env.c_str());
    if (key && *key) headers.emplace("Authorization", std::string("Bearer ") + key);

    requests_++;
    auto res = client.Post(url.path, headers, body.dump(), "application/json");
    if (!res) {
        throw TransportError("no response from " + cfg_.endpoint);
    }
    if (res->status >= 500) {
        throw TransportError("server error " + std::to_string(res->status));
    }
    if (res->status != 200) {
        throw Error(ErrorCode::BackendUnavailable,
                    "backend returned status " + std::to_string(res->status) + ": " +
                        res->body.substr(0, 300));
    }
    nlohmann::json reply;
    try {
        reply = nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::parse_error&) {
        throw TransportError("backend returned unparseable body");
    }
    if (!reply.contains("choices") || !reply["choices"].is_array() ||
        reply["choices"].empty()) {
        throw TransportError("backend reply has no choices");
    }
    for (const auto& choice : reply["choices"]) {
        cache_.push_back(choice.at("message").at("content").get<std::string>());
    }
    if (sample_index < static_cast<int>(cache_.size())) {
        return cache_[static_cast<size_t>(sample_index)];
    }
    throw TransportError("backend returned fewer choices than requested");
}

inline std::unique_ptr<PlanBackend> make_backend(const BackendConfig& cfg) {
    if (cfg.kind == BackendKind::MockScripted) {
        return std::make_unique<MockScriptBackend>(cfg);
    }
    return std::make_unique<HttpChatBackend>(cfg);
}

} // namespace hintforge
