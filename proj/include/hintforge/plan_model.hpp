#pragma once

// The strict-JSON insertion plan a plan generator must emit, plus its two
// gates: schema parsing (syntax hallucinations stop here) and validation
// against the abstraction and knowledge base (contextual mismatches stop
// here). Wire schema:
//
//   {"hints":[{"symbol":"<name>","kind":"function|global|statement",
//              "line":<int>,"col":<int>,"reason":"<str>",
//              "candidates":[{"attr":"__attribute__((...))|#pragma ...",
//                             "reason":"<str>"}]}]}
//
// No markdown fences, no extra keys. A pre-pass tolerates ```json fences from
// misbehaving backends and reports that it had to strip them.

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "hintforge/errors.hpp"
#include "hintforge/knowledge_base.hpp"
#include "hintforge/source_model.hpp"

namespace hintforge {

struct HintCandidate {
    std::string attr;
    std::string reason;

    bool operator==(const HintCandidate&) const = default;
};

struct PlanItem {
    std::string symbol;
    SiteKind kind = SiteKind::Function;
    int line = 1;
    int col = 1;
    std::string reason;
    std::vector<HintCandidate> candidates; // non-empty

    bool operator==(const PlanItem&) const = default;
};

struct InsertionPlan {
    std::vector<PlanItem> items;

    bool operator==(const InsertionPlan&) const = default;
};

namespace detail {

inline std::string strip_fences(std::string_view text, bool* stripped) {
    size_t a = text.find_first_not_of(" \t\r\n");
    size_t b = text.find_last_not_of(" \t\r\n");
    if (a == std::string_view::npos) return std::string(text);
    std::string_view body = text.substr(a, b - a + 1);
    if (body.size() >= 6 && body.substr(0, 3) == "```" &&
        body.substr(body.size() - 3) == "```") {
        body.remove_prefix(3);
        size_t nl = body.find('\n');
        // drop the language tag line (```json)
        if (nl != std::string_view::npos && nl < 16) body.remove_prefix(nl + 1);
        body.remove_suffix(3);
        if (stripped) *stripped = true;
        return std::string(body);
    }
    return std::string(body);
}

inline void require_keys(const nlohmann::json& obj,
                         std::initializer_list<const char*> keys,
                         const char* what) {
    for (const char* k : keys) {
        if (!obj.contains(k)) {
            throw Error(ErrorCode::SchemaViolation,
                        std::string(what) + " is missing required key '" + k + "'");
        }
    }
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : keys) {
            if (it.key() == k) { known = true; break; }
        }
        if (!known) {
            throw Error(ErrorCode::SchemaViolation,
                        std::string(what) + " has extra key '" + it.key() + "'");
        }
    }
}

} // namespace detail

// Parses plan text emitted by a backend. `fence_stripped`, when supplied, is
// set when a markdown fence had to be removed first.
inline InsertionPlan parse_plan(std::string_view json_text,
                                bool* fence_stripped = nullptr) {
    if (fence_stripped) *fence_stripped = false;
    std::string text = detail::strip_fences(json_text, fence_stripped);

    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::JsonSyntaxError, e.what());
    }
    if (!root.is_object()) {
        throw Error(ErrorCode::SchemaViolation, "plan root must be a JSON object");
    }
    detail::require_keys(root, {"hints"}, "plan");
    if (!root["hints"].is_array()) {
        throw Error(ErrorCode::SchemaViolation, "'hints' must be an array");
    }

    InsertionPlan plan;
    for (const auto& jh : root["hints"]) {
        if (!jh.is_object()) {
            throw Error(ErrorCode::SchemaViolation, "hint item must be an object");
        }
        detail::require_keys(jh, {"symbol", "kind", "line", "col", "reason", "candidates"},
                             "hint item");
        PlanItem item;
        if (!jh["symbol"].is_string() || !jh["kind"].is_string() ||
            !jh["reason"].is_string() || !jh["line"].is_number_integer() ||
            !jh["col"].is_number_integer() || !jh["candidates"].is_array()) {
            throw Error(ErrorCode::SchemaViolation, "hint item field has wrong type");
        }
        item.symbol = jh["symbol"].get<std::string>();
        auto kind = site_kind_from_name(jh["kind"].get<std::string>());
        if (!kind) {
            throw Error(ErrorCode::SchemaViolation,
                        "unknown kind '" + jh["kind"].get<std::string>() + "'");
        }
        item.kind = *kind;
        item.line = jh["line"].get<int>();
        item.col = jh["col"].get<int>();
        if (item.line < 1 || item.col < 1) {
            throw Error(ErrorCode::SchemaViolation, "line and col must be >= 1");
        }
        item.reason = jh["reason"].get<std::string>();
        if (jh["candidates"].empty()) {
            throw Error(ErrorCode::SchemaViolation, "candidates must be non-empty");
        }
        for (const auto& jc : jh["candidates"]) {
            if (!jc.is_object()) {
                throw Error(ErrorCode::SchemaViolation, "candidate must be an object");
            }
            detail::require_keys(jc, {"attr", "reason"}, "candidate");
            if (!jc["attr"].is_string() || !jc["reason"].is_string()) {
                throw Error(ErrorCode::SchemaViolation, "candidate field has wrong type");
            }
            HintCandidate cand{jc["attr"].get<std::string>(),
                               jc["reason"].get<std::string>()};
            if (cand.attr.empty()) {
                throw Error(ErrorCode::SchemaViolation, "candidate attr must be non-empty");
            }
            item.candidates.push_back(std::move(cand));
        }
        for (const auto& prev : plan.items) {
            if (prev.symbol == item.symbol && prev.kind == item.kind &&
                prev.line == item.line) {
                throw Error(ErrorCode::SchemaViolation,
                            "duplicate hint item for '" + item.symbol + "'");
            }
        }
        plan.items.push_back(std::move(item));
    }
    return plan;
}

inline nlohmann::ordered_json plan_to_json(const InsertionPlan& plan) {
    nlohmann::ordered_json hints = nlohmann::ordered_json::array();
    for (const auto& item : plan.items) {
        nlohmann::ordered_json cands = nlohmann::ordered_json::array();
        for (const auto& c : item.candidates) {
            cands.push_back({{"attr", c.attr}, {"reason", c.reason}});
        }
        hints.push_back({{"symbol", item.symbol},
                         {"kind", std::string(site_kind_name(item.kind))},
                         {"line", item.line},
                         {"col", item.col},
                         {"reason", item.reason},
                         {"candidates", cands}});
    }
    return {{"hints", hints}};
}

inline std::string serialize_plan(const InsertionPlan& plan) {
    return plan_to_json(plan).dump();
}

// --- validation ----------------------------------------------------------

struct ValidationIssue {
    size_t item_index = 0;
    std::string symbol;
    std::string reason; // "site-kind mismatch", "unknown hint", "site not found", ...
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    bool empty() const { return issues.empty(); }
};

struct ValidatedItem {
    PlanItem item;              // candidates filtered to the valid ones
    SourcePos site;
    std::vector<const HintEntry*> entries; // parallel to item.candidates
};

struct ValidatedPlan {
    std::vector<ValidatedItem> items;
    ValidationReport report; // issues for the items/candidates that were dropped
};

// Checks every item against the abstraction (site resolution) and the
// knowledge base (surface form and site kind). Items that fail are collected
// into the report; when at least one item survives — or the plan was empty to
// begin with — a ValidatedPlan is returned, otherwise the report alone.
inline std::variant<ValidatedPlan, ValidationReport> validate_plan(
    const InsertionPlan& plan, const StructuralAbstraction& abstraction,
    const KnowledgeBase& kb) {
    ValidatedPlan ok;
    ValidationReport& report = ok.report;

    for (size_t i = 0; i < plan.items.size(); i++) {
        const PlanItem& item = plan.items[i];
        SourcePos site;
        try {
            site = resolve_site(abstraction, item.symbol, item.kind, item.line, item.col);
        } catch (const Error& e) {
            report.issues.push_back(
                {i, item.symbol,
                 e.code() == ErrorCode::AmbiguousSite ? "ambiguous site" : "site not found",
                 e.what()});
            continue;
        }

        ValidatedItem vitem;
        vitem.item = item;
        vitem.item.candidates.clear();
        vitem.site = site;
        for (const auto& cand : item.candidates) {
            const HintEntry* entry = kb.find_by_attr(cand.attr);
            if (entry == nullptr) {
                report.issues.push_back({i, item.symbol, "unknown hint", cand.attr});
                continue;
            }
            if (!entry->applies_to(item.kind)) {
                report.issues.push_back({i, item.symbol, "site-kind mismatch",
                                         cand.attr + " is not applicable to " +
                                             std::string(site_kind_name(item.kind)) +
                                             " sites"});
                continue;
            }
            vitem.item.candidates.push_back(cand);
            vitem.entries.push_back(entry);
        }
        if (vitem.item.candidates.empty()) continue; // all candidates rejected
        ok.items.push_back(std::move(vitem));
    }

    if (ok.items.empty() && !plan.items.empty()) return report;
    return ok;
}

} // namespace hintforge
