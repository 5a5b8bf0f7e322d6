#pragma once

// The set of compiler hints the planner is allowed to draw from. Entries are
// ingested from a JSON documentation file; curation rules mark hints that can
// alter observable behavior as excluded. Excluded entries stay in the store
// for round-tripping but are invisible through every public accessor except
// raw_entries(), which exists for self-tests.

#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "hintforge/errors.hpp"
#include "hintforge/seed_docs.hpp"
#include "hintforge/source_model.hpp"

namespace hintforge {

enum class HintSafety { SemanticsPreserving, Excluded };

namespace detail {

// Collapses whitespace runs to one space and drops spaces around punctuation
// so surface forms compare robustly: `__attribute__(( hot ))` matches
// `__attribute__((hot))`.
inline std::string normalize_surface(std::string_view s) {
    std::string out;
    bool pending_space = false;
    auto tight = [](char c) {
        return c == '(' || c == ')' || c == ',' || c == ':' || c == '"';
    };
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space && !tight(c) && !out.empty() && !tight(out.back())) {
            out += ' ';
        }
        pending_space = false;
        out += c;
    }
    return out;
}

inline bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    }
    return true;
}

inline bool is_power_of_two(long v) { return v > 0 && (v & (v - 1)) == 0; }

// Lexes the text a placeholder may legally capture, starting at text[pos].
// Returns the capture length, or 0 when the text does not fit the
// placeholder's grammar.
inline size_t capture_placeholder(std::string_view name, std::string_view text,
                                  size_t pos) {
    auto digits = [&]() {
        size_t n = 0;
        while (pos + n < text.size() && std::isdigit(static_cast<unsigned char>(text[pos + n]))) n++;
        return n;
    };
    if (name == "n") {
        size_t n = digits();
        if (n == 0) return 0;
        long v = std::stol(std::string(text.substr(pos, n)));
        return (is_power_of_two(v) && v <= 4096) ? n : 0;
    }
    if (name == "N") {
        size_t n = digits();
        if (n == 0) return 0;
        long v = std::stol(std::string(text.substr(pos, n)));
        return (v >= 2 && v <= 64) ? n : 0;
    }
    if (name == "var") {
        size_t n = 0;
        while (pos + n < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos + n])) ||
                text[pos + n] == '_')) {
            n++;
        }
        return is_identifier(text.substr(pos, n)) ? n : 0;
    }
    if (name == "op") {
        for (std::string_view op : {"&&", "||", "min", "max", "+", "-", "*", "&", "|", "^"}) {
            if (text.substr(pos, op.size()) == op) return op.size();
        }
        return 0;
    }
    if (name == "args") {
        // one or more comma-separated quoted strings or small integers
        size_t n = 0;
        bool any = false;
        for (;;) {
            if (pos + n < text.size() && text[pos + n] == '"') {
                size_t close = text.find('"', pos + n + 1);
                if (close == std::string_view::npos || close == pos + n + 1) return 0;
                n = close - pos + 1;
            } else {
                size_t d = 0;
                while (pos + n + d < text.size() &&
                       std::isdigit(static_cast<unsigned char>(text[pos + n + d]))) {
                    d++;
                }
                if (d == 0 || d > 1) return 0; // optimization levels are 0..3
                n += d;
            }
            any = true;
            if (pos + n < text.size() && text[pos + n] == ',') {
                n++;
                continue;
            }
            break;
        }
        return any ? n : 0;
    }
    return 0;
}

// Matches a normalized surface template against normalized text starting at
// `start`. Returns the number of characters consumed, or npos on mismatch.
inline size_t match_surface_at(std::string_view templ, std::string_view text,
                               size_t start) {
    size_t t = 0, p = start;
    while (t < templ.size()) {
        if (templ[t] == '<') {
            size_t close = templ.find('>', t);
            if (close == std::string_view::npos) return std::string_view::npos;
            std::string_view name = templ.substr(t + 1, close - t - 1);
            size_t cap = capture_placeholder(name, text, p);
            if (cap == 0) return std::string_view::npos;
            p += cap;
            t = close + 1;
        } else {
            if (p >= text.size() || text[p] != templ[t]) return std::string_view::npos;
            p++;
            t++;
        }
    }
    return p - start;
}

inline std::string fnv1a_hex(std::string_view data) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace detail

struct HintEntry {
    std::string hint_id;
    std::string surface_form; // may contain <n> <N> <args> <op> <var> placeholders
    std::vector<SiteKind> site_kinds;
    std::string category;
    std::string description;
    std::string applicability;
    std::string example_annotated;
    std::string example_plain;
    HintSafety safety = HintSafety::SemanticsPreserving;
    int priority = 1000; // lower sorts first for empty retrieval queries

    bool operator==(const HintEntry&) const = default;

    bool applies_to(SiteKind kind) const {
        for (auto k : site_kinds) {
            if (k == kind) return true;
        }
        return false;
    }

    // True when `attr` is this entry's surface form after parameter
    // substitution, e.g. `__attribute__((aligned(64)))` for
    // `__attribute__((aligned(<n>)))`.
    bool matches_attr(std::string_view attr) const {
        std::string templ = detail::normalize_surface(surface_form);
        std::string text = detail::normalize_surface(attr);
        size_t consumed = detail::match_surface_at(templ, text, 0);
        return consumed != std::string_view::npos && consumed == text.size();
    }

    // True when `text` contains an instantiation of the surface form.
    bool example_contains_surface() const {
        std::string templ = detail::normalize_surface(surface_form);
        std::string text = detail::normalize_surface(example_annotated);
        if (templ.empty()) return false;
        for (size_t i = 0; i + 1 <= text.size(); i++) {
            if (detail::match_surface_at(templ, text, i) != std::string_view::npos) {
                return true;
            }
        }
        return false;
    }
};

struct CurationRules {
    // hint name -> why it is excluded from the retrievable set
    std::map<std::string, std::string> excluded;
};

inline const CurationRules& default_curation_rules() {
    static const CurationRules rules{{
        {"packed", "alters structure layout observable through sizeof"},
        {"section", "moves symbols between linker sections; placement is observable"},
        {"naked", "removes prologue/epilogue; break normal execution"},
        {"interrupt", "changes entry/exit sequences"},
        {"constructor", "runs code before main"},
        {"destructor", "runs code after main"},
        {"cdecl", "changes the calling convention ABI"},
        {"stdcall", "changes the calling convention ABI"},
        {"warn_unused_result", "diagnostic-only; no optimization effect"},
    }};
    return rules;
}

namespace detail {

inline SiteKind parse_site_kind(const std::string& s) {
    auto k = site_kind_from_name(s);
    if (!k) throw Error(ErrorCode::MalformedDoc, "unknown site kind '" + s + "'");
    return *k;
}

inline std::string derive_hint_id(const std::string& name, std::string_view surface) {
    if (surface.rfind("#pragma omp", 0) == 0) return "omp." + name;
    if (surface.rfind("#pragma", 0) == 0) return "gcc.pragma." + name;
    return "gcc.attr." + name;
}

inline void validate_entry_shape(const HintEntry& e) {
    if (e.hint_id.empty() || e.surface_form.empty() || e.site_kinds.empty()) {
        throw Error(ErrorCode::MalformedDoc, "entry '" + e.hint_id + "' is incomplete");
    }
    for (auto kind : e.site_kinds) {
        bool pragma = e.surface_form.rfind("#pragma", 0) == 0;
        bool attr = e.surface_form.rfind("__attribute__((", 0) == 0;
        if (kind == SiteKind::Statement ? !pragma : !attr) {
            throw Error(ErrorCode::MalformedDoc,
                        "surface form of '" + e.hint_id + "' is not valid for site kind " +
                            std::string(site_kind_name(kind)));
        }
    }
    if (e.safety == HintSafety::SemanticsPreserving && !e.example_contains_surface()) {
        throw Error(ErrorCode::MalformedDoc,
                    "annotated example of '" + e.hint_id +
                        "' does not contain its surface form");
    }
}

} // namespace detail

inline std::vector<HintEntry> ingest_doc(const std::string& doc_text,
                                         const CurationRules& rules) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(doc_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::MalformedDoc, std::string("doc is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("hints") || !doc["hints"].is_array()) {
        throw Error(ErrorCode::MalformedDoc, "doc must be an object with a 'hints' array");
    }

    std::vector<HintEntry> out;
    for (const auto& h : doc["hints"]) {
        for (const char* field : {"name", "surface_form", "site_kinds", "category",
                                  "description", "applicability", "example_annotated",
                                  "example_plain"}) {
            if (!h.contains(field)) {
                throw Error(ErrorCode::MalformedDoc,
                            std::string("hint is missing required field '") + field + "'");
            }
        }
        HintEntry e;
        std::string name = h.at("name").get<std::string>();
        e.surface_form = h.at("surface_form").get<std::string>();
        e.hint_id = detail::derive_hint_id(name, e.surface_form);
        for (const auto& k : h.at("site_kinds")) {
            e.site_kinds.push_back(detail::parse_site_kind(k.get<std::string>()));
        }
        e.category = h.at("category").get<std::string>();
        e.description = h.at("description").get<std::string>();
        e.applicability = h.at("applicability").get<std::string>();
        e.example_annotated = h.at("example_annotated").get<std::string>();
        e.example_plain = h.at("example_plain").get<std::string>();
        e.priority = h.value("priority", 1000);
        e.safety = rules.excluded.count(name) ? HintSafety::Excluded
                                              : HintSafety::SemanticsPreserving;
        detail::validate_entry_shape(e);
        out.push_back(std::move(e));
    }
    return out;
}

class KnowledgeBase {
public:
    KnowledgeBase() = default;
    KnowledgeBase(std::string version, std::string source_doc_hash,
                  std::vector<HintEntry> entries)
        : version_(std::move(version)),
          source_doc_hash_(std::move(source_doc_hash)),
          entries_(std::move(entries)) {
        validate();
    }

    const std::string& version() const { return version_; }
    const std::string& source_doc_hash() const { return source_doc_hash_; }

    // Only semantics-preserving entries are visible outside this module.
    std::vector<const HintEntry*> retrievable() const {
        std::vector<const HintEntry*> out;
        for (const auto& e : entries_) {
            if (e.safety == HintSafety::SemanticsPreserving) out.push_back(&e);
        }
        return out;
    }

    const HintEntry& lookup(std::string_view hint_id) const {
        for (const auto& e : entries_) {
            if (e.hint_id == hint_id && e.safety == HintSafety::SemanticsPreserving) {
                return e;
            }
        }
        throw Error(ErrorCode::UnknownHint, "no hint '" + std::string(hint_id) + "'");
    }

    // Finds the retrievable entry whose surface form matches `attr` and whose
    // site kinds admit `kind`; null when the attribute is unknown.
    const HintEntry* find_by_attr(std::string_view attr) const {
        for (const auto& e : entries_) {
            if (e.safety == HintSafety::SemanticsPreserving && e.matches_attr(attr)) {
                return &e;
            }
        }
        return nullptr;
    }

    size_t size() const { return entries_.size(); }

    // Includes excluded entries; for serialization and self-tests only.
    const std::vector<HintEntry>& raw_entries() const { return entries_; }

    bool operator==(const KnowledgeBase&) const = default;

private:
    void validate() const {
        for (size_t i = 0; i < entries_.size(); i++) {
            for (size_t j = i + 1; j < entries_.size(); j++) {
                if (entries_[i].hint_id == entries_[j].hint_id) {
                    throw Error(ErrorCode::SchemaVersionMismatch,
                                "duplicate hint_id '" + entries_[i].hint_id + "'");
                }
            }
            detail::validate_entry_shape(entries_[i]);
        }
    }

    std::string version_ = "1";
    std::string source_doc_hash_;
    std::vector<HintEntry> entries_;
};

inline std::string_view safety_name(HintSafety s) {
    return s == HintSafety::SemanticsPreserving ? "semantics-preserving" : "excluded";
}

inline nlohmann::json kb_to_json(const KnowledgeBase& kb) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : kb.raw_entries()) {
        nlohmann::json kinds = nlohmann::json::array();
        for (auto k : e.site_kinds) kinds.push_back(std::string(site_kind_name(k)));
        entries.push_back({{"hint_id", e.hint_id},
                           {"surface_form", e.surface_form},
                           {"site_kinds", kinds},
                           {"category", e.category},
                           {"description", e.description},
                           {"applicability", e.applicability},
                           {"example_annotated", e.example_annotated},
                           {"example_plain", e.example_plain},
                           {"safety", std::string(safety_name(e.safety))},
                           {"priority", e.priority}});
    }
    return {{"version", kb.version()},
            {"source_doc_hash", kb.source_doc_hash()},
            {"entries", entries}};
}

inline KnowledgeBase kb_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("version") || !j.contains("entries")) {
        throw Error(ErrorCode::SchemaVersionMismatch, "KB file missing version/entries");
    }
    std::string version = j.at("version").get<std::string>();
    if (version != "1") {
        throw Error(ErrorCode::SchemaVersionMismatch,
                    "unsupported KB version '" + version + "'");
    }
    std::vector<HintEntry> entries;
    for (const auto& je : j.at("entries")) {
        HintEntry e;
        e.hint_id = je.at("hint_id").get<std::string>();
        e.surface_form = je.at("surface_form").get<std::string>();
        for (const auto& k : je.at("site_kinds")) {
            e.site_kinds.push_back(detail::parse_site_kind(k.get<std::string>()));
        }
        e.category = je.at("category").get<std::string>();
        e.description = je.at("description").get<std::string>();
        e.applicability = je.at("applicability").get<std::string>();
        e.example_annotated = je.at("example_annotated").get<std::string>();
        e.example_plain = je.at("example_plain").get<std::string>();
        std::string safety = je.at("safety").get<std::string>();
        if (safety == "semantics-preserving") e.safety = HintSafety::SemanticsPreserving;
        else if (safety == "excluded") e.safety = HintSafety::Excluded;
        else throw Error(ErrorCode::SchemaVersionMismatch, "bad safety '" + safety + "'");
        e.priority = je.value("priority", 1000);
        entries.push_back(std::move(e));
    }
    return KnowledgeBase(version, j.value("source_doc_hash", std::string()),
                         std::move(entries));
}

inline KnowledgeBase load_kb(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read KB file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(ss.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::SchemaVersionMismatch,
                    std::string("KB file is not valid JSON: ") + e.what());
    }
    return kb_from_json(j);
}

inline void save_kb(const KnowledgeBase& kb, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write KB file " + path);
    out << kb_to_json(kb).dump(2) << "\n";
    if (!out) throw Error(ErrorCode::IoError, "failed writing KB file " + path);
}

// The built-in knowledge base: seed docs run through default curation.
inline const KnowledgeBase& seed_kb() {
    static const KnowledgeBase kb = [] {
        std::string doc = seed_hint_docs_json();
        return KnowledgeBase("1", detail::fnv1a_hex(doc),
                             ingest_doc(doc, default_curation_rules()));
    }();
    return kb;
}

} // namespace hintforge
