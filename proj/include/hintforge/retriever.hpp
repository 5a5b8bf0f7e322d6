#pragma once

// Lexical retrieval over the knowledge base: a structural query is built from
// the abstraction, and entries are ranked with BM25 over their description,
// applicability, and category text. Deterministic by construction; an
// embedding backend could sit behind the same interface.

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "hintforge/knowledge_base.hpp"
#include "hintforge/source_model.hpp"

namespace hintforge {

struct RetrievalQuery {
    std::vector<std::string> terms;
};

struct RetrievedDoc {
    const HintEntry* entry = nullptr;
    double score = 0.0;
};

inline constexpr double kBm25K1 = 1.2;
inline constexpr double kBm25B = 0.75;

namespace detail {

inline std::vector<std::string> tokenize_lower(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        } else if (!cur.empty()) {
            out.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

// Splits an identifier into lowercase words on underscores and camelCase.
inline std::vector<std::string> identifier_words(std::string_view name) {
    std::vector<std::string> words;
    std::string cur;
    auto flush = [&]() {
        if (!cur.empty()) {
            words.push_back(cur);
            cur.clear();
        }
    };
    for (size_t i = 0; i < name.size(); i++) {
        char c = name[i];
        if (c == '_' || c == ':') {
            flush();
            continue;
        }
        if (std::isupper(static_cast<unsigned char>(c)) && !cur.empty() &&
            std::islower(static_cast<unsigned char>(cur.back()))) {
            flush();
        }
        if (std::isalnum(static_cast<unsigned char>(c))) {
            cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
    }
    flush();
    return words;
}

inline std::string entry_scoring_text(const HintEntry& e) {
    return e.description + " " + e.applicability + " " + e.category;
}

} // namespace detail

inline RetrievalQuery build_query(const StructuralAbstraction& abs) {
    RetrievalQuery q;
    auto add_once = [&](const std::string& term, std::vector<std::string>& seen) {
        if (std::find(seen.begin(), seen.end(), term) == seen.end()) {
            seen.push_back(term);
            q.terms.push_back(term);
        }
    };

    std::vector<std::string> kind_seen;
    if (!abs.functions.empty()) add_once("function", kind_seen);
    if (!abs.variables.empty()) add_once("global", kind_seen);
    for (const auto& s : abs.statements) {
        add_once(std::string(loop_kind_name(s.kind)), kind_seen);
    }
    for (const auto& s : abs.statements) {
        if (s.nesting_depth >= 2) {
            add_once("nested-loop", kind_seen);
            break;
        }
    }
    for (const auto& v : abs.variables) {
        if (v.is_array) {
            add_once("global-array", kind_seen);
            break;
        }
    }

    std::vector<std::string> type_seen;
    auto add_type_words = [&](const std::string& type) {
        for (auto& w : detail::tokenize_lower(type)) {
            if (w == "std") continue;
            add_once(w, type_seen);
        }
    };
    for (const auto& f : abs.functions) add_type_words(f.return_type);
    for (const auto& v : abs.variables) add_type_words(v.type);

    std::vector<std::string> name_seen;
    for (const auto& f : abs.functions) {
        for (auto& w : detail::identifier_words(f.name)) add_once(w, name_seen);
    }
    return q;
}

// BM25 score of one entry for the query, over the retrievable corpus.
// Exposed so an independent checker can reproduce it term by term.
inline double bm25_score(const RetrievalQuery& query, const HintEntry& entry,
                         const std::vector<const HintEntry*>& corpus) {
    size_t n_docs = corpus.size();
    if (n_docs == 0) return 0.0;

    double total_len = 0.0;
    for (const auto* d : corpus) {
        total_len += static_cast<double>(detail::tokenize_lower(detail::entry_scoring_text(*d)).size());
    }
    double avg_len = total_len / static_cast<double>(n_docs);

    auto doc_tokens = detail::tokenize_lower(detail::entry_scoring_text(entry));
    double doc_len = static_cast<double>(doc_tokens.size());

    double score = 0.0;
    for (const auto& raw_term : query.terms) {
        for (const auto& term : detail::tokenize_lower(raw_term)) {
            size_t df = 0;
            for (const auto* d : corpus) {
                auto toks = detail::tokenize_lower(detail::entry_scoring_text(*d));
                if (std::find(toks.begin(), toks.end(), term) != toks.end()) df++;
            }
            double tf = static_cast<double>(
                std::count(doc_tokens.begin(), doc_tokens.end(), term));
            if (tf == 0.0) continue;
            double idf = std::log(1.0 + (static_cast<double>(n_docs) -
                                         static_cast<double>(df) + 0.5) /
                                            (static_cast<double>(df) + 0.5));
            double norm = tf * (kBm25K1 + 1.0) /
                          (tf + kBm25K1 * (1.0 - kBm25B + kBm25B * doc_len / avg_len));
            score += idf * norm;
        }
    }
    return score;
}

inline std::vector<RetrievedDoc> retrieve(const KnowledgeBase& kb,
                                          const RetrievalQuery& query, int k = 4) {
    if (k < 1) k = 1;
    auto corpus = kb.retrievable();
    std::vector<RetrievedDoc> docs;
    docs.reserve(corpus.size());

    if (query.terms.empty()) {
        // static priority order shipped in the KB
        for (const auto* e : corpus) docs.push_back({e, 0.0});
        std::sort(docs.begin(), docs.end(), [](const RetrievedDoc& a, const RetrievedDoc& b) {
            if (a.entry->priority != b.entry->priority) {
                return a.entry->priority < b.entry->priority;
            }
            return a.entry->hint_id < b.entry->hint_id;
        });
    } else {
        for (const auto* e : corpus) docs.push_back({e, bm25_score(query, *e, corpus)});
        std::sort(docs.begin(), docs.end(), [](const RetrievedDoc& a, const RetrievedDoc& b) {
            if (a.score != b.score) return a.score > b.score;
            return a.entry->hint_id < b.entry->hint_id;
        });
    }
    if (docs.size() > static_cast<size_t>(k)) docs.resize(static_cast<size_t>(k));
    return docs;
}

} // namespace hintforge
