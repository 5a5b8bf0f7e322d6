#pragma once

// Deterministic hint insertion. Function and global attributes are merged
// into a single __attribute__((a, b)) list placed before the declaration
// (ahead of any attributes already there); pragmas get their own line
// directly above the loop with matching indentation. Every inserted byte
// range is recorded so the original text can be reconstructed exactly.

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "hintforge/errors.hpp"
#include "hintforge/plan_model.hpp"
#include "hintforge/source_model.hpp"

namespace hintforge {

struct InsertedRange {
    PlanItem item;
    size_t offset = 0; // byte offset in the applied text
    size_t length = 0;
};

struct AppliedVariant {
    std::string source_text;
    ValidatedPlan plan;
    std::vector<InsertedRange> provenance;
    std::vector<std::string> notes; // skipped duplicates/conflicts
};

namespace detail {

// `__attribute__((hot))` -> `hot`; empty when the shape is unexpected.
inline std::string attribute_inner(std::string_view attr) {
    std::string norm = normalize_surface(attr);
    constexpr std::string_view prefix = "__attribute__((";
    constexpr std::string_view suffix = "))";
    if (norm.rfind(prefix, 0) != 0 || norm.size() < prefix.size() + suffix.size() ||
        norm.compare(norm.size() - suffix.size(), suffix.size(), suffix) != 0) {
        return "";
    }
    return norm.substr(prefix.size(), norm.size() - prefix.size() - suffix.size());
}

inline std::string attribute_name(std::string_view attr) {
    std::string inner = attribute_inner(attr);
    size_t n = 0;
    while (n < inner.size() &&
           (std::isalnum(static_cast<unsigned char>(inner[n])) || inner[n] == '_')) {
        n++;
    }
    return inner.substr(0, n);
}

// single-occurrence attribute groups that must not be combined at one site
inline const std::vector<std::vector<std::string>>& conflict_groups() {
    static const std::vector<std::vector<std::string>> groups = {
        {"noinline", "always_inline"},
        {"hot", "cold"},
        {"pure", "const"},
    };
    return groups;
}

inline bool conflicts_with(const std::string& a, const std::string& b) {
    for (const auto& group : conflict_groups()) {
        bool has_a = std::find(group.begin(), group.end(), a) != group.end();
        bool has_b = std::find(group.begin(), group.end(), b) != group.end();
        if (has_a && has_b && a != b) return true;
    }
    return false;
}

// Names of attributes already written at the site, e.g. in
// `__attribute__((cold)) int f(void)`.
inline std::vector<std::string> existing_attribute_names(std::string_view text,
                                                         size_t offset) {
    std::vector<std::string> names;
    size_t i = offset;
    for (;;) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) i++;
        constexpr std::string_view kw = "__attribute__";
        if (text.compare(i, kw.size(), kw) != 0) break;
        i += kw.size();
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) i++;
        if (i >= text.size() || text[i] != '(') break;
        int depth = 0;
        size_t start = i;
        while (i < text.size()) {
            if (text[i] == '(') depth++;
            else if (text[i] == ')' && --depth == 0) { i++; break; }
            i++;
        }
        std::string group(text.substr(start, i - start));
        std::string cur;
        int depth2 = 0;
        auto flush = [&]() {
            if (!cur.empty() && depth2 <= 2 &&
                !std::isdigit(static_cast<unsigned char>(cur[0]))) {
                names.push_back(cur);
            }
            cur.clear();
        };
        for (char c : group) {
            if (c == '(') { flush(); depth2++; continue; }
            if (c == ')') { flush(); depth2--; continue; }
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
                cur += c;
                continue;
            }
            flush();
        }
        flush();
    }
    return names;
}

struct PendingInsertion {
    size_t original_offset = 0;
    std::string text;
    size_t plan_order = 0;
    const ValidatedItem* source = nullptr;
};

} // namespace detail

inline AppliedVariant apply_plan(const std::string& source_text,
                                 const ValidatedPlan& plan,
                                 const StructuralAbstraction& abstraction) {
    detail::LineIndex index(source_text);
    for (const auto& vi : plan.items) {
        if (!index.consistent(vi.site)) {
            throw Error(ErrorCode::PositionMismatch,
                        "validated plan does not match this source text (line " +
                            std::to_string(vi.site.line) + ")");
        }
    }
    (void)abstraction;

    AppliedVariant out;
    out.plan = plan;

    // group declaration-attribute items by site offset, preserving plan order
    struct AttrSite {
        size_t offset;
        std::vector<std::pair<size_t, const ValidatedItem*>> items; // (plan order, item)
    };
    std::vector<AttrSite> attr_sites;
    std::vector<detail::PendingInsertion> pragma_insertions;

    for (size_t order = 0; order < plan.items.size(); order++) {
        const ValidatedItem& vi = plan.items[order];
        if (vi.item.kind == SiteKind::Statement) {
            size_t line_start = index.line_start(vi.site.line);
            std::string indent;
            for (size_t i = line_start;
                 i < source_text.size() &&
                 (source_text[i] == ' ' || source_text[i] == '\t');
                 i++) {
                indent += source_text[i];
            }
            detail::PendingInsertion ins;
            ins.original_offset = line_start;
            ins.text = indent + vi.item.candidates.front().attr + "\n";
            ins.plan_order = order;
            ins.source = &vi;
            pragma_insertions.push_back(std::move(ins));
            continue;
        }
        auto it = std::find_if(attr_sites.begin(), attr_sites.end(), [&](const AttrSite& s) {
            return s.offset == vi.site.byte_offset;
        });
        if (it == attr_sites.end()) {
            attr_sites.push_back({vi.site.byte_offset, {}});
            it = attr_sites.end() - 1;
        }
        it->items.push_back({order, &vi});
    }

    std::vector<detail::PendingInsertion> insertions = pragma_insertions;

    for (auto& site : attr_sites) {
        auto present = detail::existing_attribute_names(source_text, site.offset);
        std::vector<std::string> inners;
        std::vector<std::string> accepted_names;
        const ValidatedItem* first_item = nullptr;
        size_t first_order = 0;

        for (auto& [order, vi] : site.items) {
            const std::string& attr = vi->item.candidates.front().attr;
            std::string inner = detail::attribute_inner(attr);
            std::string name = detail::attribute_name(attr);
            if (inner.empty()) {
                out.notes.push_back("skipped malformed attribute '" + attr + "'");
                continue;
            }
            if (std::find(present.begin(), present.end(), name) != present.end()) {
                out.notes.push_back("duplicate of existing attribute '" + name +
                                    "' at line " + std::to_string(vi->site.line) +
                                    " skipped");
                continue;
            }
            bool conflict = false;
            for (const auto& prev : accepted_names) {
                if (detail::conflicts_with(prev, name)) {
                    out.notes.push_back("conflict: '" + name + "' rejected against '" +
                                        prev + "' at line " +
                                        std::to_string(vi->site.line));
                    conflict = true;
                    break;
                }
            }
            if (conflict) continue;
            if (std::find(accepted_names.begin(), accepted_names.end(), name) !=
                accepted_names.end()) {
                out.notes.push_back("duplicate attribute '" + name + "' within plan skipped");
                continue;
            }
            if (first_item == nullptr) {
                first_item = vi;
                first_order = order;
            }
            inners.push_back(inner);
            accepted_names.push_back(name);
        }
        if (inners.empty()) continue;

        std::string merged = "__attribute__((";
        for (size_t i = 0; i < inners.size(); i++) {
            if (i) merged += ", ";
            merged += inners[i];
        }
        merged += ")) ";

        detail::PendingInsertion ins;
        ins.original_offset = site.offset;
        ins.text = std::move(merged);
        ins.plan_order = first_order;
        ins.source = first_item;
        insertions.push_back(std::move(ins));
    }

    // stable order: ascending offset, then plan order (stacked pragmas)
    std::sort(insertions.begin(), insertions.end(),
              [](const detail::PendingInsertion& a, const detail::PendingInsertion& b) {
                  if (a.original_offset != b.original_offset) {
                      return a.original_offset < b.original_offset;
                  }
                  return a.plan_order < b.plan_order;
              });

    // apply in descending offset so earlier offsets stay valid
    out.source_text = source_text;
    for (auto it = insertions.rbegin(); it != insertions.rend(); ++it) {
        out.source_text.insert(it->original_offset, it->text);
    }

    // provenance in terms of the applied text
    size_t shift = 0;
    for (const auto& ins : insertions) {
        InsertedRange r;
        r.item = ins.source->item;
        r.offset = ins.original_offset + shift;
        r.length = ins.text.size();
        out.provenance.push_back(r);
        shift += ins.text.size();
    }
    return out;
}

inline std::string strip_hints(const AppliedVariant& variant) {
    std::string text = variant.source_text;
    for (auto it = variant.provenance.rbegin(); it != variant.provenance.rend(); ++it) {
        if (it->offset + it->length > text.size()) {
            throw Error(ErrorCode::CorruptProvenance,
                        "inserted range exceeds variant text");
        }
        text.erase(it->offset, it->length);
    }
    return text;
}

} // namespace hintforge
