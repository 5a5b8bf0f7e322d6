#pragma once

// Structural view of a C/C++ translation unit: function definitions,
// file-scope variables, and loop statements, each with an insertion point
// where an attribute or pragma can legally be placed. The scanner is
// lexer-driven and deliberately shallow; constructs it cannot classify are
// skipped so no wrong site is ever produced.

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hintforge/errors.hpp"
#include "hintforge/lexer.hpp"

namespace hintforge {

struct SourcePos {
    int line = 1;        // 1-based
    int col = 1;         // 1-based
    size_t byte_offset = 0;

    bool operator==(const SourcePos&) const = default;
};

enum class VarScope { Global, FileStatic };

struct FunctionInfo {
    std::string name;        // qualified as written, e.g. "Grid::step"
    std::string return_type;
    SourcePos def_pos;       // first token of the attribute-legal insertion point
    std::pair<SourcePos, SourcePos> body_span;
    bool is_definition = false;
    bool is_template = false;
};

struct VariableInfo {
    std::string name;
    std::string type;
    SourcePos decl_pos;
    VarScope scope = VarScope::Global;
    bool is_array = false;
};

enum class LoopKind { For, While, Do, Other };

struct StatementInfo {
    LoopKind kind = LoopKind::Other;
    SourcePos pos;                          // loop keyword
    std::vector<std::string> referenced_vars;
    int nesting_depth = 1;                  // 1 = outermost loop in its function
};

struct StructuralAbstraction {
    std::string file_id;
    std::vector<FunctionInfo> functions;
    std::vector<VariableInfo> variables;
    std::vector<StatementInfo> statements;

    bool empty() const {
        return functions.empty() && variables.empty() && statements.empty();
    }
};

inline std::string_view loop_kind_name(LoopKind k) {
    switch (k) {
        case LoopKind::For:   return "for-loop";
        case LoopKind::While: return "while-loop";
        case LoopKind::Do:    return "do-loop";
        case LoopKind::Other: return "other";
    }
    return "other";
}

enum class SiteKind { Function, Global, Statement };

inline std::string_view site_kind_name(SiteKind k) {
    switch (k) {
        case SiteKind::Function:  return "function";
        case SiteKind::Global:    return "global";
        case SiteKind::Statement: return "statement";
    }
    return "?";
}

inline std::optional<SiteKind> site_kind_from_name(std::string_view s) {
    if (s == "function") return SiteKind::Function;
    if (s == "global") return SiteKind::Global;
    if (s == "statement") return SiteKind::Statement;
    return std::nullopt;
}

namespace detail {

class Scanner {
public:
    Scanner(std::string_view text, std::vector<Token> tokens, StructuralAbstraction& out)
        : text_(text), toks_(std::move(tokens)), out_(out) {}

    void run() {
        scan_scope(/*record=*/false, /*record_name=*/"");
        if (!at_end()) {
            throw Error(ErrorCode::ParseUnsupported,
                        "unbalanced braces near line " + std::to_string(cur().line));
        }
    }

private:
    // --- cursor helpers -----------------------------------------------------

    const Token& cur() const { return toks_[i_]; }
    const Token& peek(size_t n = 1) const {
        size_t j = i_ + n;
        return j < toks_.size() ? toks_[j] : toks_.back();
    }
    bool at_end() const { return cur().kind == TokKind::End; }
    void next() { if (i_ + 1 < toks_.size()) i_++; }

    static SourcePos pos_of(const Token& t) {
        return SourcePos{t.line, t.col, t.offset};
    }

    void skip_balanced(char open, char close) {
        int depth = 0;
        while (!at_end()) {
            if (cur().kind == TokKind::Punct && cur().text.size() == 1) {
                if (cur().text[0] == open) depth++;
                else if (cur().text[0] == close) {
                    depth--;
                    if (depth == 0) { next(); return; }
                }
            }
            next();
        }
        throw Error(ErrorCode::ParseUnsupported, std::string("unbalanced '") + open + "'");
    }

    // Attempts to skip template argument brackets starting at '<'. Returns
    // false (cursor unchanged) when the brackets do not close before a
    // declaration boundary, i.e. '<' was a comparison.
    bool try_skip_angles() {
        size_t guard = i_;
        int depth = 0;
        while (!at_end()) {
            if (cur().is("<")) depth++;
            else if (cur().is(">")) {
                depth--;
                if (depth == 0) { next(); return true; }
            } else if (cur().is(";") || cur().is("{") || cur().is("}")) {
                break;
            }
            next();
        }
        i_ = guard;
        return false;
    }

    void skip_to_semicolon() {
        while (!at_end()) {
            if (cur().is(";")) { next(); return; }
            if (cur().is("(")) { skip_balanced('(', ')'); continue; }
            if (cur().is("[")) { skip_balanced('[', ']'); continue; }
            if (cur().is("{")) { skip_balanced('{', '}'); continue; }
            if (cur().is("}")) return;
            next();
        }
    }

    void skip_existing_attributes() {
        while (cur().is("__attribute__")) {
            next();
            if (cur().is("(")) skip_balanced('(', ')');
        }
    }

    // --- scope scanning -----------------------------------------------------

    void scan_scope(bool record, const std::string& record_name) {
        while (!at_end()) {
            const Token& t = cur();
            if (t.is("}")) return;
            if (t.is(";")) { next(); continue; }
            if (t.kind == TokKind::Punct && !t.is("~")) { next(); continue; }

            if (t.is("namespace")) {
                next();
                while (!at_end() && !cur().is("{") && !cur().is(";")) next();
                if (cur().is("{")) {
                    next();
                    scan_scope(false, "");
                    if (cur().is("}")) next();
                } else if (cur().is(";")) {
                    next();
                }
                continue;
            }
            if (t.is("using") || t.is("typedef") || t.is("static_assert") ||
                t.is("friend")) {
                skip_to_semicolon();
                continue;
            }
            if (t.is("public") || t.is("private") || t.is("protected")) {
                next();
                if (cur().is(":")) next();
                continue;
            }
            scan_declaration(record, record_name);
        }
    }

    void scan_declaration(bool record, const std::string& record_name) {
        bool is_template = false;
        SourcePos anchor = pos_of(cur());

        if (cur().is("template")) {
            is_template = true;
            next();
            if (cur().is("<") && !try_skip_angles()) {
                skip_to_semicolon();
                return;
            }
            anchor = pos_of(cur()); // attributes go after the template intro
        }
        if (cur().is("extern")) {
            // the lexer drops the "C" literal, so an extern block shows up as
            // extern followed directly by '{'
            next();
            if (cur().is("{")) {
                next();
                scan_scope(false, "");
                if (cur().is("}")) next();
                return;
            }
            anchor = pos_of(cur());
        }

        if (cur().is("struct") || cur().is("class") || cur().is("union") ||
            cur().is("enum")) {
            // only when this is a type *definition* or elaborated declaration;
            // `struct X f();` style returns are rare enough to skip
            scan_record_or_enum(anchor, record);
            return;
        }

        size_t head_start = i_;
        std::string qual_name;
        size_t name_tok = SIZE_MAX;

        while (!at_end()) {
            const Token& t = cur();
            if (t.is(";") || t.is("}")) break;
            if (t.is("operator")) { // operator overloads are not sites
                skip_function_tail();
                return;
            }
            if (t.is("__attribute__")) { skip_existing_attributes(); continue; }
            if (t.kind == TokKind::Identifier && !is_keyword(t.text)) {
                if (!qual_name.empty() && i_ > 0 && toks_[i_ - 1].is("::")) {
                    qual_name += "::";
                    qual_name += t.text;
                } else {
                    qual_name = std::string(t.text);
                }
                name_tok = i_;
                next();
                if (cur().is("<") && !try_skip_angles()) break;
                continue;
            }
            if (t.is("~") && peek().kind == TokKind::Identifier) {
                qual_name = "~" + std::string(peek().text);
                name_tok = i_ + 1;
                next();
                next();
                continue;
            }
            if (t.is("(")) {
                if (name_tok != SIZE_MAX && name_tok + 1 == i_) {
                    emit_function(head_start, name_tok, qual_name, anchor, is_template,
                                  record, record_name);
                    return;
                }
                break; // function pointer or parenthesized declarator
            }
            if (t.is("=") || t.is(",") || t.is("[") || t.is("{") || t.is("<")) break;
            next();
        }

        scan_variable_declaration(head_start, anchor, record);
    }

    // cursor is at '(' immediately following the declarator name.
    void emit_function(size_t head_start, size_t name_tok, const std::string& name,
                       SourcePos anchor, bool is_template, bool record,
                       const std::string& record_name) {
        skip_balanced('(', ')');
        // trailing parts: const, noexcept(...), override, -> type
        while (!at_end() && !cur().is("{") && !cur().is(";") && !cur().is("=") &&
               !cur().is(":") && !cur().is("}")) {
            if (cur().is("(")) { skip_balanced('(', ')'); continue; }
            if (cur().is("[")) { skip_balanced('[', ']'); continue; }
            next();
        }

        FunctionInfo fn;
        fn.name = record && !record_name.empty() ? record_name + "::" + name : name;
        fn.return_type = head_text(head_start, name_tok);
        fn.def_pos = anchor;
        fn.is_template = is_template;
        fn.body_span = {anchor, anchor};

        if (cur().is(":")) skip_ctor_initializers();

        if (cur().is("{")) {
            fn.is_definition = true;
            fn.body_span.first = pos_of(cur());
            size_t body_start = i_;
            skip_balanced('{', '}');
            fn.body_span.second = pos_of(toks_[i_ - 1]);
            out_.functions.push_back(std::move(fn));
            scan_loops_in_range(body_start, i_);
            return;
        }
        if (cur().is("=")) skip_to_semicolon(); // = default / = delete / = 0
        else if (cur().is(";")) next();
        out_.functions.push_back(std::move(fn));
    }

    void skip_ctor_initializers() {
        next(); // ':'
        for (;;) {
            while (!at_end() &&
                   (cur().kind == TokKind::Identifier || cur().is("::"))) {
                next();
                if (cur().is("<")) try_skip_angles();
            }
            if (cur().is("(")) skip_balanced('(', ')');
            else if (cur().is("{")) {
                // brace-init of a member only if another initializer or the
                // body follows; a body brace is handled by the caller
                size_t guard = i_;
                skip_balanced('{', '}');
                if (!cur().is(",") && !cur().is("{")) { i_ = guard; return; }
            }
            if (cur().is(",")) { next(); continue; }
            return;
        }
    }

    void skip_function_tail() {
        while (!at_end() && !cur().is("{") && !cur().is(";")) {
            if (cur().is("(")) { skip_balanced('(', ')'); continue; }
            next();
        }
        if (cur().is("{")) skip_balanced('{', '}');
        else if (cur().is(";")) next();
    }

    void scan_record_or_enum(SourcePos anchor, bool outer_record) {
        bool is_enum = cur().is("enum");
        next();
        if (cur().is("class") || cur().is("struct")) next();
        std::string tag;
        if (cur().kind == TokKind::Identifier && !is_keyword(cur().text)) {
            tag = std::string(cur().text);
            next();
        }
        if (cur().is(":")) {
            while (!at_end() && !cur().is("{") && !cur().is(";")) next();
        }
        if (cur().is(";")) { next(); return; }
        if (cur().is("{")) {
            if (is_enum) {
                skip_balanced('{', '}');
            } else {
                next();
                scan_scope(true, tag);
                if (cur().is("}")) next();
            }
        }
        if (!outer_record && cur().kind == TokKind::Identifier &&
            !is_keyword(cur().text)) {
            std::string type = (is_enum ? "enum " : "struct ") + tag;
            emit_variables_from_declarators(i_, anchor, type, /*is_static=*/false);
            return;
        }
        skip_to_semicolon();
    }

    void scan_variable_declaration(size_t head_start, SourcePos anchor, bool record) {
        if (record) { // class members are not global sites
            skip_to_semicolon();
            return;
        }
        i_ = head_start;
        bool is_static = false;
        size_t first_name_tok = SIZE_MAX;
        std::vector<size_t> ids;

        while (!at_end()) {
            const Token& t = cur();
            if (t.is(";") || t.is("}")) break;
            if (t.is("__attribute__")) { skip_existing_attributes(); continue; }
            if (t.is("static")) is_static = true;
            if (t.kind == TokKind::Identifier && !is_keyword(t.text)) {
                ids.push_back(i_);
                next();
                if (cur().is("<")) {
                    if (!try_skip_angles()) break;
                    continue;
                }
                // a declarator name is the identifier a terminator follows
                if (cur().is(",") || cur().is("=") || cur().is("[") || cur().is(";")) {
                    first_name_tok = ids.back();
                    break;
                }
                continue;
            }
            if (t.is("(")) { skip_balanced('(', ')'); continue; }
            if (t.is("{")) { skip_balanced('{', '}'); continue; }
            if (t.is("=") || t.is(",") || t.is("[")) break;
            next();
        }
        if (first_name_tok == SIZE_MAX) {
            if (ids.empty()) { // nothing declarable here (e.g. function pointer)
                i_ = head_start;
                skip_to_semicolon();
                return;
            }
            first_name_tok = ids.back();
        }

        std::string type = head_text(head_start, first_name_tok);
        emit_variables_from_declarators(head_start, anchor, type, is_static);
    }

    // Parses `type a, b = x, c[N];` declarator lists starting at from_tok.
    void emit_variables_from_declarators(size_t from_tok, SourcePos anchor,
                                         const std::string& type, bool is_static) {
        i_ = from_tok;
        std::string cur_name;
        bool cur_array = false;
        bool skipping_init = false;

        auto flush = [&]() {
            if (!cur_name.empty()) {
                VariableInfo v;
                v.name = cur_name;
                v.type = type;
                v.decl_pos = anchor;
                v.scope = is_static ? VarScope::FileStatic : VarScope::Global;
                v.is_array = cur_array;
                out_.variables.push_back(std::move(v));
            }
            cur_name.clear();
            cur_array = false;
            skipping_init = false;
        };

        while (!at_end()) {
            const Token& t = cur();
            if (t.is(";")) { flush(); next(); return; }
            if (t.is("}")) { flush(); return; }
            if (t.is(",")) { flush(); next(); continue; }
            if (t.is("=")) { skipping_init = true; next(); continue; }
            if (t.is("{")) { skip_balanced('{', '}'); continue; }
            if (t.is("(")) { skip_balanced('(', ')'); continue; }
            if (t.is("[")) {
                if (!skipping_init) cur_array = true;
                skip_balanced('[', ']');
                continue;
            }
            if (t.is("<")) {
                if (!try_skip_angles()) next();
                continue;
            }
            if (!skipping_init && t.kind == TokKind::Identifier && !is_keyword(t.text)) {
                cur_name = std::string(t.text);
            }
            next();
        }
        flush();
    }

    // Source text between two tokens with normalized whitespace and storage
    // class words removed; used for type strings.
    std::string head_text(size_t from_tok, size_t until_tok) const {
        if (until_tok <= from_tok || until_tok >= toks_.size()) return "";
        size_t a = toks_[from_tok].offset;
        size_t b = toks_[until_tok].offset;
        std::string norm;
        bool space_pending = false;
        for (char c : text_.substr(a, b - a)) {
            if (std::isspace(static_cast<unsigned char>(c))) {
                space_pending = !norm.empty();
            } else {
                if (space_pending) norm += ' ';
                space_pending = false;
                norm += c;
            }
        }
        // drop leading attribute groups and storage-class words
        for (bool changed = true; changed;) {
            changed = false;
            if (norm.rfind("__attribute__", 0) == 0) {
                size_t p = norm.find('(');
                if (p != std::string::npos) {
                    int depth = 0;
                    size_t q = p;
                    for (; q < norm.size(); q++) {
                        if (norm[q] == '(') depth++;
                        else if (norm[q] == ')' && --depth == 0) break;
                    }
                    norm.erase(0, q + 1);
                    while (!norm.empty() && norm.front() == ' ') norm.erase(norm.begin());
                    changed = true;
                }
            }
            for (std::string_view word : {"static ", "extern ", "inline ", "constexpr "}) {
                if (norm.rfind(word, 0) == 0) {
                    norm.erase(0, word.size());
                    changed = true;
                }
            }
        }
        while (!norm.empty() && norm.back() == ' ') norm.pop_back();
        return norm;
    }

    // --- loop extraction ----------------------------------------------------

    void scan_loops_in_range(size_t from, size_t until) {
        size_t save = i_;
        i_ = from;
        if (cur().is("{")) next();
        while (i_ < until && !at_end()) {
            parse_statement(until, 0);
        }
        i_ = save;
    }

    void parse_statement(size_t until, int loop_depth) {
        if (i_ >= until || at_end()) return;
        const Token& t = cur();

        if (t.is("{")) {
            next();
            while (i_ < until && !at_end() && !cur().is("}")) {
                parse_statement(until, loop_depth);
            }
            if (cur().is("}")) next();
            return;
        }
        if (t.is("}")) { next(); return; }

        if (t.is("for") || t.is("while")) {
            StatementInfo st;
            st.kind = t.is("for") ? LoopKind::For : LoopKind::While;
            st.pos = pos_of(t);
            st.nesting_depth = loop_depth + 1;
            size_t slot = out_.statements.size();
            out_.statements.push_back(st);
            next();
            size_t header_start = i_;
            if (cur().is("(")) skip_balanced('(', ')');
            size_t header_end = i_;
            size_t body_start = i_;
            parse_statement(until, loop_depth + 1);
            out_.statements[slot].referenced_vars =
                collect_identifiers(header_start, header_end, body_start, i_);
            return;
        }
        if (t.is("do")) {
            StatementInfo st;
            st.kind = LoopKind::Do;
            st.pos = pos_of(t);
            st.nesting_depth = loop_depth + 1;
            size_t slot = out_.statements.size();
            out_.statements.push_back(st);
            next();
            size_t body_start = i_;
            parse_statement(until, loop_depth + 1);
            size_t body_end = i_;
            size_t cond_start = i_, cond_end = i_;
            if (cur().is("while")) {
                next();
                cond_start = i_;
                if (cur().is("(")) skip_balanced('(', ')');
                cond_end = i_;
                if (cur().is(";")) next();
            }
            out_.statements[slot].referenced_vars =
                collect_identifiers(cond_start, cond_end, body_start, body_end);
            return;
        }
        if (t.is("if") || t.is("switch")) {
            next();
            if (cur().is("(")) skip_balanced('(', ')');
            parse_statement(until, loop_depth);
            if (cur().is("else")) {
                next();
                parse_statement(until, loop_depth);
            }
            return;
        }
        if (t.is("else")) {
            next();
            parse_statement(until, loop_depth);
            return;
        }
        if (t.is("case") || t.is("default")) {
            while (i_ < until && !at_end() && !cur().is(":")) next();
            if (cur().is(":")) next();
            return;
        }

        // expression or declaration statement; lambda bodies are skipped
        // wholesale and contribute no sites
        while (i_ < until && !at_end()) {
            if (cur().is(";")) { next(); return; }
            if (cur().is("{")) { skip_balanced('{', '}'); continue; }
            if (cur().is("(")) { skip_balanced('(', ')'); continue; }
            if (cur().is("[")) { skip_balanced('[', ']'); continue; }
            if (cur().is("}")) return;
            next();
        }
    }

    std::vector<std::string> collect_identifiers(size_t h0, size_t h1, size_t b0,
                                                 size_t b1) const {
        std::vector<std::string> vars;
        auto add_range = [&](size_t from, size_t to) {
            for (size_t j = from; j < to && j < toks_.size(); j++) {
                const Token& t = toks_[j];
                if (t.kind != TokKind::Identifier || is_keyword(t.text)) continue;
                if (j + 1 < toks_.size() && toks_[j + 1].is("(")) continue; // call name
                if (j > 0 && (toks_[j - 1].is(".") || toks_[j - 1].is("::"))) continue;
                if (j > 1 && toks_[j - 1].is(">") && toks_[j - 2].is("-")) continue;
                std::string name(t.text);
                if (vars.size() < 32 &&
                    std::find(vars.begin(), vars.end(), name) == vars.end()) {
                    vars.push_back(name);
                }
            }
        };
        add_range(h0, h1);
        add_range(b0, b1);
        return vars;
    }

    std::string_view text_;
    std::vector<Token> toks_;
    size_t i_ = 0;
    StructuralAbstraction& out_;
};

// Maps byte offsets to (line, col) and validates stored positions.
class LineIndex {
public:
    explicit LineIndex(std::string_view text) : text_(text) {
        line_starts_.push_back(0);
        for (size_t i = 0; i < text.size(); i++) {
            if (text[i] == '\n') line_starts_.push_back(i + 1);
        }
    }

    SourcePos at(size_t offset) const {
        auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
        size_t line_idx = static_cast<size_t>(it - line_starts_.begin()) - 1;
        return SourcePos{static_cast<int>(line_idx + 1),
                         static_cast<int>(offset - line_starts_[line_idx] + 1), offset};
    }

    bool consistent(const SourcePos& pos) const {
        if (pos.byte_offset > text_.size()) return false;
        SourcePos expect = at(pos.byte_offset);
        return expect.line == pos.line && expect.col == pos.col;
    }

    size_t line_start(int line) const {
        size_t idx = static_cast<size_t>(line - 1);
        return idx < line_starts_.size() ? line_starts_[idx] : text_.size();
    }

private:
    std::string_view text_;
    std::vector<size_t> line_starts_;
};

struct MarkerSite {
    SiteKind kind;
    size_t index;
    SourcePos pos;
};

inline std::vector<MarkerSite> marker_sites(const StructuralAbstraction& abs) {
    std::vector<MarkerSite> sites;
    for (size_t i = 0; i < abs.functions.size(); i++) {
        sites.push_back({SiteKind::Function, i, abs.functions[i].def_pos});
    }
    for (size_t i = 0; i < abs.variables.size(); i++) {
        sites.push_back({SiteKind::Global, i, abs.variables[i].decl_pos});
    }
    for (size_t i = 0; i < abs.statements.size(); i++) {
        sites.push_back({SiteKind::Statement, i, abs.statements[i].pos});
    }
    std::sort(sites.begin(), sites.end(), [](const MarkerSite& a, const MarkerSite& b) {
        if (a.pos.byte_offset != b.pos.byte_offset) {
            return a.pos.byte_offset < b.pos.byte_offset;
        }
        return a.index < b.index;
    });
    // shared offsets (e.g. `int a, b;`) produce a single marker
    sites.erase(std::unique(sites.begin(), sites.end(),
                            [](const MarkerSite& a, const MarkerSite& b) {
                                return a.pos.byte_offset == b.pos.byte_offset &&
                                       a.kind == b.kind;
                            }),
                sites.end());
    return sites;
}

inline std::string marker_text(SiteKind kind, size_t id, const SourcePos& pos) {
    const char* tag = kind == SiteKind::Function ? "func"
                      : kind == SiteKind::Global ? "var"
                                                 : "stmt";
    std::string m = "/*<";
    m += tag;
    m += " id=" + std::to_string(id);
    m += " line=" + std::to_string(pos.line);
    m += " col=" + std::to_string(pos.col);
    m += ">*/";
    return m;
}

} // namespace detail

// --- operations --------------------------------------------------------------

inline StructuralAbstraction extract_abstraction(std::string_view source_text,
                                                 const std::string& file_id) {
    if (!is_valid_utf8(source_text)) {
        throw Error(ErrorCode::InvalidEncoding, "source is not valid UTF-8: " + file_id);
    }
    StructuralAbstraction abs;
    abs.file_id = file_id;
    detail::Scanner scanner(source_text, lex_tokens(source_text), abs);
    scanner.run();
    std::sort(abs.statements.begin(), abs.statements.end(),
              [](const StatementInfo& a, const StatementInfo& b) {
                  return a.pos.byte_offset < b.pos.byte_offset;
              });
    return abs;
}

inline std::string render_markers(const StructuralAbstraction& abs,
                                  std::string_view source_text) {
    detail::LineIndex index(source_text);
    auto sites = detail::marker_sites(abs);
    for (const auto& s : sites) {
        if (!index.consistent(s.pos)) {
            throw Error(ErrorCode::PositionMismatch,
                        "site at line " + std::to_string(s.pos.line) +
                            " does not match the supplied text");
        }
    }
    std::string out(source_text);
    for (auto it = sites.rbegin(); it != sites.rend(); ++it) {
        out.insert(it->pos.byte_offset, detail::marker_text(it->kind, it->index, it->pos));
    }
    return out;
}

// Removes every marker produced by render_markers, byte-exactly restoring
// the original text.
inline std::string strip_markers(std::string_view marked) {
    std::string out;
    out.reserve(marked.size());
    size_t i = 0;
    while (i < marked.size()) {
        if (marked.compare(i, 3, "/*<") == 0) {
            size_t close = marked.find(">*/", i);
            if (close != std::string_view::npos) {
                std::string_view body = marked.substr(i + 3, close - i - 3);
                bool is_marker =
                    (body.substr(0, 5) == "func " || body.substr(0, 4) == "var " ||
                     body.substr(0, 5) == "stmt ") &&
                    body.find("id=") != std::string_view::npos &&
                    body.find("line=") != std::string_view::npos;
                if (is_marker) {
                    i = close + 3;
                    continue;
                }
            }
        }
        out += marked[i++];
    }
    return out;
}

inline const SourcePos& resolve_site(const StructuralAbstraction& abs,
                                     std::string_view symbol, SiteKind kind, int line,
                                     int col) {
    auto last_component = [](std::string_view name) {
        size_t p = name.rfind("::");
        return p == std::string_view::npos ? name : name.substr(p + 2);
    };

    std::vector<const SourcePos*> candidates;
    if (kind == SiteKind::Function) {
        for (const auto& f : abs.functions) {
            if (f.name == symbol || last_component(f.name) == symbol ||
                f.name == last_component(symbol)) {
                candidates.push_back(&f.def_pos);
            }
        }
    } else if (kind == SiteKind::Global) {
        for (const auto& v : abs.variables) {
            if (v.name == symbol) candidates.push_back(&v.decl_pos);
        }
    } else {
        for (const auto& s : abs.statements) candidates.push_back(&s.pos);
    }

    if (candidates.empty()) {
        throw Error(ErrorCode::SiteNotFound,
                    "no " + std::string(site_kind_name(kind)) + " site for symbol '" +
                        std::string(symbol) + "'");
    }

    // exact (line,col), then exact line, then unique match within ±2 lines
    for (int pass = 0; pass < 2; pass++) {
        std::vector<const SourcePos*> hits;
        for (auto* c : candidates) {
            bool ok = pass == 0 ? (c->line == line && c->col == col) : c->line == line;
            if (ok) hits.push_back(c);
        }
        if (hits.size() == 1) return *hits[0];
        if (hits.size() > 1) {
            throw Error(ErrorCode::AmbiguousSite,
                        "multiple " + std::string(site_kind_name(kind)) +
                            " sites match symbol '" + std::string(symbol) +
                            "' at line " + std::to_string(line));
        }
    }
    std::vector<const SourcePos*> near;
    for (auto* c : candidates) {
        if (c->line >= line - 2 && c->line <= line + 2) near.push_back(c);
    }
    if (near.size() == 1) return *near[0];
    if (near.size() > 1) {
        throw Error(ErrorCode::AmbiguousSite,
                    "fuzzy match is ambiguous for symbol '" + std::string(symbol) + "'");
    }
    throw Error(ErrorCode::SiteNotFound,
                "no " + std::string(site_kind_name(kind)) + " site for '" +
                    std::string(symbol) + "' near line " + std::to_string(line));
}

} // namespace hintforge
