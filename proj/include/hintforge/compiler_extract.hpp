#pragma once

// Optional compiler-assisted extraction: shells out to clang's JSON AST dump
// and reconciles the reported positions against the original text. Slower
// than the lexer scanner and requires clang on PATH, but useful as an
// independent cross-check and for tricky sources.
//
// The dump encodes locations differentially (a field is omitted when it
// equals the last printed value), so the walk tracks line/col/file state in
// document order.

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hintforge/errors.hpp"
#include "hintforge/profiler.hpp" // detail::write_file_or_throw
#include "hintforge/source_model.hpp"
#include "hintforge/subprocess.hpp"

namespace hintforge {

struct ClangExtractOptions {
    std::string clang = "clang";
    std::vector<std::string> extra_args; // e.g. {"-std=c11"}
};

namespace detail {

struct LocTracker {
    int line = 0;
    int col = 0;
    std::string file;

    // Applies one location object, returning the effective (line, col).
    std::pair<int, int> update(const nlohmann::ordered_json& loc) {
        if (loc.contains("spellingLoc")) {
            update(loc["spellingLoc"]);
            if (loc.contains("expansionLoc")) return update(loc["expansionLoc"]);
            return {line, col};
        }
        if (loc.contains("file")) file = loc["file"].get<std::string>();
        if (loc.contains("line")) line = loc["line"].get<int>();
        if (loc.contains("col")) col = loc["col"].get<int>();
        return {line, col};
    }
};

class ClangAstWalker {
public:
    ClangAstWalker(const std::string& source_text, const std::string& main_file,
                   StructuralAbstraction& out)
        : index_(source_text), text_(source_text), main_file_(main_file), out_(out) {}

    void walk(const nlohmann::ordered_json& node, int loop_depth, bool top_level) {
        if (!node.is_object()) return;
        std::string kind = node.value("kind", std::string());

        std::pair<int, int> begin{0, 0};
        if (node.contains("loc")) tracker_.update(node["loc"]);
        if (node.contains("range") && node["range"].contains("begin")) {
            begin = tracker_.update(node["range"]["begin"]);
        }

        bool in_main = tracker_.file == main_file_;
        int child_loop_depth = loop_depth;
        bool children_top_level = false;
        bool set_template = false;

        if (in_main && !node.value("isImplicit", false)) {
            if (kind == "FunctionDecl" || kind == "CXXMethodDecl" ||
                kind == "CXXConstructorDecl" || kind == "CXXDestructorDecl") {
                emit_function(node, begin);
            } else if (kind == "FunctionTemplateDecl") {
                template_begin_ = begin;
                set_template = true;
            } else if (kind == "VarDecl" && top_level) {
                emit_variable(node, begin);
            } else if (kind == "ForStmt" || kind == "WhileStmt" || kind == "DoStmt" ||
                       kind == "CXXForRangeStmt") {
                emit_loop(kind, node, begin, loop_depth);
                child_loop_depth = loop_depth + 1;
            }
        }
        if (kind == "TranslationUnitDecl" || kind == "NamespaceDecl" ||
            kind == "LinkageSpecDecl") {
            children_top_level = true;
        }

        if (node.contains("inner")) {
            for (const auto& child : node["inner"]) {
                walk(child, child_loop_depth, children_top_level);
            }
        }
        if (node.contains("range") && node["range"].contains("end")) {
            tracker_.update(node["range"]["end"]);
        }
        if (set_template) template_begin_.reset();
    }

private:
    SourcePos make_pos(std::pair<int, int> lc) const {
        size_t off = index_.line_start(lc.first) + static_cast<size_t>(lc.second - 1);
        return SourcePos{lc.first, lc.second, off};
    }

    // A template function's begin points at the `template` keyword; the
    // attribute-legal anchor is the first token after the intro.
    SourcePos post_template_anchor(SourcePos pos) const {
        if (text_.compare(pos.byte_offset, 8, "template") != 0) return pos;
        auto tokens = lex_tokens(text_.substr(pos.byte_offset));
        size_t i = 0;
        if (i < tokens.size() && tokens[i].is("template")) {
            i++;
            int depth = 0;
            while (i < tokens.size() && tokens[i].kind != TokKind::End) {
                if (tokens[i].is("<")) depth++;
                else if (tokens[i].is(">") && --depth == 0) { i++; break; }
                i++;
            }
        }
        if (i >= tokens.size() || tokens[i].kind == TokKind::End) return pos;
        size_t off = pos.byte_offset + tokens[i].offset;
        return index_.at(off);
    }

    void emit_function(const nlohmann::ordered_json& node, std::pair<int, int> begin) {
        if (!node.contains("name")) return;
        FunctionInfo fn;
        fn.name = node["name"].get<std::string>();
        std::string qual = node.value("type", nlohmann::ordered_json::object())
                               .value("qualType", std::string());
        size_t paren = qual.find('(');
        fn.return_type = paren == std::string::npos
                             ? qual
                             : qual.substr(0, paren > 0 && qual[paren - 1] == ' '
                                                  ? paren - 1
                                                  : paren);
        SourcePos pos = make_pos(begin);
        if (template_begin_) {
            fn.is_template = true;
            pos = post_template_anchor(make_pos(*template_begin_));
            template_begin_.reset();
        }
        fn.def_pos = pos;
        fn.body_span = {pos, pos};
        if (node.contains("inner")) {
            for (const auto& child : node["inner"]) {
                if (child.value("kind", std::string()) == "CompoundStmt") {
                    fn.is_definition = true;
                }
            }
        }
        out_.functions.push_back(std::move(fn));
    }

    void emit_variable(const nlohmann::ordered_json& node, std::pair<int, int> begin) {
        if (!node.contains("name")) return;
        VariableInfo v;
        v.name = node["name"].get<std::string>();
        std::string qual = node.value("type", nlohmann::ordered_json::object())
                               .value("qualType", std::string());
        v.type = qual;
        v.is_array = qual.find('[') != std::string::npos;
        v.scope = node.value("storageClass", std::string()) == "static"
                      ? VarScope::FileStatic
                      : VarScope::Global;
        v.decl_pos = make_pos(begin);
        out_.variables.push_back(std::move(v));
    }

    void emit_loop(const std::string& kind, const nlohmann::ordered_json& node,
                   std::pair<int, int> begin, int loop_depth) {
        StatementInfo st;
        st.kind = kind == "WhileStmt" ? LoopKind::While
                  : kind == "DoStmt" ? LoopKind::Do
                                     : LoopKind::For;
        st.pos = make_pos(begin);
        st.nesting_depth = loop_depth + 1;
        collect_refs(node, st.referenced_vars);
        out_.statements.push_back(std::move(st));
    }

    static void collect_refs(const nlohmann::ordered_json& node,
                             std::vector<std::string>& vars) {
        if (!node.is_object()) return;
        if (node.value("kind", std::string()) == "DeclRefExpr" &&
            node.contains("referencedDecl")) {
            const auto& ref = node["referencedDecl"];
            std::string dk = ref.value("kind", std::string());
            if (dk == "VarDecl" || dk == "ParmVarDecl") {
                std::string name = ref.value("name", std::string());
                if (!name.empty() && vars.size() < 32 &&
                    std::find(vars.begin(), vars.end(), name) == vars.end()) {
                    vars.push_back(name);
                }
            }
        }
        if (node.contains("inner")) {
            for (const auto& child : node["inner"]) collect_refs(child, vars);
        }
    }

    LineIndex index_;
    const std::string& text_;
    std::string main_file_;
    StructuralAbstraction& out_;
    LocTracker tracker_;
    std::optional<std::pair<int, int>> template_begin_;
};

} // namespace detail

inline StructuralAbstraction extract_abstraction_compiler(
    const std::string& source_text, const std::string& file_id,
    const ClangExtractOptions& opts = {}) {
    if (!is_valid_utf8(source_text)) {
        throw Error(ErrorCode::InvalidEncoding, "source is not valid UTF-8: " + file_id);
    }
    namespace fs = std::filesystem;
    std::string ext = fs::path(file_id).extension().string();
    if (ext.empty()) ext = ".c";
    fs::path dir = fs::temp_directory_path() /
                   ("hintforge-ast-" + detail::fnv1a_hex(source_text).substr(0, 8));
    fs::create_directories(dir);
    fs::path src = dir / ("input" + ext);
    detail::write_file_or_throw(src, source_text);

    std::vector<std::string> argv{opts.clang, "-Xclang", "-ast-dump=json",
                                  "-fsyntax-only"};
    for (const auto& a : opts.extra_args) argv.push_back(a);
    argv.push_back(src.string());
    RunResult r = run_process(argv, {}, 60.0);
    if (!r.exited || r.exit_code != 0) {
        throw Error(ErrorCode::ParseUnsupported,
                    "clang AST dump failed: " + r.err.substr(0, 400));
    }

    nlohmann::ordered_json ast;
    try {
        ast = nlohmann::ordered_json::parse(r.out);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ParseUnsupported,
                    std::string("cannot parse clang AST JSON: ") + e.what());
    }

    StructuralAbstraction abs;
    abs.file_id = file_id;
    detail::ClangAstWalker walker(source_text, src.string(), abs);
    walker.walk(ast, 0, false);
    std::sort(abs.statements.begin(), abs.statements.end(),
              [](const StatementInfo& a, const StatementInfo& b) {
                  return a.pos.byte_offset < b.pos.byte_offset;
              });
    std::error_code ec;
    fs::remove_all(dir, ec);
    return abs;
}

} // namespace hintforge
