#pragma once

// Token scanner for C/C++ source. Comments, string/char literals, and
// preprocessor lines are consumed, never tokenized, so downstream scanning
// only ever sees code. Positions are 1-based (line, col) plus a 0-based
// byte offset into the original text.

#include <cctype>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "hintforge/errors.hpp"

namespace hintforge {

enum class TokKind { Identifier, Number, Punct, End };

struct Token {
    TokKind kind = TokKind::End;
    std::string_view text;
    int line = 1;
    int col = 1;
    size_t offset = 0;

    bool is(std::string_view s) const { return text == s; }
};

inline const std::unordered_set<std::string_view>& cxx_keywords() {
    static const std::unordered_set<std::string_view> kw = {
        "alignas", "alignof", "and", "asm", "auto", "bool", "break", "case",
        "catch", "char", "class", "const", "consteval", "constexpr", "constinit",
        "const_cast", "continue", "decltype", "default", "delete", "do", "double",
        "dynamic_cast", "else", "enum", "explicit", "export", "extern", "false",
        "final", "float", "for", "friend", "goto", "if", "inline", "int", "long",
        "mutable", "namespace", "new", "noexcept", "not", "nullptr", "operator",
        "or", "override", "private", "protected", "public", "register",
        "reinterpret_cast", "requires", "restrict", "return", "short", "signed",
        "sizeof", "static", "static_assert", "static_cast", "struct", "switch",
        "template", "this", "throw", "true", "try", "typedef", "typeid",
        "typename", "union", "unsigned", "using", "virtual", "void", "volatile",
        "wchar_t", "while", "size_t", "int8_t", "int16_t", "int32_t", "int64_t",
        "uint8_t", "uint16_t", "uint32_t", "uint64_t", "ssize_t", "ptrdiff_t",
    };
    return kw;
}

inline bool is_keyword(std::string_view s) { return cxx_keywords().count(s) > 0; }

// Rejects byte sequences that are not well-formed UTF-8.
inline bool is_valid_utf8(std::string_view text) {
    size_t i = 0;
    const auto n = text.size();
    while (i < n) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        size_t extra;
        if (c < 0x80) { i++; continue; }
        else if ((c >> 5) == 0x6) extra = 1;
        else if ((c >> 4) == 0xE) extra = 2;
        else if ((c >> 3) == 0x1E) extra = 3;
        else return false;
        if (i + extra >= n) return false;
        for (size_t k = 1; k <= extra; k++) {
            if ((static_cast<unsigned char>(text[i + k]) >> 6) != 0x2) return false;
        }
        i += extra + 1;
    }
    return true;
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (pos_ < text_.size()) {
            skip_space_and_comments();
            if (pos_ >= text_.size()) break;
            char c = text_[pos_];
            if (c == '#' && at_line_start_) {
                skip_preprocessor_line();
                continue;
            }
            Token tok;
            tok.line = line_;
            tok.col = col_;
            tok.offset = pos_;
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
                static_cast<unsigned char>(c) >= 0x80) {
                size_t start = pos_;
                while (pos_ < text_.size() &&
                       (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                        text_[pos_] == '_' ||
                        static_cast<unsigned char>(text_[pos_]) >= 0x80)) {
                    advance();
                }
                tok.kind = TokKind::Identifier;
                tok.text = text_.substr(start, pos_ - start);
                // Raw string literal prefixes: R"( u8R"( etc.
                if (pos_ < text_.size() && text_[pos_] == '"' && ends_with_r(tok.text)) {
                    skip_raw_string();
                    continue; // literal contents are not tokens
                }
            } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                       (c == '.' && pos_ + 1 < text_.size() &&
                        std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
                size_t start = pos_;
                while (pos_ < text_.size()) {
                    char d = text_[pos_];
                    if (std::isalnum(static_cast<unsigned char>(d)) || d == '.' || d == '\'') {
                        advance();
                        // exponent signs
                        if ((d == 'e' || d == 'E' || d == 'p' || d == 'P') &&
                            pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
                            advance();
                        }
                    } else {
                        break;
                    }
                }
                tok.kind = TokKind::Number;
                tok.text = text_.substr(start, pos_ - start);
            } else if (c == '"') {
                skip_quoted('"');
                continue;
            } else if (c == '\'') {
                skip_quoted('\'');
                continue;
            } else {
                tok.kind = TokKind::Punct;
                // '::' is the only multi-char operator the scanner cares about
                if (c == ':' && pos_ + 1 < text_.size() && text_[pos_ + 1] == ':') {
                    tok.text = text_.substr(pos_, 2);
                    advance();
                    advance();
                } else {
                    tok.text = text_.substr(pos_, 1);
                    advance();
                }
            }
            out.push_back(tok);
        }
        Token end;
        end.kind = TokKind::End;
        end.line = line_;
        end.col = col_;
        end.offset = text_.size();
        out.push_back(end);
        return out;
    }

private:
    static bool ends_with_r(std::string_view id) {
        return id == "R" || id == "u8R" || id == "uR" || id == "UR" || id == "LR";
    }

    void advance() {
        if (pos_ < text_.size()) {
            if (text_[pos_] == '\n') {
                line_++;
                col_ = 1;
                at_line_start_ = true;
            } else {
                if (!std::isspace(static_cast<unsigned char>(text_[pos_]))) at_line_start_ = false;
                col_++;
            }
            pos_++;
        }
    }

    void skip_space_and_comments() {
        for (;;) {
            while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
                advance();
            }
            if (pos_ + 1 < text_.size() && text_[pos_] == '/' && text_[pos_ + 1] == '/') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (pos_ + 1 < text_.size() && text_[pos_] == '/' && text_[pos_ + 1] == '*') {
                size_t open_line = static_cast<size_t>(line_);
                advance();
                advance();
                for (;;) {
                    if (pos_ + 1 >= text_.size()) {
                        throw Error(ErrorCode::ParseUnsupported,
                                    "unterminated block comment opened at line " +
                                        std::to_string(open_line));
                    }
                    if (text_[pos_] == '*' && text_[pos_ + 1] == '/') {
                        advance();
                        advance();
                        break;
                    }
                    advance();
                }
            } else {
                return;
            }
        }
    }

    void skip_quoted(char quote) {
        advance(); // opening quote
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '\\' && pos_ + 1 < text_.size()) {
                advance();
                advance();
                continue;
            }
            advance();
            if (c == quote) return;
            if (c == '\n') return; // tolerate unterminated literal at EOL
        }
    }

    void skip_raw_string() {
        // at '"' of R"delim( ... )delim"
        advance();
        std::string delim;
        while (pos_ < text_.size() && text_[pos_] != '(') {
            delim += text_[pos_];
            advance();
        }
        advance(); // '('
        std::string closer = ")" + delim + "\"";
        size_t found = text_.find(closer, pos_);
        if (found == std::string_view::npos) {
            throw Error(ErrorCode::ParseUnsupported, "unterminated raw string literal");
        }
        while (pos_ < found + closer.size()) advance();
    }

    void skip_preprocessor_line() {
        while (pos_ < text_.size()) {
            if (text_[pos_] == '\\' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '\n') {
                advance();
                advance();
                continue;
            }
            if (text_[pos_] == '\n') {
                advance();
                return;
            }
            advance();
        }
    }

    std::string_view text_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    bool at_line_start_ = true;
};

inline std::vector<Token> lex_tokens(std::string_view text) { return Lexer(text).run(); }

} // namespace hintforge
