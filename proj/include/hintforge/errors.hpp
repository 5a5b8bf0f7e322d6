#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hintforge {

enum class ErrorCode {
    // source_model
    ParseUnsupported,
    InvalidEncoding,
    PositionMismatch,
    SiteNotFound,
    AmbiguousSite,
    // knowledge_base
    MalformedDoc,
    IoError,
    SchemaVersionMismatch,
    UnknownHint,
    // plan_model
    JsonSyntaxError,
    SchemaViolation,
    AllItemsInvalid,
    // hint_applier
    CorruptProvenance,
    // profiler
    CompilerNotFound,
    CompileFailure,
    CaseSetMismatch,
    NonPositiveTime,
    // refine_loop / llm_gateway
    BaselineFails,
    BackendUnavailable,
    BudgetExceeded,
    // config_and_report
    ConfigParse,
    UnknownKey,
};

inline std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::ParseUnsupported:      return "ParseUnsupported";
        case ErrorCode::InvalidEncoding:       return "InvalidEncoding";
        case ErrorCode::PositionMismatch:      return "PositionMismatch";
        case ErrorCode::SiteNotFound:          return "SiteNotFound";
        case ErrorCode::AmbiguousSite:         return "AmbiguousSite";
        case ErrorCode::MalformedDoc:          return "MalformedDoc";
        case ErrorCode::IoError:               return "IoError";
        case ErrorCode::SchemaVersionMismatch: return "SchemaVersionMismatch";
        case ErrorCode::UnknownHint:           return "UnknownHint";
        case ErrorCode::JsonSyntaxError:       return "JsonSyntaxError";
        case ErrorCode::SchemaViolation:       return "SchemaViolation";
        case ErrorCode::AllItemsInvalid:       return "AllItemsInvalid";
        case ErrorCode::CorruptProvenance:     return "CorruptProvenance";
        case ErrorCode::CompilerNotFound:      return "CompilerNotFound";
        case ErrorCode::CompileFailure:        return "CompileFailure";
        case ErrorCode::CaseSetMismatch:       return "CaseSetMismatch";
        case ErrorCode::NonPositiveTime:       return "NonPositiveTime";
        case ErrorCode::BaselineFails:         return "BaselineFails";
        case ErrorCode::BackendUnavailable:    return "BackendUnavailable";
        case ErrorCode::BudgetExceeded:        return "BudgetExceeded";
        case ErrorCode::ConfigParse:           return "ConfigParse";
        case ErrorCode::UnknownKey:            return "UnknownKey";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace hintforge
