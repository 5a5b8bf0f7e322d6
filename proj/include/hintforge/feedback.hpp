#pragma once

// Per-candidate outcome records accumulated across refinement iterations and
// fed back into later prompts.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hintforge {

enum class CandidateOutcome { Improved, Slower, Schema, Site, Compile, Test, Timeout };

inline std::string_view candidate_outcome_name(CandidateOutcome c) {
    switch (c) {
        case CandidateOutcome::Improved: return "improved";
        case CandidateOutcome::Slower:   return "slower";
        case CandidateOutcome::Schema:   return "schema";
        case CandidateOutcome::Site:     return "site";
        case CandidateOutcome::Compile:  return "compile";
        case CandidateOutcome::Test:     return "test";
        case CandidateOutcome::Timeout:  return "timeout";
    }
    return "?";
}

struct FeedbackRecord {
    int iteration = 0;
    std::string plan_text;   // normalized plan JSON, or the raw text when unparseable
    CandidateOutcome outcome = CandidateOutcome::Schema;
    std::string log_excerpt; // already truncated to the rendering limit
    std::optional<double> metric;
};

struct FeedbackHistory {
    std::vector<FeedbackRecord> records; // append-only within a session
};

// Truncates a compiler/test log to its first `max_lines` lines.
inline std::string truncate_log(std::string_view log, int max_lines = 20) {
    std::string out;
    int lines = 0;
    for (char c : log) {
        out += c;
        if (c == '\n' && ++lines >= max_lines) break;
    }
    if (!out.empty() && out.back() == '\n') out.pop_back();
    return out;
}

inline FeedbackHistory update_feedback(const FeedbackHistory& history,
                                       const std::vector<FeedbackRecord>& batch) {
    FeedbackHistory out = history;
    for (const auto& r : batch) out.records.push_back(r);
    return out;
}

} // namespace hintforge
