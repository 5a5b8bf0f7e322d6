#pragma once

// The iterative optimization session: profile the original program, then for
// T rounds retrieve context, generate N candidate plans, apply and profile
// each, install improvements past the noise floor, and fold every outcome
// into the feedback history. The original program is always a valid answer:
// when nothing improves, the reported speedup is exactly 1.0 by definition.

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hintforge/feedback.hpp"
#include "hintforge/hint_applier.hpp"
#include "hintforge/llm_gateway.hpp"
#include "hintforge/plan_model.hpp"
#include "hintforge/profiler.hpp"
#include "hintforge/retriever.hpp"

namespace hintforge {

struct SessionConfig {
    int max_iterations = 2;      // T
    int candidates_per_iter = 5; // N
    PromptStrategy strategy = PromptStrategy::Cot;
    SamplingParams sampling;     // sampling.n is kept equal to candidates_per_iter
    NoiseFloor noise_floor;
    int retrieval_k = 4;
    std::string workspace;       // artifact directory; empty disables persistence
};

struct IterationStats {
    int iteration = 0;
    int samples = 0;
    int improved = 0;
    int slower = 0;
    int schema_rejects = 0;
    int site_rejects = 0;
    int compile_fails = 0;
    int test_fails = 0;
    int timeouts = 0;
    double best_metric_after = 0.0;
};

struct SessionOutcome {
    std::string file_id;
    std::string best_source;
    bool improved = false;
    SpeedupReport speedup; // best vs original
    double baseline_metric = 0.0;
    double best_metric = 0.0;
    FeedbackHistory history;
    std::vector<IterationStats> per_iteration;
    GenerateStats generate_stats;
    bool backend_aborted = false;
};

namespace detail {

inline void persist_text(const std::string& workspace, const std::string& rel,
                         std::string_view data) {
    if (workspace.empty()) return;
    std::filesystem::path p = std::filesystem::path(workspace) / rel;
    write_file_or_throw(p, data);
}

inline std::string source_extension(const std::string& file_id) {
    auto ext = std::filesystem::path(file_id).extension().string();
    if (ext == ".cpp" || ext == ".cc" || ext == ".cxx" || ext == ".C") return ext;
    if (ext == ".c") return ".c";
    return ".c";
}

inline void bump(IterationStats& stats, CandidateOutcome outcome) {
    switch (outcome) {
        case CandidateOutcome::Improved: stats.improved++; break;
        case CandidateOutcome::Slower:   stats.slower++; break;
        case CandidateOutcome::Schema:   stats.schema_rejects++; break;
        case CandidateOutcome::Site:     stats.site_rejects++; break;
        case CandidateOutcome::Compile:  stats.compile_fails++; break;
        case CandidateOutcome::Test:     stats.test_fails++; break;
        case CandidateOutcome::Timeout:  stats.timeouts++; break;
    }
}

} // namespace detail

inline nlohmann::ordered_json session_outcome_to_json(const SessionOutcome& o) {
    nlohmann::ordered_json iters = nlohmann::ordered_json::array();
    for (const auto& s : o.per_iteration) {
        iters.push_back({{"iteration", s.iteration},
                         {"samples", s.samples},
                         {"improved", s.improved},
                         {"slower", s.slower},
                         {"schema_rejects", s.schema_rejects},
                         {"site_rejects", s.site_rejects},
                         {"compile_fails", s.compile_fails},
                         {"test_fails", s.test_fails},
                         {"timeouts", s.timeouts},
                         {"best_metric_after", s.best_metric_after}});
    }
    nlohmann::ordered_json hist = nlohmann::ordered_json::array();
    for (const auto& r : o.history.records) {
        nlohmann::ordered_json jr = {{"iteration", r.iteration},
                                     {"failure_class",
                                      std::string(candidate_outcome_name(r.outcome))},
                                     {"plan", r.plan_text},
                                     {"log_excerpt", r.log_excerpt}};
        if (r.metric) jr["metric"] = *r.metric;
        hist.push_back(jr);
    }
    return {{"schema_version", "1"},
            {"file_id", o.file_id},
            {"improved", o.improved},
            {"baseline_metric", o.baseline_metric},
            {"best_metric", o.best_metric},
            {"speedup",
             {{"per_case_ratio", o.speedup.per_case_ratio},
              {"geo_mean", o.speedup.geo_mean}}},
            {"iterations", iters},
            {"history", hist},
            {"samples_requested", o.generate_stats.samples_requested},
            {"transport_retries", o.generate_stats.transport_retries},
            {"backend_aborted", o.backend_aborted}};
}

inline SessionOutcome run_session(const std::string& source, const std::string& file_id,
                                  const TestSuite& suite, const KnowledgeBase& kb,
                                  PlanBackend& backend, Profiler& profiler,
                                  const SessionConfig& config) {
    SessionOutcome outcome;
    outcome.file_id = file_id;
    std::string ext = detail::source_extension(file_id);

    ProfileResult baseline = profiler.profile(source, suite, "baseline" + ext);
    if (baseline.status != ProfileStatus::Pass) {
        throw Error(ErrorCode::BaselineFails,
                    "original program does not pass its test suite (" +
                        std::string(profile_status_name(baseline.status)) + ")" +
                        (baseline.compiler_log.empty()
                             ? ""
                             : ": " + truncate_log(baseline.compiler_log)));
    }

    StructuralAbstraction abstraction = extract_abstraction(source, file_id);

    std::string best_source = source;
    ProfileResult best_profile = baseline;
    outcome.baseline_metric = *baseline.metric;

    SamplingParams sampling = config.sampling;
    sampling.n = config.candidates_per_iter;

    for (int t = 1; t <= config.max_iterations; t++) {
        IterationStats stats;
        stats.iteration = t;
        std::string iter_dir = "iter_" + std::to_string(t);

        auto docs = retrieve(kb, build_query(abstraction), config.retrieval_k);
        PromptBundle bundle = construct_prompt(source, abstraction, docs,
                                               outcome.history, config.strategy, sampling);
        detail::persist_text(config.workspace, iter_dir + "/prompt.txt",
                             bundle.system + "\n\n" + render_user_message(bundle));

        std::vector<std::string> texts;
        try {
            texts = generate_plans(bundle, backend, &outcome.generate_stats);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::BackendUnavailable) throw;
            outcome.backend_aborted = true;
            stats.best_metric_after = *best_profile.metric;
            outcome.per_iteration.push_back(stats);
            break;
        }
        stats.samples = static_cast<int>(texts.size());

        // parse + validate + apply each sample, then profile survivors as a
        // batch (compiles may parallelize; timing stays in plan order)
        struct Pending {
            size_t sample;
            AppliedVariant variant;
            std::string plan_text;
            std::string pre_log;
        };
        std::vector<FeedbackRecord> batch(texts.size());
        std::vector<Pending> pending;

        for (size_t k = 0; k < texts.size(); k++) {
            FeedbackRecord& rec = batch[k];
            rec.iteration = t;

            InsertionPlan plan;
            bool fence_stripped = false;
            try {
                plan = parse_plan(texts[k], &fence_stripped);
            } catch (const Error& e) {
                rec.outcome = CandidateOutcome::Schema;
                rec.plan_text = texts[k].substr(0, 500);
                rec.log_excerpt = truncate_log(e.what());
                continue;
            }
            rec.plan_text = serialize_plan(plan);

            auto validated = validate_plan(plan, abstraction, kb);
            if (std::holds_alternative<ValidationReport>(validated)) {
                const auto& report = std::get<ValidationReport>(validated);
                rec.outcome = CandidateOutcome::Site;
                std::string log;
                for (const auto& issue : report.issues) {
                    log += issue.reason + ": " + issue.symbol + " (" + issue.detail + ")\n";
                }
                rec.log_excerpt = truncate_log(log);
                continue;
            }

            Pending p;
            p.sample = k;
            p.plan_text = rec.plan_text;
            const auto& vplan = std::get<ValidatedPlan>(validated);
            p.variant = apply_plan(source, vplan, abstraction);
            if (fence_stripped) p.pre_log += "stripped markdown fence from response\n";
            for (const auto& issue : vplan.report.issues) {
                p.pre_log += "dropped: " + issue.reason + ": " + issue.symbol + " (" +
                             issue.detail + ")\n";
            }
            for (const auto& note : p.variant.notes) p.pre_log += note + "\n";
            pending.push_back(std::move(p));
        }

        std::vector<std::string> sources, names;
        for (const auto& p : pending) {
            sources.push_back(p.variant.source_text);
            names.push_back("variant_" + std::to_string(t) + "_" +
                            std::to_string(p.sample) + ext);
            detail::persist_text(config.workspace,
                                 iter_dir + "/cand_" + std::to_string(p.sample) + "/" +
                                     names.back(),
                                 p.variant.source_text);
        }
        std::vector<ProfileResult> results = profiler.profile_batch(sources, suite, names);

        for (size_t j = 0; j < pending.size(); j++) {
            const Pending& p = pending[j];
            const ProfileResult& res = results[j];
            FeedbackRecord& rec = batch[p.sample];

            std::string cand_dir = iter_dir + "/cand_" + std::to_string(p.sample);
            if (!res.compiler_log.empty()) {
                detail::persist_text(config.workspace, cand_dir + "/compile.log",
                                     res.compiler_log);
            }

            switch (res.status) {
                case ProfileStatus::CompileFail:
                    rec.outcome = CandidateOutcome::Compile;
                    rec.log_excerpt = truncate_log(p.pre_log + res.compiler_log);
                    break;
                case ProfileStatus::TestFail:
                case ProfileStatus::Timeout: {
                    rec.outcome = res.status == ProfileStatus::TestFail
                                      ? CandidateOutcome::Test
                                      : CandidateOutcome::Timeout;
                    std::string log = p.pre_log;
                    for (const auto& cr : res.per_case) {
                        if (!cr.detail.empty()) log += cr.detail + "\n";
                    }
                    rec.log_excerpt = truncate_log(log);
                    break;
                }
                case ProfileStatus::Pass: {
                    rec.metric = res.metric;
                    if (improves(res, best_profile, config.noise_floor)) {
                        best_source = p.variant.source_text;
                        best_profile = res;
                        outcome.improved = true;
                        rec.outcome = CandidateOutcome::Improved;
                    } else {
                        rec.outcome = CandidateOutcome::Slower;
                    }
                    rec.log_excerpt = truncate_log(p.pre_log);
                    break;
                }
            }
        }

        for (const auto& rec : batch) detail::bump(stats, rec.outcome);
        outcome.history = update_feedback(outcome.history, batch);
        stats.best_metric_after = *best_profile.metric;
        outcome.per_iteration.push_back(stats);
    }

    outcome.best_source = best_source;
    outcome.best_metric = *best_profile.metric;
    if (outcome.improved) {
        outcome.speedup = geo_speedup(baseline, best_profile);
    } else {
        // no candidate won: the answer is the original, 1.0 by definition
        outcome.speedup.per_case_ratio.assign(baseline.per_case.size(), 1.0);
        outcome.speedup.geo_mean = 1.0;
    }

    if (!config.workspace.empty()) {
        detail::persist_text(config.workspace, "best" + ext, outcome.best_source);
        detail::persist_text(config.workspace, "outcome.json",
                             session_outcome_to_json(outcome).dump(2) + "\n");
    }
    return outcome;
}

} // namespace hintforge
