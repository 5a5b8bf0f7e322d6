// hintforge command-line tool: optimize a program with a plan-generator
// backend, inspect extracted structure, manage the knowledge base, and run
// A/B benchmark comparisons.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "hintforge/compiler_extract.hpp"
#include "hintforge/hintforge.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitBaselineFails = 2;
constexpr int kExitUsage = 64;
constexpr int kExitDataErr = 65;
constexpr int kExitConfig = 78;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw hintforge::Error(hintforge::ErrorCode::IoError, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split_flags(const std::string& flags) {
    std::vector<std::string> out;
    std::istringstream ss(flags);
    std::string f;
    while (ss >> f) out.push_back(f);
    return out;
}

std::string compiler_id(const std::string& cc) {
    auto r = hintforge::run_process({cc, "--version"}, {}, 10.0);
    if (!r.exited || r.exit_code != 0) return cc;
    size_t nl = r.out.find('\n');
    return nl == std::string::npos ? r.out : r.out.substr(0, nl);
}

hintforge::KnowledgeBase load_kb_or_seed(const std::string& path) {
    if (path.empty()) return hintforge::seed_kb();
    return hintforge::load_kb(path);
}

hintforge::CompilerConfig compiler_config_from(const hintforge::CliConfig& cfg) {
    hintforge::CompilerConfig cc;
    cc.cc = cfg.cc;
    cc.flags = split_flags(cfg.flags);
    return cc;
}

ordered_json abstraction_to_json(const hintforge::StructuralAbstraction& abs) {
    ordered_json jf = ordered_json::array();
    for (const auto& f : abs.functions) {
        jf.push_back({{"name", f.name},
                      {"return_type", f.return_type},
                      {"line", f.def_pos.line},
                      {"col", f.def_pos.col},
                      {"is_definition", f.is_definition},
                      {"is_template", f.is_template}});
    }
    ordered_json jv = ordered_json::array();
    for (const auto& v : abs.variables) {
        jv.push_back({{"name", v.name},
                      {"type", v.type},
                      {"line", v.decl_pos.line},
                      {"col", v.decl_pos.col},
                      {"scope", v.scope == hintforge::VarScope::Global ? "global" : "file-static"},
                      {"is_array", v.is_array}});
    }
    ordered_json js = ordered_json::array();
    for (const auto& s : abs.statements) {
        js.push_back({{"kind", std::string(hintforge::loop_kind_name(s.kind))},
                      {"line", s.pos.line},
                      {"col", s.pos.col},
                      {"nesting_depth", s.nesting_depth},
                      {"referenced_vars", s.referenced_vars}});
    }
    return {{"file", abs.file_id},
            {"functions", jf},
            {"variables", jv},
            {"statements", js}};
}

struct CommonOpts {
    std::string config_path;
    std::map<std::string, std::string> overrides;
    bool json = false;
};

hintforge::CliConfig resolve_config(const CommonOpts& opts) {
    std::optional<std::string> file;
    if (!opts.config_path.empty()) {
        file = opts.config_path;
    } else if (fs::exists("hintforge.json")) {
        file = "hintforge.json";
    }
    return hintforge::load_config(file, opts.overrides);
}

int cmd_optimize(const std::string& source_path, const std::string& suite_path,
                 const CommonOpts& opts) {
    auto cfg = resolve_config(opts);
    std::string source = read_file(source_path);
    hintforge::TestSuite suite = hintforge::load_suite(suite_path);
    if (cfg.timeout_s > 0) {
        for (auto& c : suite.cases) c.timeout_s = cfg.timeout_s;
    }
    auto kb = load_kb_or_seed(cfg.kb);

    hintforge::BackendConfig bcfg;
    bcfg.kind = cfg.backend == "http" ? hintforge::BackendKind::HttpChat
                                      : hintforge::BackendKind::MockScripted;
    bcfg.script_path = cfg.backend_script;
    bcfg.endpoint = cfg.endpoint;
    bcfg.model = cfg.model;
    bcfg.json_mode = cfg.json_mode;
    bcfg.retry_budget = cfg.retry_budget;
    bcfg.max_requests = cfg.max_requests;
    if (cfg.backend == "mock" && bcfg.script_path.empty()) {
        throw hintforge::Error(hintforge::ErrorCode::ConfigParse,
                               "mock backend requires --backend-script");
    }
    auto backend = hintforge::make_backend(bcfg);

    hintforge::SessionConfig scfg;
    scfg.max_iterations = cfg.T;
    scfg.candidates_per_iter = cfg.N;
    auto strategy = hintforge::strategy_from_name(cfg.strategy);
    if (!strategy) {
        throw hintforge::Error(hintforge::ErrorCode::ConfigParse,
                               "unknown strategy '" + cfg.strategy + "'");
    }
    scfg.strategy = *strategy;
    scfg.sampling.temperature = cfg.temperature;
    scfg.sampling.top_p = cfg.top_p;
    scfg.sampling.max_tokens = cfg.max_tokens;
    scfg.noise_floor = {cfg.noise_floor_ms / 1000.0, cfg.noise_floor_frac};
    scfg.retrieval_k = cfg.k;
    scfg.workspace = cfg.workspace;

    hintforge::LocalProfiler profiler(compiler_config_from(cfg),
                                      fs::path(cfg.workspace) / "build", cfg.reps);

    auto outcome = hintforge::run_session(source, source_path, suite, kb, *backend,
                                          profiler, scfg);

    if (opts.json) {
        auto env = hintforge::make_envelope(hintforge::session_outcome_to_json(outcome),
                                            kb.version(), compiler_id(cfg.cc));
        std::cout << hintforge::envelope_to_json(env).dump(2) << "\n";
    } else {
        std::printf("baseline metric : %.6fs\n", outcome.baseline_metric);
        std::printf("best metric     : %.6fs\n", outcome.best_metric);
        std::printf("geo-mean speedup: %.4fx vs baseline flags (%s)\n",
                    outcome.speedup.geo_mean, cfg.flags.c_str());
        std::printf("improved        : %s\n", outcome.improved ? "yes" : "no");
        if (outcome.backend_aborted) {
            std::printf("note: backend became unavailable; returned best-so-far\n");
        }
        std::printf("workspace       : %s (best source + outcome.json)\n",
                    cfg.workspace.c_str());
    }
    return 0;
}

int cmd_parse(const std::string& source_path, const std::string& parser,
              const CommonOpts& opts) {
    std::string source = read_file(source_path);
    hintforge::StructuralAbstraction abs;
    if (parser == "compiler") {
        abs = hintforge::extract_abstraction_compiler(source, source_path);
    } else {
        abs = hintforge::extract_abstraction(source, source_path);
    }
    std::string marked = hintforge::render_markers(abs, source);
    if (opts.json) {
        ordered_json j = abstraction_to_json(abs);
        j["marked_source"] = marked;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << abstraction_to_json(abs).dump(2) << "\n\n" << marked;
    }
    return 0;
}

int cmd_kb_build(const std::string& doc_path, bool seed, const std::string& out_path) {
    std::string doc_text = seed ? hintforge::seed_hint_docs_json() : read_file(doc_path);
    auto entries = hintforge::ingest_doc(doc_text, hintforge::default_curation_rules());
    hintforge::KnowledgeBase kb("1", hintforge::detail::fnv1a_hex(doc_text),
                                std::move(entries));
    hintforge::save_kb(kb, out_path);
    std::printf("wrote %zu entries (%zu retrievable) to %s\n", kb.size(),
                kb.retrievable().size(), out_path.c_str());
    return 0;
}

int cmd_kb_check(const std::string& kb_path, const std::string& cc) {
    auto kb = load_kb_or_seed(kb_path);
    fs::path dir = fs::temp_directory_path() / "hintforge-kb-check";
    int failures = 0;
    for (const auto* e : kb.retrievable()) {
        hintforge::CompilerConfig cfg;
        cfg.cc = cc;
        cfg.flags = {"-O2", "-c"};
        cfg.strict_attributes = false;
        std::string name = e->hint_id;
        for (auto& ch : name) {
            if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '_';
        }
        auto out = hintforge::compile(e->example_annotated, cfg, dir, name + ".c");
        if (!out.ok) {
            failures++;
            std::fprintf(stderr, "FAIL %s\n%s\n", e->hint_id.c_str(), out.log.c_str());
        } else {
            std::printf("ok   %s\n", e->hint_id.c_str());
        }
    }
    std::error_code ec;
    fs::remove_all(dir, ec);
    if (failures) std::fprintf(stderr, "%d annotated example(s) failed to compile\n", failures);
    return failures == 0 ? 0 : 1;
}

int cmd_kb_show(const std::string& hint_id, const std::string& kb_path, bool json) {
    auto kb = load_kb_or_seed(kb_path);
    const hintforge::HintEntry* entry = nullptr;
    try {
        entry = &kb.lookup(hint_id);
    } catch (const hintforge::Error&) {
        std::fprintf(stderr, "no such hint: %s\n", hint_id.c_str());
        return 1;
    }
    if (json) {
        ordered_json kinds = ordered_json::array();
        for (auto k : entry->site_kinds) {
            kinds.push_back(std::string(hintforge::site_kind_name(k)));
        }
        ordered_json j = {{"hint_id", entry->hint_id},
                          {"surface_form", entry->surface_form},
                          {"site_kinds", kinds},
                          {"category", entry->category},
                          {"description", entry->description},
                          {"applicability", entry->applicability},
                          {"example_annotated", entry->example_annotated},
                          {"example_plain", entry->example_plain},
                          {"priority", entry->priority}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::printf("%s\n  insert as: %s\n  category: %s\n  %s\n  applicability: %s\n",
                    entry->hint_id.c_str(), entry->surface_form.c_str(),
                    entry->category.c_str(), entry->description.c_str(),
                    entry->applicability.c_str());
    }
    return 0;
}

int cmd_bench(const std::string& source_path, const std::string& suite_path,
              const std::string& flags_a, const std::string& flags_b,
              const CommonOpts& opts) {
    auto cfg = resolve_config(opts);
    std::string source = read_file(source_path);
    hintforge::TestSuite suite = hintforge::load_suite(suite_path);
    if (cfg.timeout_s > 0) {
        for (auto& c : suite.cases) c.timeout_s = cfg.timeout_s;
    }

    fs::path work = fs::path(cfg.workspace) / "bench";
    std::string ext = fs::path(source_path).extension().string();
    if (ext.empty()) ext = ".c";

    auto profile_with = [&](const std::string& flags, const std::string& tag) {
        hintforge::CompilerConfig cc;
        cc.cc = cfg.cc;
        cc.flags = split_flags(flags);
        hintforge::LocalProfiler profiler(cc, work, cfg.reps);
        return profiler.profile(source, suite, tag + ext);
    };

    auto pa = profile_with(flags_a, "flags_a");
    auto pb = profile_with(flags_b, "flags_b");
    if (pa.status != hintforge::ProfileStatus::Pass ||
        pb.status != hintforge::ProfileStatus::Pass) {
        std::fprintf(stderr, "bench failed: flags-a=%s flags-b=%s\n%s%s",
                     std::string(hintforge::profile_status_name(pa.status)).c_str(),
                     std::string(hintforge::profile_status_name(pb.status)).c_str(),
                     pa.compiler_log.c_str(), pb.compiler_log.c_str());
        return kExitDataErr;
    }
    auto report = hintforge::geo_speedup(pa, pb);

    if (opts.json) {
        ordered_json cases = ordered_json::array();
        for (size_t i = 0; i < report.per_case_ratio.size(); i++) {
            cases.push_back({{"case", i},
                             {"time_a", pa.per_case[i].aggregate},
                             {"time_b", pb.per_case[i].aggregate},
                             {"ratio", report.per_case_ratio[i]}});
        }
        ordered_json payload = {{"flags_a", flags_a},
                                {"flags_b", flags_b},
                                {"cases", cases},
                                {"geo_mean", report.geo_mean}};
        auto env = hintforge::make_envelope(payload, "", compiler_id(cfg.cc));
        std::cout << hintforge::envelope_to_json(env).dump(2) << "\n";
    } else {
        std::printf("%-6s %12s %12s %8s\n", "case", "A(s)", "B(s)", "A/B");
        for (size_t i = 0; i < report.per_case_ratio.size(); i++) {
            std::printf("%-6zu %12.6f %12.6f %8.4f\n", i, pa.per_case[i].aggregate,
                        pb.per_case[i].aggregate, report.per_case_ratio[i]);
        }
        std::printf("geo-mean speedup of B over A: %.4fx\n", report.geo_mean);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hintforge: compiler-hint synthesis and profiling toolkit"};
    app.require_subcommand(1);

    CommonOpts common;
    std::string source_path, suite_path, parser = "lexer";
    std::string kb_path, doc_path, out_path = "kb.json", hint_id;
    std::string flags_a = "-O3", flags_b = "-O3";
    bool seed = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", common.config_path, "config file (default hintforge.json)");
        cmd->add_flag("--json", common.json, "machine-readable JSON output");
        auto opt = [&](const char* flag, const char* key, const char* help) {
            cmd->add_option_function<std::string>(
                   flag,
                   [&common, key = std::string(key)](const std::string& v) {
                       common.overrides[key] = v;
                   },
                   help);
        };
        opt("--kb", "kb", "knowledge base file (default: built-in seed)");
        opt("--backend", "backend", "plan backend: mock|http");
        opt("--backend-script", "backend_script", "mock backend script (JSON array)");
        opt("--model", "model", "model name for the http backend");
        opt("--endpoint", "endpoint", "chat-completions endpoint URL");
        opt("-T", "T", "max iterations");
        opt("-N", "N", "candidate plans per iteration");
        opt("--strategy", "strategy", "zero-shot|cot|cot-fewshot");
        opt("--cc", "cc", "compiler driver");
        opt("--flags", "flags", "baseline compiler flags");
        opt("--reps", "reps", "timing repetitions per case");
        opt("--timeout", "timeout_s", "per-case timeout override (seconds)");
        opt("--workspace", "workspace", "session workspace directory");
    };

    auto* optimize = app.add_subcommand("optimize", "run an optimization session");
    optimize->add_option("source", source_path, "C/C++ source file")->required();
    optimize->add_option("suite", suite_path, "test suite JSON")->required();
    add_common(optimize);

    auto* parse = app.add_subcommand("parse", "extract and print program structure");
    parse->add_option("source", source_path, "C/C++ source file")->required();
    parse->add_option("--parser", parser, "lexer|compiler")
        ->check(CLI::IsMember({"lexer", "compiler"}));
    parse->add_flag("--json", common.json, "machine-readable JSON output");

    auto* kb = app.add_subcommand("kb", "knowledge base operations");
    kb->require_subcommand(1);
    auto* kb_build = kb->add_subcommand("build", "ingest a hint doc file into a KB");
    kb_build->add_option("doc", doc_path, "hint documentation JSON");
    kb_build->add_flag("--seed", seed, "use the built-in seed documentation");
    kb_build->add_option("-o,--out", out_path, "output KB path");
    auto* kb_check = kb->add_subcommand("check", "compile every annotated example");
    kb_check->add_option("--kb", kb_path, "knowledge base file");
    std::string check_cc = "gcc";
    kb_check->add_option("--cc", check_cc, "compiler for example checks");
    auto* kb_show = kb->add_subcommand("show", "print one hint entry");
    kb_show->add_option("hint_id", hint_id, "hint id, e.g. gcc.attr.hot")->required();
    kb_show->add_option("--kb", kb_path, "knowledge base file");
    kb_show->add_flag("--json", common.json, "machine-readable JSON output");

    auto* bench = app.add_subcommand("bench", "profile one source under two flag sets");
    bench->add_option("source", source_path, "C/C++ source file")->required();
    bench->add_option("suite", suite_path, "test suite JSON")->required();
    bench->add_option("--flags-a", flags_a, "first flag set (baseline)");
    bench->add_option("--flags-b", flags_b, "second flag set");
    add_common(bench);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (optimize->parsed()) {
            if (!fs::exists(source_path) || !fs::exists(suite_path)) {
                std::fprintf(stderr, "no such file: %s\n",
                             (!fs::exists(source_path) ? source_path : suite_path).c_str());
                return kExitUsage;
            }
            return cmd_optimize(source_path, suite_path, common);
        }
        if (parse->parsed()) {
            if (!fs::exists(source_path)) {
                std::fprintf(stderr, "no such file: %s\n", source_path.c_str());
                return kExitUsage;
            }
            return cmd_parse(source_path, parser, common);
        }
        if (kb_build->parsed()) {
            if (!seed && doc_path.empty()) {
                std::fprintf(stderr, "kb build needs a doc file or --seed\n");
                return kExitUsage;
            }
            return cmd_kb_build(doc_path, seed, out_path);
        }
        if (kb_check->parsed()) return cmd_kb_check(kb_path, check_cc);
        if (kb_show->parsed()) return cmd_kb_show(hint_id, kb_path, common.json);
        if (bench->parsed()) {
            if (!fs::exists(source_path) || !fs::exists(suite_path)) {
                std::fprintf(stderr, "no such file: %s\n",
                             (!fs::exists(source_path) ? source_path : suite_path).c_str());
                return kExitUsage;
            }
            return cmd_bench(source_path, suite_path, flags_a, flags_b, common);
        }
    } catch (const hintforge::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        switch (e.code()) {
            case hintforge::ErrorCode::BaselineFails:
                return kExitBaselineFails;
            case hintforge::ErrorCode::ConfigParse:
            case hintforge::ErrorCode::UnknownKey:
                return kExitConfig;
            case hintforge::ErrorCode::CaseSetMismatch:
                return kExitDataErr;
            case hintforge::ErrorCode::IoError:
                return kExitUsage;
            default:
                return 1;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
