#pragma once

// Compile a program variant, check it against the test suite, and measure
// wall-clock runtime. Timing runs hold a process-wide lock so concurrent
// compilation never contaminates measurements. Unknown attributes are
// promoted to hard errors (-Werror=attributes) so hallucinated hints are
// rejected at compile time instead of being silently ignored.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hintforge/errors.hpp"
#include "hintforge/subprocess.hpp"

namespace hintforge {

enum class Comparison { ByteExact, FloatTolerant };

struct TestCase {
    std::vector<std::string> args;
    std::string stdin_data;
    std::string expected_stdout;
    double timeout_s = 10.0;
};

struct TestSuite {
    std::vector<TestCase> cases;
    Comparison comparison = Comparison::ByteExact;
    double eps = 1e-6; // relative tolerance in float-tolerant mode
};

enum class ProfileStatus { CompileFail, TestFail, Timeout, Pass };

inline std::string_view profile_status_name(ProfileStatus s) {
    switch (s) {
        case ProfileStatus::CompileFail: return "COMPILE_FAIL";
        case ProfileStatus::TestFail:    return "TEST_FAIL";
        case ProfileStatus::Timeout:     return "TIMEOUT";
        case ProfileStatus::Pass:        return "PASS";
    }
    return "?";
}

enum class CaseVerdict { Pass, TestFail, Timeout };

struct CaseResult {
    CaseVerdict verdict = CaseVerdict::Pass;
    std::vector<double> runtimes; // per-repetition wall-clock seconds
    double aggregate = 0.0;
    std::string detail;           // mismatch/crash/timeout note
};

struct ProfileResult {
    ProfileStatus status = ProfileStatus::Pass;
    std::string compiler_log;
    std::vector<CaseResult> per_case;
    std::optional<double> metric; // total aggregate seconds; present iff PASS
};

struct SpeedupReport {
    std::vector<double> per_case_ratio;
    double geo_mean = 1.0;
};

struct CompilerConfig {
    std::string cc = "g++";
    std::vector<std::string> flags = {"-O3"};
    bool strict_attributes = true; // append -Werror=attributes
};

struct NoiseFloor {
    double abs_s = 0.001;
    double frac = 0.02;
};

// --- test suite I/O ----------------------------------------------------------

namespace detail {

inline std::string read_file_or_throw(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file_or_throw(const std::filesystem::path& path,
                                std::string_view data) {
    std::filesystem::create_directories(path.parent_path().empty()
                                            ? std::filesystem::path(".")
                                            : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

} // namespace detail

inline TestSuite load_suite(const std::string& path) {
    namespace fs = std::filesystem;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(detail::read_file_or_throw(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ConfigParse,
                    "test suite " + path + " is not valid JSON: " + e.what());
    }
    TestSuite suite;
    if (!j.is_object() || !j.contains("cases") || !j["cases"].is_array() ||
        j["cases"].empty()) {
        throw Error(ErrorCode::ConfigParse,
                    "test suite must contain a non-empty 'cases' array");
    }
    std::string cmp = j.value("comparison", std::string("byte-exact"));
    if (cmp == "byte-exact") suite.comparison = Comparison::ByteExact;
    else if (cmp == "float-tolerant") suite.comparison = Comparison::FloatTolerant;
    else throw Error(ErrorCode::ConfigParse, "unknown comparison mode '" + cmp + "'");
    suite.eps = j.value("eps", 1e-6);

    fs::path base = fs::path(path).parent_path();
    for (const auto& jc : j["cases"]) {
        TestCase c;
        for (const auto& a : jc.value("args", nlohmann::json::array())) {
            c.args.push_back(a.get<std::string>());
        }
        if (jc.contains("stdin")) c.stdin_data = jc["stdin"].get<std::string>();
        else if (jc.contains("stdin_path")) {
            c.stdin_data = detail::read_file_or_throw(base / jc["stdin_path"].get<std::string>());
        }
        if (jc.contains("expected_stdout")) {
            c.expected_stdout = jc["expected_stdout"].get<std::string>();
        } else if (jc.contains("expected_stdout_path")) {
            c.expected_stdout =
                detail::read_file_or_throw(base / jc["expected_stdout_path"].get<std::string>());
        } else {
            throw Error(ErrorCode::ConfigParse, "case is missing expected_stdout");
        }
        c.timeout_s = jc.value("timeout_s", 10.0);
        if (c.timeout_s <= 0) {
            throw Error(ErrorCode::ConfigParse, "case timeout_s must be > 0");
        }
        suite.cases.push_back(std::move(c));
    }
    return suite;
}

// --- output comparison ---------------------------------------------------------

namespace detail {

inline bool outputs_match(std::string_view actual, std::string_view expected,
                          Comparison mode, double eps) {
    if (mode == Comparison::ByteExact) return actual == expected;
    auto tokens = [](std::string_view s) {
        std::vector<std::string> out;
        std::string cur;
        for (char c : s) {
            if (std::isspace(static_cast<unsigned char>(c))) {
                if (!cur.empty()) { out.push_back(cur); cur.clear(); }
            } else {
                cur += c;
            }
        }
        if (!cur.empty()) out.push_back(cur);
        return out;
    };
    auto ta = tokens(actual), te = tokens(expected);
    if (ta.size() != te.size()) return false;
    for (size_t i = 0; i < ta.size(); i++) {
        char* enda = nullptr;
        char* ende = nullptr;
        double va = std::strtod(ta[i].c_str(), &enda);
        double ve = std::strtod(te[i].c_str(), &ende);
        bool num_a = enda && *enda == '\0' && !ta[i].empty();
        bool num_e = ende && *ende == '\0' && !te[i].empty();
        if (num_a && num_e) {
            double scale = std::max({1.0, std::fabs(va), std::fabs(ve)});
            if (std::fabs(va - ve) > eps * scale) return false;
        } else if (ta[i] != te[i]) {
            return false;
        }
    }
    return true;
}

inline std::mutex& timing_lock() {
    static std::mutex m;
    return m;
}

} // namespace detail

// Mean of the repetitions after shedding the single slowest one (cold-start).
inline double aggregate_runtimes(const std::vector<double>& runtimes) {
    if (runtimes.empty()) return 0.0;
    if (runtimes.size() == 1) return runtimes[0];
    auto worst = std::max_element(runtimes.begin(), runtimes.end());
    double sum = 0.0;
    for (auto it = runtimes.begin(); it != runtimes.end(); ++it) {
        if (it != worst) sum += *it;
    }
    return sum / static_cast<double>(runtimes.size() - 1);
}

// --- compile / run -------------------------------------------------------------

struct CompileOutcome {
    bool ok = false;
    std::string binary_path;
    std::string log;
};

inline CompileOutcome compile(const std::string& source_text, const CompilerConfig& cfg,
                              const std::filesystem::path& workdir,
                              const std::string& filename) {
    namespace fs = std::filesystem;
    fs::create_directories(workdir);
    fs::path src = workdir / filename;
    detail::write_file_or_throw(src, source_text);
    fs::path bin = src;
    bin.replace_extension(".bin");

    std::vector<std::string> argv{cfg.cc};
    for (const auto& f : cfg.flags) argv.push_back(f);
    if (cfg.strict_attributes) argv.push_back("-Werror=attributes");
    argv.push_back(src.string());
    argv.push_back("-o");
    argv.push_back(bin.string());

    RunResult r = run_process(argv, {}, 120.0);
    if (r.exited && r.exit_code == 127) {
        throw Error(ErrorCode::CompilerNotFound, "compiler not found: " + cfg.cc);
    }
    CompileOutcome out;
    out.log = r.err + r.out;
    out.ok = r.exited && r.exit_code == 0;
    if (out.ok) out.binary_path = bin.string();
    return out;
}

// Runs one test case `repetitions` times under the global timing lock.
// PASS requires every repetition to exit 0 within the timeout with matching
// output.
inline CaseResult run_case(const std::string& binary_path, const TestCase& test,
                           int repetitions, Comparison mode, double eps) {
    CaseResult result;
    std::lock_guard<std::mutex> guard(detail::timing_lock());
    for (int rep = 0; rep < repetitions; rep++) {
        std::vector<std::string> argv{binary_path};
        for (const auto& a : test.args) argv.push_back(a);
        RunResult r = run_process(argv, test.stdin_data, test.timeout_s);
        if (r.timed_out) {
            result.verdict = CaseVerdict::Timeout;
            result.detail = "timed out after " + std::to_string(test.timeout_s) + "s";
            return result;
        }
        if (!r.exited || r.exit_code != 0) {
            result.verdict = CaseVerdict::TestFail;
            result.detail = r.exited
                                ? "exit code " + std::to_string(r.exit_code)
                                : "killed by signal " + std::to_string(r.term_signal);
            if (!r.err.empty()) result.detail += ": " + r.err.substr(0, 400);
            return result;
        }
        if (!detail::outputs_match(r.out, test.expected_stdout, mode, eps)) {
            result.verdict = CaseVerdict::TestFail;
            result.detail = "stdout mismatch; got " +
                            r.out.substr(0, 200) + (r.out.size() > 200 ? "..." : "");
            return result;
        }
        result.runtimes.push_back(r.wall_seconds);
    }
    result.aggregate = aggregate_runtimes(result.runtimes);
    return result;
}

// --- metric ----------------------------------------------------------------

inline SpeedupReport geo_speedup(const ProfileResult& baseline,
                                 const ProfileResult& candidate) {
    if (baseline.status != ProfileStatus::Pass || candidate.status != ProfileStatus::Pass) {
        throw Error(ErrorCode::CaseSetMismatch, "both profiles must have status PASS");
    }
    if (baseline.per_case.size() != candidate.per_case.size() ||
        baseline.per_case.empty()) {
        throw Error(ErrorCode::CaseSetMismatch, "profiles cover different case sets");
    }
    SpeedupReport rep;
    double log_sum = 0.0;
    for (size_t i = 0; i < baseline.per_case.size(); i++) {
        double tb = baseline.per_case[i].aggregate;
        double tc = candidate.per_case[i].aggregate;
        if (tb <= 0.0 || tc <= 0.0) {
            throw Error(ErrorCode::NonPositiveTime,
                        "case " + std::to_string(i) + " has non-positive time");
        }
        double ratio = tb / tc;
        rep.per_case_ratio.push_back(ratio);
        log_sum += std::log(ratio);
    }
    rep.geo_mean = std::exp(log_sum / static_cast<double>(rep.per_case_ratio.size()));
    return rep;
}

// Algorithm comparison step with a dead-band: a candidate only replaces the
// best when it beats it by more than the noise floor.
inline bool improves(const ProfileResult& candidate, const ProfileResult& best,
                     const NoiseFloor& nf = {}) {
    if (candidate.status != ProfileStatus::Pass || !candidate.metric || !best.metric) {
        return false;
    }
    double floor = std::max(nf.abs_s, nf.frac * *best.metric);
    return *candidate.metric < *best.metric - floor;
}

// --- profiler interface ------------------------------------------------------

class Profiler {
public:
    virtual ~Profiler() = default;

    // Compile + test + time one variant. `filename` names the written source
    // (its extension selects the language for the compiler driver).
    virtual ProfileResult profile(const std::string& source_text, const TestSuite& suite,
                                  const std::string& filename) = 0;

    // Batch hook: compilation may be parallelized, timing stays serial.
    virtual std::vector<ProfileResult> profile_batch(
        const std::vector<std::string>& sources, const TestSuite& suite,
        const std::vector<std::string>& filenames) {
        std::vector<ProfileResult> out;
        for (size_t i = 0; i < sources.size(); i++) {
            out.push_back(profile(sources[i], suite, filenames[i]));
        }
        return out;
    }
};

class LocalProfiler : public Profiler {
public:
    LocalProfiler(CompilerConfig cfg, std::filesystem::path workdir, int repetitions = 10)
        : cfg_(std::move(cfg)), workdir_(std::move(workdir)), reps_(repetitions) {}

    ProfileResult profile(const std::string& source_text, const TestSuite& suite,
                          const std::string& filename) override {
        CompileOutcome c = compile(source_text, cfg_, workdir_, filename);
        return run_suite(c, suite);
    }

    std::vector<ProfileResult> profile_batch(const std::vector<std::string>& sources,
                                             const TestSuite& suite,
                                             const std::vector<std::string>& filenames) override {
        // compile concurrently, then execute serially in plan order
        std::vector<std::future<CompileOutcome>> jobs;
        for (size_t i = 0; i < sources.size(); i++) {
            jobs.push_back(std::async(std::launch::async, [this, &sources, &filenames, i] {
                return compile(sources[i], cfg_, workdir_, filenames[i]);
            }));
        }
        std::vector<ProfileResult> out;
        for (auto& job : jobs) {
            out.push_back(run_suite(job.get(), suite));
        }
        return out;
    }

    const CompilerConfig& config() const { return cfg_; }
    int repetitions() const { return reps_; }

private:
    ProfileResult run_suite(const CompileOutcome& c, const TestSuite& suite) {
        ProfileResult result;
        result.compiler_log = c.log;
        if (!c.ok) {
            result.status = ProfileStatus::CompileFail;
            return result;
        }
        bool any_fail = false, any_timeout = false;
        double total = 0.0;
        for (const auto& test : suite.cases) {
            CaseResult cr = run_case(c.binary_path, test, reps_, suite.comparison, suite.eps);
            any_fail |= cr.verdict == CaseVerdict::TestFail;
            any_timeout |= cr.verdict == CaseVerdict::Timeout;
            total += cr.aggregate;
            result.per_case.push_back(std::move(cr));
        }
        // worst verdict wins: TEST_FAIL outranks TIMEOUT outranks PASS
        if (any_fail) result.status = ProfileStatus::TestFail;
        else if (any_timeout) result.status = ProfileStatus::Timeout;
        else {
            result.status = ProfileStatus::Pass;
            result.metric = total;
        }
        return result;
    }

    CompilerConfig cfg_;
    std::filesystem::path workdir_;
    int reps_;
};

} // namespace hintforge
