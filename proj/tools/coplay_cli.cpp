/*
 * Copyright (c) 2026 The Coplay Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// coplay command-line runner. Talks to the runtime only through the C API.

#include <cstdio>
#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "coplay/coplay.h"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitTaskFailure = 1;
constexpr int kExitConfigError = 2;

struct ConfigDeleter {
    void operator()(coplay_config* c) const { coplay_config_destroy(c); }
};
struct ReportDeleter {
    void operator()(coplay_report* r) const { coplay_report_destroy(r); }
};
using ConfigPtr = std::unique_ptr<coplay_config, ConfigDeleter>;
using ReportPtr = std::unique_ptr<coplay_report, ReportDeleter>;

// Reports a failed call and tells the caller to bail out.
bool failed(coplay_status status, const char* what)
{
    if (status == COPLAY_OK) {
        return false;
    }
    std::fprintf(stderr, "coplay: %s: %s (%s)\n", what, coplay_last_error(), coplay_status_string(status));
    return true;
}

void log_to_stderr(const char* message, void*)
{
    std::fprintf(stderr, "%s\n", message);
}

struct RunOptions {
    std::string task_file;
    std::string app = "auto";
    std::string config_file;
    std::optional<std::uint64_t> seed;
    std::string provider;
    std::string out;
    std::string truth;
    std::string replay;
    std::string record;
    std::string farm;
    std::string fault_table;
    std::optional<int> parallel;
    std::optional<double> noise;
    std::optional<std::int64_t> clock_delta;
    std::vector<std::string> ttl;
    std::vector<std::string> latency;
};

// "key=ms" pairs into a JSON object; false on a malformed pair.
bool pairs_to_json(const std::vector<std::string>& pairs, nlohmann::json& out, const char* flag)
{
    out = nlohmann::json::object();
    for (const auto& p : pairs) {
        const auto eq = p.find('=');
        char* end = nullptr;
        const long long ms = eq == std::string::npos ? 0 : std::strtoll(p.c_str() + eq + 1, &end, 10);
        if (eq == std::string::npos || eq == 0 || end == p.c_str() + eq + 1 || *end != '\0') {
            std::fprintf(stderr, "coplay: %s expects key=ms, got \"%s\"\n", flag, p.c_str());
            return false;
        }
        out[p.substr(0, eq)] = ms;
    }
    return true;
}

int do_run(const RunOptions& o)
{
    coplay_config* raw = nullptr;
    const auto status = o.config_file.empty() ? coplay_config_create(&raw) : coplay_config_load(o.config_file.c_str(), &raw);
    if (failed(status, "loading configuration")) {
        return kExitConfigError;
    }
    ConfigPtr config(raw);
    coplay_config_set_log_callback(config.get(), log_to_stderr, nullptr);

    bool bad = false;
    if (o.seed) {
        bad = bad || failed(coplay_config_set_seed(config.get(), *o.seed), "--seed");
    }
    if (!o.provider.empty()) {
        bad = bad || failed(coplay_config_set_provider(config.get(), o.provider.c_str()), "--provider");
    }
    if (!o.out.empty()) {
        bad = bad || failed(coplay_config_set_output_dir(config.get(), o.out.c_str()), "--out");
    }
    if (!o.truth.empty()) {
        bad = bad || failed(coplay_config_set_truth_dir(config.get(), o.truth.c_str()), "--truth");
    }
    if (!o.replay.empty()) {
        bad = bad || failed(coplay_config_set_replay_dir(config.get(), o.replay.c_str()), "--replay");
    }
    if (!o.record.empty()) {
        bad = bad || failed(coplay_config_set_record_dir(config.get(), o.record.c_str()), "--record");
    }
    if (!o.farm.empty()) {
        bad = bad || failed(coplay_config_set_farm_file(config.get(), o.farm.c_str()), "--farm");
    }
    if (!o.fault_table.empty()) {
        bad = bad || failed(coplay_config_set_fault_table(config.get(), o.fault_table.c_str()), "--fault-table");
    }
    if (o.parallel) {
        bad = bad || failed(coplay_config_set_parallel(config.get(), *o.parallel), "--parallel");
    }
    if (o.noise) {
        bad = bad || failed(coplay_config_set_noise(config.get(), *o.noise), "--noise");
    }
    if (o.clock_delta) {
        bad = bad || failed(coplay_config_set_clock_delta_ms(config.get(), *o.clock_delta), "--clock-delta");
    }
    if (!o.ttl.empty() || !o.latency.empty()) {
        nlohmann::json overlay = nlohmann::json::object();
        nlohmann::json pairs;
        if (!o.ttl.empty()) {
            if (!pairs_to_json(o.ttl, pairs, "--ttl")) {
                return kExitConfigError;
            }
            overlay["ttl_overrides_ms"] = pairs;
        }
        if (!o.latency.empty()) {
            if (!pairs_to_json(o.latency, pairs, "--latency")) {
                return kExitConfigError;
            }
            overlay["user_latency_ms"] = pairs;
        }
        bad = bad || failed(coplay_config_merge_json(config.get(), overlay.dump().c_str()), "--ttl/--latency");
    }
    if (bad) {
        return kExitConfigError;
    }

    int tasks = 0;
    int successes = 0;
    if (failed(coplay_run_file(config.get(), o.task_file.c_str(), o.app.c_str(), &tasks, &successes), "run")) {
        return kExitConfigError;
    }
    std::printf("%d/%d tasks succeeded\n", successes, tasks);
    return successes == tasks ? kExitSuccess : kExitTaskFailure;
}

int do_score(const std::string& traces, const std::string& truth, const std::string& out)
{
    coplay_report* raw = nullptr;
    if (failed(coplay_score_dirs(traces.c_str(), truth.c_str(), out.c_str(), &raw), "score")) {
        return kExitConfigError;
    }
    ReportPtr report(raw);
    std::fputs(coplay_report_table(report.get()), stdout);
    return coplay_report_successes(report.get()) == coplay_report_total(report.get()) ? kExitSuccess
                                                                                      : kExitTaskFailure;
}

int do_list_apps()
{
    for (std::size_t i = 0; i < coplay_app_count(); ++i) {
        std::printf("%-14s %s\n", coplay_app_id(i), coplay_app_description(i));
    }
    return kExitSuccess;
}

int do_export(const std::string& dir)
{
    if (failed(coplay_export_suite(dir.c_str()), "export-suite")) {
        return kExitConfigError;
    }
    std::printf("%s/suite.tasks\n", dir.c_str());
    return kExitSuccess;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Multi-user GUI test runner over simulated devices"};
    app.set_version_flag("--version", std::string(coplay_version()));
    app.require_subcommand(1);

    RunOptions run;
    auto* run_cmd = app.add_subcommand("run", "Run every task of a task file and write traces");
    run_cmd->add_option("task_file", run.task_file, "Task file, one task per line")->required();
    run_cmd->add_option("--app", run.app, "Sim app id, or auto to pick by task keywords")->capture_default_str();
    run_cmd->add_option("--config", run.config_file, "JSON run configuration");
    run_cmd->add_option("--seed", run.seed, "Base seed (default 7)");
    run_cmd->add_option("--provider", run.provider, "scripted-oracle, recorded-replay, remote-endpoint or random");
    run_cmd->add_option("--out", run.out, "Output directory (default coplay-out)");
    run_cmd->add_option("--truth", run.truth, "Directory of ground-truth files");
    run_cmd->add_option("--replay", run.replay, "Directory of recordings for recorded-replay");
    run_cmd->add_option("--record", run.record, "Record every exchange into this directory");
    run_cmd->add_option("--farm", run.farm, "Device farm JSON (default eight desk devices)");
    run_cmd->add_option("--fault-table", run.fault_table, "Fault table JSON");
    run_cmd->add_option("--parallel", run.parallel, "Concurrent task runs (default 1)");
    run_cmd->add_option("--noise", run.noise, "Wrong-action probability layered over the provider");
    run_cmd->add_option("--clock-delta", run.clock_delta, "Simulated latency per agent action in ms (default 1000)");
    run_cmd->add_option("--ttl", run.ttl, "TTL override, cue=ms (repeatable)")->delimiter(',');
    run_cmd->add_option("--latency", run.latency, "Extra latency for one user, index=ms (repeatable)")->delimiter(',');

    std::string traces_dir;
    std::string truth_dir;
    std::string report_out;
    auto* score_cmd = app.add_subcommand("score", "Score a directory of traces against ground truths");
    score_cmd->add_option("traces_dir", traces_dir)->required();
    score_cmd->add_option("truth_dir", truth_dir)->required();
    score_cmd->add_option("--out", report_out, "Report path (default <traces_dir>/report.json)");

    auto* list_cmd = app.add_subcommand("list-apps", "List the simulated apps");

    std::string export_dir;
    auto* export_cmd = app.add_subcommand("export-suite", "Write the built-in task suite and its ground truths");
    export_cmd->add_option("dir", export_dir)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitSuccess : kExitConfigError;
    }

    if (*run_cmd) {
        return do_run(run);
    }
    if (*score_cmd) {
        return do_score(traces_dir, truth_dir, report_out.empty() ? traces_dir + "/report.json" : report_out);
    }
    if (*list_cmd) {
        return do_list_apps();
    }
    if (*export_cmd) {
        return do_export(export_dir);
    }
    return kExitConfigError;
}
