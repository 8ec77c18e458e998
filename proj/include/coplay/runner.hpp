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

#ifndef COPLAY_RUNNER_HPP
#define COPLAY_RUNNER_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coplay/eval.hpp"
#include "coplay/orchestrator.hpp"
#include "coplay/providers.hpp"

namespace coplay {

enum class ProviderKind { ScriptedOracle, RecordedReplay, RemoteEndpoint, Random };

std::string_view to_string(ProviderKind kind);
ProviderKind provider_kind_from_string(std::string_view text); // InvalidConfig

struct RunConfig {
    std::string farm_file; // empty: the eight-device desk farm
    ProviderKind provider = ProviderKind::ScriptedOracle;
    RemoteEndpointConfig remote;
    /// Wrong-action probability layered over the provider.
    double noise = 0.0;
    std::uint64_t seed = 7;
    SimDuration clock_delta{1000};
    std::map<std::string, SimDuration> ttl_overrides;
    std::map<UserId, SimDuration> user_latency;
    int step_budget = 50;
    int retry_cap = 3;
    int history_window = 0;
    std::string fault_table_file;
    /// Ground truths for scoring and for the oracle's scripts. Built-in
    /// scenarios are used for tasks that have no file here.
    std::string truth_dir;
    std::string replay_dir;
    std::string record_dir;
    std::string output_dir = "coplay-out";
    int parallel = 1;
    /// Progress messages; the CLI sends them to stderr.
    std::function<void(std::string_view)> log;

    /// JSON with the same field names; unknown keys are rejected.
    static RunConfig from_file(const std::string& path);
    static RunConfig from_json_text(const std::string& text);
    void merge_json_text(const std::string& text);

    /// Throws InvalidConfig.
    void validate() const;
};

/// Per-agent oracle scripts for one task: an explicit truth when there is
/// one, else a built-in scenario with the same text. Throws MissingTruth.
std::map<UserId, std::vector<std::string>> oracle_script(const std::string& task_id, const std::string& task_text,
                                                         const std::map<std::string, GroundTruthTrace>& truths);

ProviderFactory make_provider_factory(const RunConfig& config, const std::string& task_id,
                                      const std::string& task_text,
                                      const std::map<std::string, GroundTruthTrace>& truths,
                                      std::shared_ptr<ReplayRecorder> recorder);

OrchestratorConfig orchestrator_config(const RunConfig& config);

struct RunSummary {
    int tasks = 0;
    int successes = 0;
    std::vector<std::string> trace_files;
    std::optional<std::string> report_file;
    std::vector<RunTrace> traces;
};

/// Runs every task of the file against `app_id` ("auto" picks the app by
/// task keywords), writing `<out>/<task_id>.trace.json` for each and a
/// suite report when every task has a ground truth.
/// Throws Parse (naming file and line), Io, InvalidConfig, UnknownApp.
RunSummary cmd_run(const std::string& task_file, const std::string& app_id, const RunConfig& config);

/// Scores traces against truths and writes the report to `report_path`
/// (skipped when empty). Throws EmptySuite or MissingTruth.
SuiteReport cmd_score(const std::string& traces_dir, const std::string& truth_dir, const std::string& report_path);

/// Writes `suite.tasks` and `truth/<id>.json` for the built-in scenarios.
void export_builtin_suite(const std::string& dir);

} // namespace coplay

#endif // COPLAY_RUNNER_HPP
