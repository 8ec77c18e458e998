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

#include "coplay/runner.hpp"

#include <atomic>
#include <filesystem>
#include <mutex>
#include <set>
#include <thread>

#include <json.hpp>

#include "coplay/error.hpp"
#include "coplay/scenarios.hpp"
#include "coplay/trace_io.hpp"

namespace coplay {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::pair<ProviderKind, std::string_view> kProviderNames[] = {
    {ProviderKind::ScriptedOracle, "scripted-oracle"},
    {ProviderKind::RecordedReplay, "recorded-replay"},
    {ProviderKind::RemoteEndpoint, "remote-endpoint"},
    {ProviderKind::Random, "random"},
};

const std::set<std::string> kConfigKeys = {
    "farm_file",     "provider",   "remote",         "noise",      "seed",         "clock_delta_ms",
    "ttl_overrides_ms", "user_latency_ms", "step_budget", "retry_cap", "history_window", "fault_table",
    "truth_dir",     "replay_dir", "record_dir",     "output_dir", "parallel",
};

const std::set<std::string> kRemoteKeys = {"endpoint",          "model",       "api_key_env", "timeout_ms",
                                           "transport_retries", "temperature"};

void check_keys(const json& node, const std::set<std::string>& allowed, const std::string& where)
{
    if (!node.is_object()) {
        fail(ErrorCode::InvalidConfig, where + " must be a JSON object");
    }
    for (const auto& [key, value] : node.items()) {
        if (!allowed.contains(key)) {
            fail(ErrorCode::InvalidConfig, "unknown " + where + " key \"" + key + "\"");
        }
    }
}

void apply_json(RunConfig& config, const json& doc)
{
    check_keys(doc, kConfigKeys, "config");
    const auto str = [&](const char* key, std::string& field) {
        if (doc.contains(key)) {
            field = doc.at(key).get<std::string>();
        }
    };
    str("farm_file", config.farm_file);
    if (doc.contains("provider")) {
        config.provider = provider_kind_from_string(doc.at("provider").get<std::string>());
    }
    if (doc.contains("remote")) {
        const auto& r = doc.at("remote");
        check_keys(r, kRemoteKeys, "remote");
        if (r.contains("endpoint")) {
            config.remote.endpoint = r.at("endpoint").get<std::string>();
        }
        if (r.contains("model")) {
            config.remote.model = r.at("model").get<std::string>();
        }
        if (r.contains("api_key_env")) {
            config.remote.api_key_env = r.at("api_key_env").get<std::string>();
        }
        if (r.contains("timeout_ms")) {
            config.remote.timeout = std::chrono::milliseconds{r.at("timeout_ms").get<std::int64_t>()};
        }
        if (r.contains("transport_retries")) {
            config.remote.transport_retries = r.at("transport_retries").get<int>();
        }
        if (r.contains("temperature")) {
            config.remote.temperature = r.at("temperature").get<double>();
        }
    }
    if (doc.contains("noise")) {
        config.noise = doc.at("noise").get<double>();
    }
    if (doc.contains("seed")) {
        config.seed = doc.at("seed").get<std::uint64_t>();
    }
    if (doc.contains("clock_delta_ms")) {
        config.clock_delta = SimDuration{doc.at("clock_delta_ms").get<std::int64_t>()};
    }
    if (doc.contains("ttl_overrides_ms")) {
        for (const auto& [cue, ms] : doc.at("ttl_overrides_ms").items()) {
            config.ttl_overrides[cue] = SimDuration{ms.get<std::int64_t>()};
        }
    }
    if (doc.contains("user_latency_ms")) {
        for (const auto& [user, ms] : doc.at("user_latency_ms").items()) {
            int index = 0;
            try {
                index = std::stoi(user);
            } catch (const std::exception&) {
                fail(ErrorCode::InvalidConfig, "user_latency_ms keys must be user indices, got \"" + user + "\"");
            }
            config.user_latency[UserId{index}] = SimDuration{ms.get<std::int64_t>()};
        }
    }
    if (doc.contains("step_budget")) {
        config.step_budget = doc.at("step_budget").get<int>();
    }
    if (doc.contains("retry_cap")) {
        config.retry_cap = doc.at("retry_cap").get<int>();
    }
    if (doc.contains("history_window")) {
        config.history_window = doc.at("history_window").get<int>();
    }
    str("fault_table", config.fault_table_file);
    str("truth_dir", config.truth_dir);
    str("replay_dir", config.replay_dir);
    str("record_dir", config.record_dir);
    str("output_dir", config.output_dir);
    if (doc.contains("parallel")) {
        config.parallel = doc.at("parallel").get<int>();
    }
}

std::uint64_t task_seed(std::uint64_t base, std::size_t ordinal)
{
    std::uint64_t state = base + 0xD1B54A32D192ED03ULL * (ordinal + 1);
    return next_random(state);
}

void log_line(const RunConfig& config, const std::string& message)
{
    if (config.log) {
        config.log(message);
    }
}

struct PreparedTask {
    TaskFileEntry entry;
    TaskSpec spec;
    std::string app_id;
    std::uint64_t seed = 0;
    std::optional<GroundTruthTrace> truth;
};

} // namespace

std::string_view to_string(ProviderKind kind)
{
    for (const auto& [k, name] : kProviderNames) {
        if (k == kind) {
            return name;
        }
    }
    return "scripted-oracle";
}

ProviderKind provider_kind_from_string(std::string_view text)
{
    for (const auto& [k, name] : kProviderNames) {
        if (name == text) {
            return k;
        }
    }
    fail(ErrorCode::InvalidConfig, "unknown provider \"" + std::string(text) +
                                       "\" (expected scripted-oracle, recorded-replay, remote-endpoint or random)");
}

RunConfig RunConfig::from_file(const std::string& path)
{
    return from_json_text(read_text_file(path));
}

RunConfig RunConfig::from_json_text(const std::string& text)
{
    RunConfig config;
    config.merge_json_text(text);
    return config;
}

void RunConfig::merge_json_text(const std::string& text)
{
    try {
        apply_json(*this, json::parse(text));
    } catch (const json::exception& e) {
        fail(ErrorCode::InvalidConfig, std::string("config: ") + e.what());
    }
}

void RunConfig::validate() const
{
    const auto require = [](bool ok, const std::string& message) {
        if (!ok) {
            fail(ErrorCode::InvalidConfig, message);
        }
    };
    require(clock_delta.count() > 0, "clock_delta_ms must be positive");
    require(step_budget > 0, "step_budget must be positive");
    require(retry_cap >= 0, "retry_cap must not be negative");
    require(history_window >= 0, "history_window must not be negative");
    require(parallel > 0, "parallel must be positive");
    require(noise >= 0.0 && noise <= 1.0, "noise must lie in [0, 1]");
    require(!output_dir.empty(), "output_dir must not be empty");
    for (const auto& [cue, ttl] : ttl_overrides) {
        require(ttl.count() > 0, "ttl override for \"" + cue + "\" must be positive");
    }
    for (const auto& [user, latency] : user_latency) {
        require(latency.count() >= 0, "latency for " + to_string(user) + " must not be negative");
    }
    require(remote.timeout.count() > 0, "remote.timeout_ms must be positive");
    require(remote.transport_retries >= 0, "remote.transport_retries must not be negative");
    if (provider == ProviderKind::RemoteEndpoint) {
        require(!remote.endpoint.empty(), "remote-endpoint provider needs remote.endpoint");
        require(!remote.model.empty(), "remote-endpoint provider needs remote.model");
    }
    if (provider == ProviderKind::RecordedReplay) {
        require(!replay_dir.empty(), "recorded-replay provider needs replay_dir");
    }
}

std::map<UserId, std::vector<std::string>> oracle_script(const std::string& task_id, const std::string& task_text,
                                                         const std::map<std::string, GroundTruthTrace>& truths)
{
    if (const auto it = truths.find(task_id); it != truths.end()) {
        return it->second.per_device_actions;
    }
    if (const auto* scenario = find_scenario_by_text(task_text)) {
        return scenario->truth;
    }
    fail(ErrorCode::MissingTruth, "no ground truth to script the oracle for task " + task_id);
}

ProviderFactory make_provider_factory(const RunConfig& config, const std::string& task_id,
                                      const std::string& task_text,
                                      const std::map<std::string, GroundTruthTrace>& truths,
                                      std::shared_ptr<ReplayRecorder> recorder)
{
    ProviderFactory base;
    switch (config.provider) {
    case ProviderKind::ScriptedOracle: {
        auto scripts = oracle_script(task_id, task_text, truths);
        base = [scripts](const AgentSetup& setup) -> std::unique_ptr<CompletionProvider> {
            const auto it = scripts.find(setup.user);
            return std::make_unique<ScriptedOracleProvider>(it == scripts.end() ? std::vector<std::string>{}
                                                                                : it->second);
        };
        break;
    }
    case ProviderKind::RecordedReplay: {
        const auto log = ReplayLog::load((fs::path(config.replay_dir) / (task_id + ".replay.json")).string());
        base = [log](const AgentSetup& setup) -> std::unique_ptr<CompletionProvider> {
            const auto it = log.agents.find(setup.user);
            return std::make_unique<RecordedReplayProvider>(it == log.agents.end() ? std::vector<ReplayEntry>{}
                                                                                   : it->second);
        };
        break;
    }
    case ProviderKind::RemoteEndpoint: {
        const auto remote = config.remote;
        base = [remote](const AgentSetup&) -> std::unique_ptr<CompletionProvider> {
            return std::make_unique<RemoteEndpointProvider>(remote);
        };
        break;
    }
    case ProviderKind::Random:
        base = [](const AgentSetup& setup) -> std::unique_ptr<CompletionProvider> {
            return std::make_unique<RandomProvider>(setup.task->users, setup.seed);
        };
        break;
    }
    const double noise = config.noise;
    return [base, noise, recorder](const AgentSetup& setup) -> std::unique_ptr<CompletionProvider> {
        auto provider = base(setup);
        if (noise > 0.0) {
            provider = std::make_unique<NoisyProvider>(std::move(provider), noise, setup.seed ^ 0x6E6F697365ULL);
        }
        if (recorder) {
            provider = std::make_unique<RecordingProvider>(std::move(provider), recorder, setup.user);
        }
        return provider;
    };
}

OrchestratorConfig orchestrator_config(const RunConfig& config)
{
    OrchestratorConfig out;
    out.agent.step_budget = config.step_budget;
    out.agent.retry_cap = config.retry_cap;
    out.agent.history_window = config.history_window;
    out.clock_delta = config.clock_delta;
    out.user_latency = config.user_latency;
    out.world.ttl_overrides = config.ttl_overrides;
    if (!config.fault_table_file.empty()) {
        out.world.faults = FaultTable::from_file(config.fault_table_file);
    }
    out.seed = config.seed;
    return out;
}

RunSummary cmd_run(const std::string& task_file, const std::string& app_id, const RunConfig& config)
{
    config.validate();
    const auto& registry = AppRegistry::builtin();
    if (app_id != "auto") {
        registry.find(app_id);
    }
    const auto entries = read_task_file(task_file);
    if (entries.empty()) {
        fail(ErrorCode::Parse, task_file + ": no tasks found");
    }
    std::map<std::string, GroundTruthTrace> truths;
    if (!config.truth_dir.empty()) {
        truths = load_truths(config.truth_dir);
    }

    std::vector<PreparedTask> tasks;
    std::set<std::string> ids;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& entry = entries[i];
        PreparedTask task;
        task.entry = entry;
        try {
            task.spec = segment(entry.text);
            task.app_id = app_id == "auto" ? registry.match(task.spec).id : app_id;
        } catch (const Error& e) {
            const auto code = e.code() == ErrorCode::UnknownApp ? ErrorCode::UnknownApp : ErrorCode::Parse;
            fail(code, task_file + ":" + std::to_string(entry.line) + ": " + e.what());
        }
        if (!ids.insert(entry.id).second) {
            fail(ErrorCode::Parse, task_file + ":" + std::to_string(entry.line) + ": duplicate task id " + entry.id);
        }
        task.seed = task_seed(config.seed, i);
        if (const auto it = truths.find(entry.id); it != truths.end()) {
            task.truth = it->second;
        } else if (const auto* scenario = find_scenario_by_text(entry.text)) {
            task.truth = GroundTruthTrace::make(entry.id, scenario->truth);
        }
        tasks.push_back(std::move(task));
    }

    auto farm_ptr = config.farm_file.empty() ? std::make_unique<DeviceFarm>(DeviceFarm::desk_default().profiles())
                                             : std::make_unique<DeviceFarm>(DeviceFarm::from_file(config.farm_file).profiles());
    auto& farm = *farm_ptr;
    auto base = orchestrator_config(config);

    std::vector<ProviderFactory> factories;
    std::vector<std::shared_ptr<ReplayRecorder>> recorders;
    for (const auto& task : tasks) {
        std::shared_ptr<ReplayRecorder> recorder;
        if (!config.record_dir.empty()) {
            recorder = std::make_shared<ReplayRecorder>(task.entry.id);
        }
        recorders.push_back(recorder);
        factories.push_back(make_provider_factory(config, task.entry.id, task.entry.text, truths, recorder));
    }

    std::vector<RunTrace> traces(tasks.size());
    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;
    const auto worker = [&] {
        while (true) {
            const auto i = next.fetch_add(1);
            if (i >= tasks.size()) {
                return;
            }
            auto orchestrator = base;
            orchestrator.seed = tasks[i].seed;
            traces[i] = run_task(tasks[i].entry.id, tasks[i].spec, tasks[i].app_id, farm, factories[i], orchestrator);
            std::lock_guard lock(log_mutex);
            log_line(config, "[" + std::to_string(i + 1) + "/" + std::to_string(tasks.size()) + "] " +
                                 tasks[i].entry.id + " (" + tasks[i].app_id + "): " + traces[i].verdict.label());
        }
    };
    const auto threads = std::min<std::size_t>(static_cast<std::size_t>(config.parallel), tasks.size());
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
        for (auto& th : pool) {
            th.join();
        }
    }

    RunSummary summary;
    summary.tasks = static_cast<int>(tasks.size());
    const fs::path out_dir(config.output_dir);
    std::map<std::string, GroundTruthTrace> suite_truths;
    bool all_truths = true;
    if (!config.record_dir.empty()) {
        fs::create_directories(config.record_dir);
    }
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const auto path = (out_dir / (tasks[i].entry.id + ".trace.json")).string();
        write_text_file(path, trace_to_json(traces[i]));
        summary.trace_files.push_back(path);
        summary.successes += traces[i].verdict.success ? 1 : 0;
        if (recorders[i]) {
            recorders[i]->log().save((fs::path(config.record_dir) / (tasks[i].entry.id + ".replay.json")).string());
        }
        if (tasks[i].truth) {
            suite_truths.emplace(tasks[i].entry.id, *tasks[i].truth);
        } else {
            all_truths = false;
        }
    }
    if (all_truths) {
        auto report = suite_report(traces, suite_truths);
        report.seed = config.seed;
        const auto path = (out_dir / "report.json").string();
        write_text_file(path, report.to_json());
        summary.report_file = path;
        log_line(config, report.summary_table());
    }
    summary.traces = std::move(traces);
    return summary;
}

SuiteReport cmd_score(const std::string& traces_dir, const std::string& truth_dir, const std::string& report_path)
{
    const auto traces = load_traces(traces_dir);
    const auto truths = load_truths(truth_dir);
    std::vector<RunTrace> runs;
    for (const auto& [id, trace] : traces) {
        runs.push_back(trace);
    }
    auto report = suite_report(runs, truths);
    if (!report_path.empty()) {
        write_text_file(report_path, report.to_json());
    }
    return report;
}

void export_builtin_suite(const std::string& dir)
{
    const fs::path root(dir);
    std::string tasks;
    for (const auto& s : builtin_scenarios()) {
        tasks += "#id: " + s.id + "\n" + s.task_text + "\n";
        write_text_file((root / "truth" / (s.id + ".json")).string(), truth_to_json(s.ground_truth()));
    }
    write_text_file((root / "suite.tasks").string(), tasks);
}

} // namespace coplay
