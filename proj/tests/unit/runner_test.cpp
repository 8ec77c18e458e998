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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "coplay/error.hpp"
#include "coplay/runner.hpp"
#include "coplay/trace_io.hpp"
#include "support.hpp"

using namespace coplay;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an error";
    return ErrorCode::InvalidArgument;
}

RunConfig quiet(const fs::path& out)
{
    RunConfig c;
    c.output_dir = out.string();
    return c;
}

} // namespace

TEST(RunConfigJson, Defaults)
{
    const auto c = RunConfig::from_json_text("{}");
    EXPECT_EQ(c.provider, ProviderKind::ScriptedOracle);
    EXPECT_EQ(c.seed, 7u);
    EXPECT_EQ(c.clock_delta, SimDuration{1000});
    EXPECT_EQ(c.step_budget, 50);
    EXPECT_EQ(c.retry_cap, 3);
    EXPECT_EQ(c.history_window, 0);
    EXPECT_EQ(c.parallel, 1);
    EXPECT_EQ(c.output_dir, "coplay-out");
    EXPECT_NO_THROW(c.validate());
}

TEST(RunConfigJson, AllKeys)
{
    const auto c = RunConfig::from_json_text(R"({
        "provider": "random", "seed": 11, "clock_delta_ms": 250, "ttl_overrides_ms": {"ring": 5000},
        "user_latency_ms": {"2": 300}, "step_budget": 9, "retry_cap": 1, "history_window": 5, "noise": 0.25,
        "parallel": 3, "output_dir": "o", "truth_dir": "t", "replay_dir": "r", "record_dir": "w",
        "farm_file": "f.json", "fault_table": "faults.json",
        "remote": {"endpoint": "http://h/v1", "model": "m", "api_key_env": "K", "timeout_ms": 10,
                   "transport_retries": 2, "temperature": 0.5}})");
    EXPECT_EQ(c.provider, ProviderKind::Random);
    EXPECT_EQ(c.seed, 11u);
    EXPECT_EQ(c.clock_delta, SimDuration{250});
    EXPECT_EQ(c.ttl_overrides.at("ring"), SimDuration{5000});
    EXPECT_EQ(c.user_latency.at(UserId{2}), SimDuration{300});
    EXPECT_EQ(c.step_budget, 9);
    EXPECT_EQ(c.history_window, 5);
    EXPECT_EQ(c.noise, 0.25);
    EXPECT_EQ(c.parallel, 3);
    EXPECT_EQ(c.fault_table_file, "faults.json");
    EXPECT_EQ(c.remote.model, "m");
    EXPECT_EQ(c.remote.timeout, std::chrono::milliseconds(10));
    EXPECT_EQ(c.remote.transport_retries, 2);
}

TEST(RunConfigJson, Rejections)
{
    EXPECT_EQ(code_of([] { RunConfig::from_json_text(R"({"sede": 1})"); }), ErrorCode::InvalidConfig);
    EXPECT_EQ(code_of([] { RunConfig::from_json_text(R"({"provider": "gpt"})"); }), ErrorCode::InvalidConfig);
    EXPECT_EQ(code_of([] { RunConfig::from_json_text(R"({"user_latency_ms": {"bob": 1}})"); }), ErrorCode::InvalidConfig);
    EXPECT_EQ(code_of([] { RunConfig::from_json_text("[1]"); }), ErrorCode::InvalidConfig);
    EXPECT_EQ(code_of([] { RunConfig::from_json_text("{"); }), ErrorCode::InvalidConfig);
    EXPECT_EQ(code_of([] { RunConfig::from_file("/nonexistent.json"); }), ErrorCode::Io);
}

TEST(RunConfigJson, ValidateRanges)
{
    for (const auto* bad : {R"({"clock_delta_ms": 0})", R"({"step_budget": 0})", R"({"retry_cap": -1})",
                            R"({"parallel": 0})", R"({"noise": 1.5})", R"({"ttl_overrides_ms": {"ring": 0}})",
                            R"({"provider": "remote-endpoint"})", R"({"provider": "recorded-replay"})"}) {
        EXPECT_EQ(code_of([&] { RunConfig::from_json_text(bad).validate(); }), ErrorCode::InvalidConfig) << bad;
    }
}

TEST(RunConfigJson, MergeOverlays)
{
    auto c = RunConfig::from_json_text(R"({"seed": 3, "step_budget": 8})");
    c.merge_json_text(R"({"seed": 4})");
    EXPECT_EQ(c.seed, 4u);
    EXPECT_EQ(c.step_budget, 8);
}

TEST(OracleScript, TruthThenScenarioThenError)
{
    const auto* s = find_scenario("voice-call-accept");
    EXPECT_EQ(oracle_script("anything", s->task_text, {}), s->truth);
    const std::map<std::string, GroundTruthTrace> truths = {
        {"mine", GroundTruthTrace::make("mine", {{UserId{1}, {"[back]"}}})}};
    EXPECT_EQ(oracle_script("mine", s->task_text, truths).at(UserId{1}), (std::vector<std::string>{"[back]"}));
    EXPECT_EQ(code_of([] { oracle_script("x", "User_1: dance; User_2: sing", {}); }), ErrorCode::MissingTruth);
}

TEST(CmdRun, OneLineTaskFile)
{
    const auto dir = coplay::testing::temp_dir("run-one");
    const auto tasks = dir / "one.tasks";
    std::ofstream(tasks) << "User_1: send a voice call to User_2; User_2: accept the call\n";
    const auto summary = cmd_run(tasks.string(), "voice-call", quiet(dir / "out"));
    EXPECT_EQ(summary.tasks, 1);
    EXPECT_EQ(summary.successes, 1);
    ASSERT_EQ(summary.trace_files.size(), 1u);
    EXPECT_TRUE(fs::exists(summary.trace_files[0]));
    EXPECT_EQ(fs::path(summary.trace_files[0]).filename(), "one-01.trace.json");
    ASSERT_TRUE(summary.report_file.has_value());
}

TEST(CmdRun, MalformedLineNamesFileAndLine)
{
    const auto dir = coplay::testing::temp_dir("run-bad");
    const auto tasks = dir / "bad.tasks";
    std::ofstream(tasks) << "# comment\nUser_1: send a voice call to User_2; User_2: accept the call\nno users here\n";
    try {
        cmd_run(tasks.string(), "auto", quiet(dir / "out"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Parse);
        EXPECT_NE(std::string(e.what()).find("bad.tasks:3"), std::string::npos) << e.what();
    }
}

TEST(CmdRun, UnknownAppAndMissingFile)
{
    const auto dir = coplay::testing::temp_dir("run-errs");
    const auto tasks = dir / "t.tasks";
    std::ofstream(tasks) << "User_1: send a voice call to User_2; User_2: accept the call\n";
    EXPECT_EQ(code_of([&] { cmd_run(tasks.string(), "no-app", quiet(dir / "o")); }), ErrorCode::UnknownApp);
    EXPECT_EQ(code_of([&] { cmd_run((dir / "missing").string(), "auto", quiet(dir / "o")); }), ErrorCode::Io);
}

TEST(CmdRun, FullSuiteWithReport)
{
    const auto dir = coplay::testing::temp_dir("run-suite");
    export_builtin_suite((dir / "suite").string());
    auto config = quiet(dir / "out");
    config.truth_dir = (dir / "suite" / "truth").string();
    const auto summary = cmd_run((dir / "suite" / "suite.tasks").string(), "auto", config);
    EXPECT_EQ(summary.tasks, 12);
    EXPECT_EQ(summary.successes, 12);
    EXPECT_EQ(summary.trace_files.size(), 12u);
    ASSERT_TRUE(summary.report_file.has_value());
    const auto report = read_text_file(*summary.report_file);
    EXPECT_NE(report.find("\"success_rate\": 1.0"), std::string::npos) << report;
}

TEST(CmdRun, ParallelMatchesSequentialUpToDeviceBinding)
{
    const auto dir = coplay::testing::temp_dir("run-par");
    export_builtin_suite((dir / "suite").string());
    auto seq = quiet(dir / "seq");
    seq.provider = ProviderKind::Random;
    auto par = seq;
    par.output_dir = (dir / "par").string();
    par.parallel = 4;
    const auto a = cmd_run((dir / "suite" / "suite.tasks").string(), "auto", seq);
    const auto b = cmd_run((dir / "suite" / "suite.tasks").string(), "auto", par);
    ASSERT_EQ(a.traces.size(), b.traces.size());
    // Which free devices a task gets depends on what runs beside it.
    const auto unbound = [](RunTrace t) {
        t.devices.clear();
        for (auto& e : t.event_log) {
            e.device_id.clear();
        }
        return t;
    };
    for (std::size_t i = 0; i < a.traces.size(); ++i) {
        EXPECT_EQ(unbound(a.traces[i]), unbound(b.traces[i])) << a.traces[i].task_id;
    }
}

TEST(CmdRun, RecordThenReplay)
{
    const auto dir = coplay::testing::temp_dir("run-rec");
    export_builtin_suite((dir / "suite").string());
    auto rec = quiet(dir / "rec-out");
    rec.record_dir = (dir / "recordings").string();
    rec.noise = 0.3;
    const auto a = cmd_run((dir / "suite" / "suite.tasks").string(), "auto", rec);
    auto replay = quiet(dir / "replay-out");
    replay.provider = ProviderKind::RecordedReplay;
    replay.replay_dir = rec.record_dir;
    const auto b = cmd_run((dir / "suite" / "suite.tasks").string(), "auto", replay);
    ASSERT_EQ(a.traces.size(), b.traces.size());
    for (std::size_t i = 0; i < a.traces.size(); ++i) {
        EXPECT_EQ(a.traces[i].per_device_actions, b.traces[i].per_device_actions) << a.traces[i].task_id;
        EXPECT_EQ(a.traces[i].verdict, b.traces[i].verdict) << a.traces[i].task_id;
        EXPECT_EQ(b.traces[i].provider_kind, "recorded-replay");
    }
}

TEST(CmdRun, FarmAndFaultFiles)
{
    const auto dir = coplay::testing::temp_dir("run-files");
    const auto tasks = dir / "t.tasks";
    std::ofstream(tasks) << "User_1: send a voice call to User_2; User_2: accept the call\n";
    std::ofstream(dir / "farm.json") << R"({"devices": [{"id": "p1", "width": 1080, "height": 2400}, {"id": "p2", "width": 720, "height": 1280}]})";
    std::ofstream(dir / "faults.json") << R"({"faults": [{"app": "voice-call", "state": "ringing", "action": "[tap] [accept]"}]})";
    auto config = quiet(dir / "out");
    config.farm_file = (dir / "farm.json").string();
    config.fault_table_file = (dir / "faults.json").string();
    const auto summary = cmd_run(tasks.string(), "auto", config);
    ASSERT_EQ(summary.traces.size(), 1u);
    EXPECT_EQ(summary.traces[0].verdict.kind, FailureKind::CrashDetected);
    for (const auto& [u, p] : summary.traces[0].devices) {
        EXPECT_TRUE(p.device_id == "p1" || p.device_id == "p2");
    }
}

TEST(CmdScore, CompleteMissingAndEmpty)
{
    const auto dir = coplay::testing::temp_dir("score");
    export_builtin_suite((dir / "suite").string());
    cmd_run((dir / "suite" / "suite.tasks").string(), "auto", quiet(dir / "out"));
    const auto report = cmd_score((dir / "out").string(), (dir / "suite" / "truth").string(),
                                  (dir / "report.json").string());
    EXPECT_EQ(report.total, 12);
    EXPECT_EQ(report.success_rate, 1.0);
    EXPECT_EQ(report.mean_similarity, 1.0);
    EXPECT_TRUE(fs::exists(dir / "report.json"));

    fs::remove(dir / "suite" / "truth" / "payment-transfer.json");
    try {
        cmd_score((dir / "out").string(), (dir / "suite" / "truth").string(), "");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MissingTruth);
        EXPECT_NE(std::string(e.what()).find("payment-transfer"), std::string::npos);
    }

    fs::create_directories(dir / "empty");
    EXPECT_EQ(code_of([&] { cmd_score((dir / "empty").string(), (dir / "empty").string(), ""); }),
              ErrorCode::EmptySuite);
}

TEST(ExportSuite, WritesTasksAndTruths)
{
    const auto dir = coplay::testing::temp_dir("export");
    export_builtin_suite(dir.string());
    const auto entries = read_task_file((dir / "suite.tasks").string());
    ASSERT_EQ(entries.size(), 12u);
    EXPECT_EQ(entries[0].id, builtin_scenarios()[0].id);
    EXPECT_EQ(load_truths((dir / "truth").string()).size(), 12u);
}
