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

#include "coplay/error.hpp"
#include "coplay/trace_io.hpp"
#include "support.hpp"

using namespace coplay;

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

} // namespace

TEST(TraceJson, RoundTripsEveryScenario)
{
    for (const auto& s : builtin_scenarios()) {
        const auto trace = coplay::testing::run_scenario(s).trace;
        const auto text = trace_to_json(trace);
        EXPECT_EQ(trace_from_json(text), trace) << s.id;
        EXPECT_EQ(trace_to_json(trace_from_json(text)), text) << s.id;
    }
}

TEST(TraceJson, RoundTripsFailures)
{
    const auto* s = find_scenario("voice-call-accept");
    OrchestratorConfig config;
    config.world.faults.rules.push_back({"voice-call", "ringing", "[tap] [accept]"});
    const auto crashed = coplay::testing::run_scenario(*s, config).trace;
    EXPECT_EQ(trace_from_json(trace_to_json(crashed)), crashed);
    config = {};
    config.clock_delta = SimDuration{120000};
    const auto expired = coplay::testing::run_scenario(*s, config).trace;
    EXPECT_EQ(trace_from_json(trace_to_json(expired)), expired);
}

TEST(TraceJson, FieldNames)
{
    const auto trace = coplay::testing::run_scenario(*find_scenario("voice-call-accept")).trace;
    const auto text = trace_to_json(trace);
    for (const auto* key : {"\"schema\": \"coplay.trace/1\"", "\"task_id\"", "\"per_device_actions\"", "\"interleaved_log\"",
                            "\"event_log\"", "\"verdict\"", "\"turn_index\"", "\"sim_time_ms\"", "\"devices\"",
                            "\"termination\": \"goal-satisfied\""}) {
        EXPECT_NE(text.find(key), std::string::npos) << key;
    }
}

TEST(TraceJson, RejectsGarbage)
{
    EXPECT_EQ(code_of([] { trace_from_json("{"); }), ErrorCode::Parse);
    EXPECT_EQ(code_of([] { trace_from_json(R"({"schema": "coplay.trace/1"})"); }), ErrorCode::Parse);
}

TEST(TruthJson, RoundTripAndTotalCheck)
{
    const auto truth = find_scenario("face-to-face-trio")->ground_truth();
    EXPECT_EQ(truth.total_actions, 23);
    const auto text = truth_to_json(truth);
    const auto back = truth_from_json(text);
    EXPECT_EQ(back.task_id, truth.task_id);
    EXPECT_EQ(back.per_device_actions, truth.per_device_actions);
    EXPECT_EQ(back.total_actions, 23);
    const auto bad = R"({"schema": "coplay.truth/1", "task_id": "x", "per_device_actions": {"1": ["[back]"]}, "total_actions": 2})";
    EXPECT_EQ(code_of([&] { truth_from_json(bad); }), ErrorCode::Parse);
}

TEST(Files, ReadWriteAndDirectories)
{
    const auto dir = coplay::testing::temp_dir("files");
    const auto nested = (dir / "a" / "b" / "c.txt").string();
    write_text_file(nested, "hello\n");
    EXPECT_EQ(read_text_file(nested), "hello\n");
    EXPECT_EQ(code_of([&] { read_text_file((dir / "missing").string()); }), ErrorCode::Io);
}

TEST(Files, LoadDirectoriesBySchema)
{
    const auto dir = coplay::testing::temp_dir("load");
    const auto* s = find_scenario("payment-transfer");
    const auto trace = coplay::testing::run_scenario(*s).trace;
    write_text_file((dir / "a.trace.json").string(), trace_to_json(trace));
    write_text_file((dir / "t.json").string(), truth_to_json(s->ground_truth()));
    write_text_file((dir / "report.json").string(), R"({"schema": "coplay.report/1"})");
    write_text_file((dir / "notes.txt").string(), "ignored");
    const auto traces = load_traces(dir.string());
    ASSERT_EQ(traces.size(), 1u);
    EXPECT_EQ(traces.at("payment-transfer"), trace);
    const auto truths = load_truths(dir.string());
    ASSERT_EQ(truths.size(), 1u);
    write_text_file((dir / "b.trace.json").string(), trace_to_json(trace));
    EXPECT_EQ(code_of([&] { load_traces(dir.string()); }), ErrorCode::Parse);
    EXPECT_EQ(code_of([&] { load_traces((dir / "nope").string()); }), ErrorCode::Io);
}
