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

#include "coplay/trace_io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "coplay/error.hpp"

namespace coplay {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json user_map_json(const std::map<UserId, std::vector<std::string>>& actions)
{
    json out = json::object();
    for (const auto& [user, list] : actions) {
        out[std::to_string(user.index())] = list;
    }
    return out;
}

std::map<UserId, std::vector<std::string>> user_map_from(const json& node)
{
    std::map<UserId, std::vector<std::string>> out;
    for (const auto& [key, list] : node.items()) {
        out[UserId{std::stoi(key)}] = list.get<std::vector<std::string>>();
    }
    return out;
}

json parse_document(const std::string& text, const char* schema)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorCode::Parse, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || doc.value("schema", std::string{}) != schema) {
        fail(ErrorCode::Parse, std::string("document is not a ") + schema + " document");
    }
    return doc;
}

template <class Fn>
auto guarded(Fn&& fn)
{
    try {
        return fn();
    } catch (const json::exception& e) {
        fail(ErrorCode::Parse, std::string("malformed document: ") + e.what());
    } catch (const std::invalid_argument&) {
        fail(ErrorCode::Parse, "malformed document: user keys must be integers");
    } catch (const std::out_of_range&) {
        fail(ErrorCode::Parse, "malformed document: number out of range");
    }
}

std::vector<fs::path> json_files(const std::string& dir)
{
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
        fail(ErrorCode::Io, "not a directory: " + dir);
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    return files;
}

bool has_schema(const std::string& text, const char* schema)
{
    try {
        const auto doc = json::parse(text);
        return doc.is_object() && doc.value("schema", std::string{}) == schema;
    } catch (const json::exception&) {
        return false;
    }
}

} // namespace

std::string trace_to_json(const RunTrace& trace)
{
    json devices = json::object();
    for (const auto& [user, p] : trace.devices) {
        devices[std::to_string(user.index())] = {
            {"device_id", p.device_id}, {"width", p.screen_width}, {"height", p.screen_height}, {"platform", p.platform_label}};
    }
    json log = json::array();
    for (const auto& e : trace.interleaved_log) {
        log.push_back({{"turn_index", e.turn_index},
                       {"user", e.user.index()},
                       {"action", e.action},
                       {"outcome", e.outcome},
                       {"sim_time_ms", e.sim_time.count()},
                       {"detail", e.detail}});
    }
    json events = json::array();
    for (const auto& e : trace.event_log) {
        events.push_back({{"seq", e.seq},
                          {"sim_time_ms", e.sim_time.count()},
                          {"device_id", e.device_id},
                          {"kind", std::string(to_string(e.kind))},
                          {"detail", e.detail},
                          {"state", e.state},
                          {"action", e.action}});
    }
    json verdict = {{"status", trace.verdict.success ? "success" : "failure"},
                    {"kind", trace.verdict.kind ? json(std::string(to_string(*trace.verdict.kind))) : json(nullptr)},
                    {"label", trace.verdict.label()},
                    {"detail", trace.verdict.detail}};
    const json doc = {
        {"schema", kTraceSchema},
        {"task_id", trace.task_id},
        {"task_text", trace.task_text},
        {"app_id", trace.app_id},
        {"provider_kind", trace.provider_kind},
        {"seed", trace.seed},
        {"devices", devices},
        {"per_device_actions", user_map_json(trace.per_device_actions)},
        {"interleaved_log", log},
        {"event_log", events},
        {"verdict", verdict},
        {"termination", std::string(to_string(trace.termination))},
        {"final_sim_time_ms", trace.final_sim_time.count()},
        {"final_state", trace.final_state},
    };
    return doc.dump(2) + "\n";
}

RunTrace trace_from_json(const std::string& text)
{
    const auto doc = parse_document(text, kTraceSchema);
    return guarded([&] {
        RunTrace trace;
        trace.task_id = doc.at("task_id").get<std::string>();
        trace.task_text = doc.at("task_text").get<std::string>();
        trace.app_id = doc.at("app_id").get<std::string>();
        trace.provider_kind = doc.at("provider_kind").get<std::string>();
        trace.seed = doc.at("seed").get<std::uint64_t>();
        for (const auto& [key, p] : doc.at("devices").items()) {
            trace.devices[UserId{std::stoi(key)}] = {p.at("device_id").get<std::string>(), p.at("width").get<int>(),
                                                     p.at("height").get<int>(), p.at("platform").get<std::string>(),
                                                     false}; // leased for the run
        }
        trace.per_device_actions = user_map_from(doc.at("per_device_actions"));
        for (const auto& e : doc.at("interleaved_log")) {
            trace.interleaved_log.push_back({e.at("turn_index").get<int>(), UserId{e.at("user").get<int>()},
                                             e.at("action").get<std::string>(), e.at("outcome").get<std::string>(),
                                             SimTime{e.at("sim_time_ms").get<std::int64_t>()},
                                             e.at("detail").get<std::string>()});
        }
        for (const auto& e : doc.at("event_log")) {
            trace.event_log.push_back({e.at("seq").get<std::int64_t>(), SimTime{e.at("sim_time_ms").get<std::int64_t>()},
                                       e.at("device_id").get<std::string>(),
                                       event_kind_from_string(e.at("kind").get<std::string>()),
                                       e.at("detail").get<std::string>(), e.at("state").get<std::string>(),
                                       e.at("action").get<std::string>()});
        }
        const auto& v = doc.at("verdict");
        trace.verdict.success = v.at("status").get<std::string>() == "success";
        if (!v.at("kind").is_null()) {
            trace.verdict.kind = failure_kind_from_string(v.at("kind").get<std::string>());
        }
        trace.verdict.detail = v.at("detail").get<std::string>();
        trace.termination = termination_from_string(doc.at("termination").get<std::string>());
        trace.final_sim_time = SimTime{doc.at("final_sim_time_ms").get<std::int64_t>()};
        trace.final_state = doc.at("final_state").get<std::string>();
        return trace;
    });
}

std::string truth_to_json(const GroundTruthTrace& truth)
{
    const json doc = {{"schema", kTruthSchema},
                      {"task_id", truth.task_id},
                      {"per_device_actions", user_map_json(truth.per_device_actions)},
                      {"total_actions", truth.total_actions}};
    return doc.dump(2) + "\n";
}

GroundTruthTrace truth_from_json(const std::string& text)
{
    const auto doc = parse_document(text, kTruthSchema);
    return guarded([&] {
        auto truth = GroundTruthTrace::make(doc.at("task_id").get<std::string>(),
                                            user_map_from(doc.at("per_device_actions")));
        if (doc.contains("total_actions") && doc.at("total_actions").get<int>() != truth.total_actions) {
            fail(ErrorCode::Parse, "truth " + truth.task_id + ": total_actions does not match the action lists");
        }
        return truth;
    });
}

void write_text_file(const std::string& path, const std::string& content)
{
    const fs::path p(path);
    std::error_code ec;
    if (p.has_parent_path()) {
        fs::create_directories(p.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        fail(ErrorCode::Io, "cannot write " + path);
    }
    out << content;
    if (!out) {
        fail(ErrorCode::Io, "write failed for " + path);
    }
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorCode::Io, "cannot read " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::map<std::string, RunTrace> load_traces(const std::string& dir)
{
    std::map<std::string, RunTrace> out;
    for (const auto& path : json_files(dir)) {
        const auto text = read_text_file(path.string());
        if (!has_schema(text, kTraceSchema)) {
            continue;
        }
        auto trace = trace_from_json(text);
        auto id = trace.task_id;
        if (!out.emplace(id, std::move(trace)).second) {
            fail(ErrorCode::Parse, "duplicate trace for task " + id + " in " + dir);
        }
    }
    return out;
}

std::map<std::string, GroundTruthTrace> load_truths(const std::string& dir)
{
    std::map<std::string, GroundTruthTrace> out;
    for (const auto& path : json_files(dir)) {
        const auto text = read_text_file(path.string());
        if (!has_schema(text, kTruthSchema)) {
            continue;
        }
        auto truth = truth_from_json(text);
        auto id = truth.task_id;
        if (!out.emplace(id, std::move(truth)).second) {
            fail(ErrorCode::Parse, "duplicate ground truth for task " + id + " in " + dir);
        }
    }
    return out;
}

} // namespace coplay
