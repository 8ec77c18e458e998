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

#include "coplay/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include <json.hpp>

#include "coplay/error.hpp"
#include "coplay/trace_io.hpp"

namespace coplay {

GroundTruthTrace GroundTruthTrace::make(std::string task_id, std::map<UserId, std::vector<std::string>> actions)
{
    GroundTruthTrace truth;
    truth.task_id = std::move(task_id);
    truth.per_device_actions = std::move(actions);
    for (const auto& [user, list] : truth.per_device_actions) {
        truth.total_actions += static_cast<int>(list.size());
    }
    return truth;
}

int lcs_length(std::span<const std::string> a, std::span<const std::string> b)
{
    std::vector<int> row(b.size() + 1, 0);
    for (const auto& x : a) {
        int diagonal = 0;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const int up = row[j];
            row[j] = x == b[j - 1] ? diagonal + 1 : std::max(row[j], row[j - 1]);
            diagonal = up;
        }
    }
    return row[b.size()];
}

SimilarityReport action_similarity(std::span<const std::string> inferred, std::span<const std::string> truth)
{
    SimilarityReport report;
    report.lcs_length = lcs_length(inferred, truth);
    report.total_length = static_cast<int>(inferred.size() + truth.size());
    report.score = report.total_length == 0 ? 1.0 : 2.0 * report.lcs_length / report.total_length;
    return report;
}

SimilarityReport task_similarity(const RunTrace& run, const GroundTruthTrace& truth)
{
    if (run.task_id != truth.task_id) {
        fail(ErrorCode::TaskIdMismatch, "trace " + run.task_id + " scored against truth " + truth.task_id);
    }
    std::set<UserId> run_users;
    for (const auto& [user, profile] : run.devices) {
        run_users.insert(user);
    }
    for (const auto& [user, list] : run.per_device_actions) {
        run_users.insert(user);
    }
    std::set<UserId> truth_users;
    for (const auto& [user, list] : truth.per_device_actions) {
        truth_users.insert(user);
    }
    if (run_users != truth_users) {
        fail(ErrorCode::UserSetMismatch, "users of trace " + run.task_id + " differ from its ground truth");
    }
    static const std::vector<std::string> none;
    SimilarityReport pooled;
    for (auto user : truth_users) {
        const auto it = run.per_device_actions.find(user);
        const auto& inferred = it == run.per_device_actions.end() ? none : it->second;
        const auto part = action_similarity(inferred, truth.per_device_actions.at(user));
        pooled.lcs_length += part.lcs_length;
        pooled.total_length += part.total_length;
    }
    pooled.score = pooled.total_length == 0 ? 1.0 : 2.0 * pooled.lcs_length / pooled.total_length;
    return pooled;
}

SuiteReport suite_report(std::span<const RunTrace> runs, const std::map<std::string, GroundTruthTrace>& truths)
{
    if (runs.empty()) {
        fail(ErrorCode::EmptySuite, "no traces to score");
    }
    std::vector<std::string> missing;
    for (const auto& run : runs) {
        if (!truths.contains(run.task_id)) {
            missing.push_back(run.task_id);
        }
    }
    if (!missing.empty()) {
        std::string names;
        for (const auto& m : missing) {
            names += (names.empty() ? "" : ", ") + m;
        }
        fail(ErrorCode::MissingTruth, "no ground truth for: " + names);
    }

    SuiteReport report;
    report.provider_kind = runs.front().provider_kind;
    report.seed = runs.front().seed;
    for (const auto& run : runs) {
        if (run.provider_kind != report.provider_kind) {
            report.provider_kind = "mixed";
        }
    }
    double similarity_sum = 0.0;
    for (const auto& run : runs) {
        TaskScore score;
        score.task_id = run.task_id;
        score.verdict = run.verdict.label();
        score.similarity = task_similarity(run, truths.at(run.task_id));
        similarity_sum += score.similarity.score;
        report.successes += run.verdict.success ? 1 : 0;
        ++report.verdict_histogram[score.verdict];
        report.tasks.push_back(std::move(score));
    }
    report.total = static_cast<int>(runs.size());
    report.success_rate = static_cast<double>(report.successes) / report.total;
    report.mean_similarity = similarity_sum / report.total;
    return report;
}

std::string SuiteReport::to_json() const
{
    nlohmann::json tasks_json = nlohmann::json::array();
    for (const auto& t : tasks) {
        tasks_json.push_back({{"task_id", t.task_id},
                              {"verdict", t.verdict},
                              {"lcs_length", t.similarity.lcs_length},
                              {"total_length", t.similarity.total_length},
                              {"similarity", t.similarity.score}});
    }
    nlohmann::json histogram = nlohmann::json::object();
    for (const auto& [label, count] : verdict_histogram) {
        histogram[label] = count;
    }
    const nlohmann::json doc = {
        {"schema", kReportSchema},
        {"provider_kind", provider_kind},
        {"seed", seed},
        {"total", total},
        {"successes", successes},
        {"success_rate", success_rate},
        {"mean_similarity", mean_similarity},
        {"verdict_histogram", histogram},
        {"tasks", tasks_json},
    };
    return doc.dump(2) + "\n";
}

std::string SuiteReport::summary_table() const
{
    std::size_t width = 7;
    for (const auto& t : tasks) {
        width = std::max(width, t.task_id.size());
    }
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof line, "%-*s  %-18s  %10s\n", static_cast<int>(width), "task", "verdict", "similarity");
    out << line;
    out << std::string(width + 32, '-') << '\n';
    for (const auto& t : tasks) {
        std::snprintf(line, sizeof line, "%-*s  %-18s  %10.3f\n", static_cast<int>(width), t.task_id.c_str(),
                      t.verdict.c_str(), t.similarity.score);
        out << line;
    }
    out << std::string(width + 32, '-') << '\n';
    std::snprintf(line, sizeof line, "success rate %.3f (%d/%d), mean similarity %.3f, provider %s, seed %llu\n",
                  success_rate, successes, total, mean_similarity, provider_kind.c_str(),
                  static_cast<unsigned long long>(seed));
    out << line;
    return out.str();
}

BugScan scan_bugs(std::span<const RunTrace> runs)
{
    BugScan scan;
    std::map<std::tuple<std::string, std::string, std::string>, std::size_t> index;
    for (const auto& run : runs) {
        bool crashed = false;
        for (const auto& e : run.event_log) {
            if (e.kind != EventKind::Crash) {
                continue;
            }
            crashed = true;
            const auto key = std::make_tuple(run.app_id, e.state, e.action);
            auto it = index.find(key);
            if (it == index.end()) {
                it = index.emplace(key, scan.crashes.size()).first;
                scan.crashes.push_back({run.app_id, e.state, e.action, 0, {}});
            }
            auto& finding = scan.crashes[it->second];
            ++finding.count;
            if (std::find(finding.task_ids.begin(), finding.task_ids.end(), run.task_id) == finding.task_ids.end()) {
                finding.task_ids.push_back(run.task_id);
            }
        }
        if (!crashed && !run.verdict.success) {
            scan.review_queue.push_back({run.task_id, run.verdict.label()});
        }
    }
    return scan;
}

} // namespace coplay
