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

#ifndef COPLAY_EVAL_HPP
#define COPLAY_EVAL_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "coplay/orchestrator.hpp"

namespace coplay {

struct GroundTruthTrace {
    std::string task_id;
    std::map<UserId, std::vector<std::string>> per_device_actions;
    /// Sum of the per-device list lengths.
    int total_actions = 0;

    static GroundTruthTrace make(std::string task_id, std::map<UserId, std::vector<std::string>> actions);
};

struct SimilarityReport {
    int lcs_length = 0;   // M
    int total_length = 0; // T, both sequences together
    double score = 1.0;   // 2M/T, 1 for two empty sequences

    friend bool operator==(const SimilarityReport&, const SimilarityReport&) = default;
};

/// Length of the longest common subsequence, by dynamic programming.
int lcs_length(std::span<const std::string> a, std::span<const std::string> b);

SimilarityReport action_similarity(std::span<const std::string> inferred, std::span<const std::string> truth);

/// Devices pooled as 2*sum(M_d) / sum(T_d).
/// Throws TaskIdMismatch or UserSetMismatch.
SimilarityReport task_similarity(const RunTrace& run, const GroundTruthTrace& truth);

struct TaskScore {
    std::string task_id;
    std::string verdict;
    SimilarityReport similarity;
};

struct SuiteReport {
    std::string provider_kind;
    /// Seed of the first run; cmd_run reports its base seed instead.
    std::uint64_t seed = 0;
    int total = 0;
    int successes = 0;
    double success_rate = 0.0;
    double mean_similarity = 0.0;
    std::map<std::string, int> verdict_histogram;
    std::vector<TaskScore> tasks;

    std::string to_json() const;
    /// Fixed-width table for terminals.
    std::string summary_table() const;
};

/// Throws EmptySuite, or MissingTruth naming every run without a truth.
SuiteReport suite_report(std::span<const RunTrace> runs, const std::map<std::string, GroundTruthTrace>& truths);

struct BugFinding {
    std::string app_id;
    std::string state;
    std::string action;
    int count = 0;
    std::vector<std::string> task_ids;
};

struct ReviewItem {
    std::string task_id;
    std::string verdict;
};

struct BugScan {
    std::vector<BugFinding> crashes;   // deduplicated by (app, state, action)
    std::vector<ReviewItem> review_queue; // failed runs without a crash
};

BugScan scan_bugs(std::span<const RunTrace> runs);

} // namespace coplay

#endif // COPLAY_EVAL_HPP
