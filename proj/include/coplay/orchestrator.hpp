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

#ifndef COPLAY_ORCHESTRATOR_HPP
#define COPLAY_ORCHESTRATOR_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coplay/agent.hpp"
#include "coplay/device_farm.hpp"
#include "coplay/sim_env.hpp"
#include "coplay/task_model.hpp"

namespace coplay {

/// The exclusive right to act. Only a switch action moves it to another user.
struct TurnToken {
    UserId holder;
    int turn_index = 0;

    friend bool operator==(const TurnToken&, const TurnToken&) = default;
};

enum class FailureKind { TimingExpired, MalformedOutput, AmbiguousTarget, BudgetExhausted, CrashDetected, GoalUnmet };

std::string_view to_string(FailureKind kind);
FailureKind failure_kind_from_string(std::string_view text);

struct RunVerdict {
    bool success = false;
    std::optional<FailureKind> kind;
    std::string detail;

    /// "success" or the failure kind, e.g. "timing-expired".
    std::string label() const;

    friend bool operator==(const RunVerdict&, const RunVerdict&) = default;
};

enum class Termination {
    GoalSatisfied,
    AllEnded,
    BudgetExhausted,
    LoopDetected,
    MalformedOutput,
    Crash,
    ExpiryDeadEnd,
    ProviderError,
    AllocationError,
};

std::string_view to_string(Termination termination);
Termination termination_from_string(std::string_view text);

/// Outcome labels recorded in the interleaved log besides OutcomeStatus.
inline constexpr std::string_view kOutcomeSwitched = "switched";
inline constexpr std::string_view kOutcomeSwitchRejected = "switch-rejected";
inline constexpr std::string_view kOutcomeEnded = "ended";

struct LogEntry {
    int turn_index = 0;
    UserId user;
    std::string action;  // canonical
    std::string outcome; // OutcomeStatus label or one of kOutcome*
    SimTime sim_time{0};
    std::string detail;

    friend bool operator==(const LogEntry&, const LogEntry&) = default;
};

struct RunTrace {
    std::string task_id;
    std::string task_text;
    std::string app_id;
    std::string provider_kind;
    std::uint64_t seed = 0;
    std::map<UserId, DeviceProfile> devices;
    std::map<UserId, std::vector<std::string>> per_device_actions;
    std::vector<LogEntry> interleaved_log;
    std::vector<EventRecord> event_log;
    RunVerdict verdict;
    Termination termination = Termination::AllEnded;
    SimTime final_sim_time{0};
    std::string final_state;

    friend bool operator==(const RunTrace&, const RunTrace&) = default;
};

struct OrchestratorConfig {
    AgentOptions agent;
    /// Simulated inference latency, added to the clock before each device action.
    SimDuration clock_delta{1000};
    /// Extra latency for particular users' agents.
    std::map<UserId, SimDuration> user_latency;
    WorldOptions world;
    std::uint64_t seed = 0;
    /// Stop as soon as a goal-critical cue expires without the goal met.
    bool stop_on_expiry = true;
    /// Same (screen, action) this many times for one agent aborts the run.
    int loop_threshold = 3;
};

struct RunResult {
    RunTrace trace;
    /// Absent when allocation failed before a world existed.
    std::optional<World> world;
};

/// Allocates devices, runs the agents under the turn-taking protocol and
/// releases the devices. Failures of any kind end up in the verdict.
RunResult run_task_detailed(const std::string& task_id, const TaskSpec& task, const std::string& app_id,
                            DeviceFarm& farm, const ProviderFactory& providers, const OrchestratorConfig& config);

RunTrace run_task(const std::string& task_id, const TaskSpec& task, const std::string& app_id, DeviceFarm& farm,
                  const ProviderFactory& providers, const OrchestratorConfig& config);

/// Hands the token to `target`. Switching to oneself is a plain handoff.
/// Throws SwitchToUnknown or SwitchToEnded; the caller keeps its token then.
TurnToken switch_control(const TurnToken& token, UserId target, const std::map<UserId, bool>& live_agents);

/// Priority: crash-detected > timing-expired > ambiguous-target >
/// malformed-output > budget-exhausted > goal-unmet.
RunVerdict classify_failure(const RunTrace& trace, const World& world);

/// Selectors that were ambiguous at least this often classify a run as
/// ambiguous-target.
inline constexpr int kAmbiguityThreshold = 3;

/// Re-executes the logged device actions at their recorded sim times against
/// a fresh world with the same devices.
World replay_world(const RunTrace& trace, const TaskSpec& task, const WorldOptions& options);

} // namespace coplay

#endif // COPLAY_ORCHESTRATOR_HPP
