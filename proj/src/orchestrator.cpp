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

#include "coplay/orchestrator.hpp"

#include <functional>
#include <set>

#include "coplay/error.hpp"

namespace coplay {

namespace {

constexpr std::pair<FailureKind, std::string_view> kFailureNames[] = {
    {FailureKind::TimingExpired, "timing-expired"},     {FailureKind::MalformedOutput, "malformed-output"},
    {FailureKind::AmbiguousTarget, "ambiguous-target"}, {FailureKind::BudgetExhausted, "budget-exhausted"},
    {FailureKind::CrashDetected, "crash-detected"},     {FailureKind::GoalUnmet, "goal-unmet"},
};

constexpr std::pair<Termination, std::string_view> kTerminationNames[] = {
    {Termination::GoalSatisfied, "goal-satisfied"},   {Termination::AllEnded, "all-ended"},
    {Termination::BudgetExhausted, "budget-exhausted"}, {Termination::LoopDetected, "loop-detected"},
    {Termination::MalformedOutput, "malformed-output"}, {Termination::Crash, "crash"},
    {Termination::ExpiryDeadEnd, "expiry-dead-end"},  {Termination::ProviderError, "provider-error"},
    {Termination::AllocationError, "allocation-error"},
};

/// Next live user after `from` in ascending cyclic order; `from` itself when
/// nobody else is live.
std::optional<UserId> next_live(UserId from, const std::map<UserId, bool>& live)
{
    for (auto it = live.upper_bound(from); it != live.end(); ++it) {
        if (it->second) {
            return it->first;
        }
    }
    for (auto it = live.begin(); it != live.end() && it->first <= from; ++it) {
        if (it->second) {
            return it->first;
        }
    }
    return std::nullopt;
}

std::uint64_t agent_seed(std::uint64_t run_seed, UserId user)
{
    std::uint64_t state = run_seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(user.index()));
    return next_random(state);
}

struct LeaseGuard {
    DeviceFarm& farm;
    const Allocation& allocation;
    ~LeaseGuard() { farm.release(allocation); }
};

} // namespace

std::string_view to_string(FailureKind kind)
{
    for (const auto& [k, name] : kFailureNames) {
        if (k == kind) {
            return name;
        }
    }
    return "goal-unmet";
}

FailureKind failure_kind_from_string(std::string_view text)
{
    for (const auto& [k, name] : kFailureNames) {
        if (name == text) {
            return k;
        }
    }
    fail(ErrorCode::Parse, "unknown failure kind \"" + std::string(text) + "\"");
}

std::string RunVerdict::label() const
{
    if (success) {
        return "success";
    }
    return std::string(to_string(kind.value_or(FailureKind::GoalUnmet)));
}

std::string_view to_string(Termination termination)
{
    for (const auto& [t, name] : kTerminationNames) {
        if (t == termination) {
            return name;
        }
    }
    return "all-ended";
}

Termination termination_from_string(std::string_view text)
{
    for (const auto& [t, name] : kTerminationNames) {
        if (name == text) {
            return t;
        }
    }
    fail(ErrorCode::Parse, "unknown termination \"" + std::string(text) + "\"");
}

TurnToken switch_control(const TurnToken& token, UserId target, const std::map<UserId, bool>& live_agents)
{
    const auto it = live_agents.find(target);
    if (it == live_agents.end()) {
        fail(ErrorCode::SwitchToUnknown, to_string(target) + " is not part of this task");
    }
    if (!it->second) {
        fail(ErrorCode::SwitchToEnded, to_string(target) + " has already ended its task");
    }
    return {target, token.turn_index + 1};
}

RunVerdict classify_failure(const RunTrace& trace, const World& world)
{
    for (const auto& e : trace.event_log) {
        if (e.kind == EventKind::Crash) {
            return {false, FailureKind::CrashDetected, "crash in state " + e.state + " on " + e.action};
        }
    }
    if (world.crashed()) {
        return {false, FailureKind::CrashDetected, "app crashed"};
    }
    for (const auto& e : trace.event_log) {
        if (e.kind == EventKind::Expiry) {
            return {false, FailureKind::TimingExpired, e.detail};
        }
    }
    std::map<std::string, int> ambiguous;
    for (const auto& entry : trace.interleaved_log) {
        if (entry.outcome != to_string(OutcomeStatus::AmbiguousTarget)) {
            continue;
        }
        std::string selector = entry.action;
        try {
            const auto action = parse_action(entry.action);
            if (const auto* tap = std::get_if<action::Tap>(&action)) {
                selector = tap->target.selector();
            } else if (const auto* input = std::get_if<action::Input>(&action)) {
                selector = input->target.selector();
            }
        } catch (const Error&) {
        }
        if (++ambiguous[selector] >= kAmbiguityThreshold) {
            return {false, FailureKind::AmbiguousTarget,
                    "selector \"" + selector + "\" was ambiguous " + std::to_string(ambiguous[selector]) + " times"};
        }
    }
    const auto termination = trace.termination;
    const auto detail = trace.verdict.detail;
    if (termination == Termination::MalformedOutput) {
        return {false, FailureKind::MalformedOutput, detail};
    }
    if (termination == Termination::BudgetExhausted || termination == Termination::LoopDetected) {
        return {false, FailureKind::BudgetExhausted, detail};
    }
    return {false, FailureKind::GoalUnmet, detail.empty() ? "goal not reached: " + world.goal().description : detail};
}

RunResult run_task_detailed(const std::string& task_id, const TaskSpec& task, const std::string& app_id,
                            DeviceFarm& farm, const ProviderFactory& providers, const OrchestratorConfig& config)
{
    RunResult result;
    auto& trace = result.trace;
    trace.task_id = task_id;
    trace.task_text = task.raw_text;
    trace.app_id = app_id;
    trace.seed = config.seed;

    Allocation allocation;
    try {
        allocation = farm.allocate_blocking(task_id, task.users, config.seed);
    } catch (const Error& e) {
        trace.termination = Termination::AllocationError;
        trace.verdict = {false, FailureKind::GoalUnmet, std::string("device allocation failed: ") + e.what()};
        return result;
    }
    LeaseGuard guard{farm, allocation};

    for (const auto& [user, device] : allocation.leases) {
        trace.devices[user] = farm.profile(device);
    }
    result.world.emplace(World::create(app_id, trace.devices, config.world));
    World& world = *result.world;
    world.set_goal(world.app().goal_for(task));

    const auto finish = [&](Termination termination, std::string detail) {
        trace.termination = termination;
        trace.event_log = world.event_log();
        trace.final_sim_time = world.clock();
        trace.final_state = world.state_label();
        if (world.check_goal()) {
            trace.verdict = {true, std::nullopt, world.goal().description};
        } else {
            trace.verdict = {false, std::nullopt, std::move(detail)};
            trace.verdict = classify_failure(trace, world);
        }
        return std::move(result);
    };

    std::map<UserId, Agent> agents;
    std::map<UserId, bool> live;
    try {
        for (auto user : task.users) {
            const auto& device = allocation.leases.at(user);
            AgentSetup setup{task_id, &task, user, device, agent_seed(config.seed, user)};
            agents.emplace(user, Agent(task, user, device, providers(setup), config.agent));
            live[user] = true;
        }
    } catch (const Error& e) {
        return finish(Termination::ProviderError, std::string("provider setup failed: ") + e.what());
    }
    trace.provider_kind = agents.begin()->second.provider().kind();

    TurnToken token{task.initiator, 0};
    std::map<UserId, std::map<std::pair<std::size_t, std::string>, int>> seen;
    std::size_t events_checked = 0;

    while (true) {
        if (world.check_goal()) {
            return finish(Termination::GoalSatisfied, {});
        }
        if (!next_live(token.holder, live)) {
            return finish(Termination::AllEnded, "every agent ended without reaching the goal");
        }
        auto& agent = agents.at(token.holder);
        const auto snapshot = observe(world, token.holder);

        std::optional<AgentAction> stepped;
        try {
            stepped = agent.step(snapshot);
        } catch (const Error& e) {
            switch (e.code()) {
            case ErrorCode::StepBudgetExhausted: return finish(Termination::BudgetExhausted, e.what());
            case ErrorCode::MalformedOutput: return finish(Termination::MalformedOutput, e.what());
            default: return finish(Termination::ProviderError, std::string("provider failed: ") + e.what());
            }
        }

        const auto& action = *stepped;
        const auto holder = token.holder;
        LogEntry entry;
        entry.turn_index = token.turn_index;
        entry.user = holder;
        entry.action = render_action(action);

        if (is_device_action(action)) {
            auto latency = config.clock_delta;
            if (const auto it = config.user_latency.find(holder); it != config.user_latency.end()) {
                latency += it->second;
            }
            world.advance_clock(latency);
            const auto outcome = world.apply_action(agent.device(), action);
            entry.outcome = std::string(to_string(outcome.status));
            entry.detail = outcome.detail;
            if (outcome.status == OutcomeStatus::UnknownElement || outcome.status == OutcomeStatus::AmbiguousTarget) {
                agent.note_miss(entry.action + ": " + outcome.detail);
            } else {
                agent.note_executed(action);
            }
            ++token.turn_index;
        } else if (const auto* sw = std::get_if<action::SwitchUser>(&action)) {
            const auto target = sw->target_user ? *sw->target_user : next_live(holder, live).value_or(holder);
            try {
                token = switch_control(token, target, live);
                entry.outcome = std::string(kOutcomeSwitched);
                entry.detail = "control passes to " + to_string(target);
                agent.note_executed(action);
            } catch (const Error& e) {
                entry.outcome = std::string(kOutcomeSwitchRejected);
                entry.detail = e.what();
                agent.note_miss(entry.action + ": " + e.what());
                ++token.turn_index;
            }
        } else {
            live[holder] = false;
            agent.ended = true;
            entry.outcome = std::string(kOutcomeEnded);
            agent.note_executed(action);
            ++token.turn_index;
            if (const auto next = next_live(holder, live)) {
                token.holder = *next;
            }
        }
        entry.sim_time = world.clock();
        trace.per_device_actions[holder].push_back(entry.action);
        trace.interleaved_log.push_back(entry);

        if (world.crashed()) {
            return finish(Termination::Crash, "app crashed on " + entry.action);
        }
        if (config.stop_on_expiry && !world.check_goal()) {
            const auto& events = world.event_log();
            for (; events_checked < events.size(); ++events_checked) {
                if (events[events_checked].kind == EventKind::Expiry) {
                    return finish(Termination::ExpiryDeadEnd, events[events_checked].detail);
                }
            }
        }
        const auto screen_hash = std::hash<std::string>{}(serialize_for_prompt(snapshot.root));
        if (++seen[holder][{screen_hash, entry.action}] >= config.loop_threshold) {
            return finish(Termination::LoopDetected,
                          to_string(holder) + " repeated " + entry.action + " on an unchanged screen");
        }
    }
}

RunTrace run_task(const std::string& task_id, const TaskSpec& task, const std::string& app_id, DeviceFarm& farm,
                  const ProviderFactory& providers, const OrchestratorConfig& config)
{
    return run_task_detailed(task_id, task, app_id, farm, providers, config).trace;
}

World replay_world(const RunTrace& trace, const TaskSpec& task, const WorldOptions& options)
{
    auto world = World::create(trace.app_id, trace.devices, options);
    world.set_goal(world.app().goal_for(task));
    for (const auto& entry : trace.interleaved_log) {
        const auto action = parse_action(entry.action);
        if (!is_device_action(action)) {
            continue;
        }
        if (entry.sim_time > world.clock()) {
            world.advance_clock(entry.sim_time - world.clock());
        }
        world.apply_action(world.device_of(entry.user), action);
    }
    return world;
}

} // namespace coplay
