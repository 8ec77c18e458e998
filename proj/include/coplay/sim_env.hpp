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

#ifndef COPLAY_SIM_ENV_HPP
#define COPLAY_SIM_ENV_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coplay/action_space.hpp"
#include "coplay/device_farm.hpp"
#include "coplay/screen_codec.hpp"
#include "coplay/task_model.hpp"
#include "coplay/types.hpp"

namespace coplay {

enum class EventKind { Action, Transition, Crash, Expiry };

std::string_view to_string(EventKind kind);
EventKind event_kind_from_string(std::string_view text);

struct EventRecord {
    std::int64_t seq = 0;
    SimTime sim_time{0};
    DeviceId device_id;
    EventKind kind = EventKind::Action;
    std::string detail;
    /// Backend state label when the event was recorded.
    std::string state;
    /// Canonical action for action and crash events, empty otherwise.
    std::string action;

    friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

class World;

struct GoalPredicate {
    std::string description;
    std::function<bool(const World&)> check;
};

/// (state, action) pairs that crash an app. `state` is compared with the
/// app's state label and `action` with the canonical action string, both
/// case-insensitively; "*" matches anything.
struct FaultRule {
    std::string app_id;
    std::string state;
    std::string action;
};

struct FaultTable {
    std::vector<FaultRule> rules;

    /// JSON: {"faults": [{"app": "...", "state": "...", "action": "..."}]}
    static FaultTable from_file(const std::string& path);
    static FaultTable from_json_text(const std::string& text);

    bool matches(std::string_view app_id, std::string_view state, std::string_view action) const;
};

enum class OutcomeStatus {
    Applied,        // backend or screen changed
    NoEffect,       // target found but nothing happened
    UnknownElement, // no element matched the selector
    AmbiguousTarget,
    Crashed,        // a fault rule fired on this action
    Frozen,         // the app had already crashed
};

std::string_view to_string(OutcomeStatus status);

struct ActionOutcome {
    OutcomeStatus status = OutcomeStatus::Applied;
    std::string detail;
};

using DeadlineId = std::uint64_t;

struct Deadline {
    DeadlineId id = 0;
    SimTime at{0};
    std::string cue;
    UserId owner;
    bool goal_critical = true;
};

/// A multi-user app standing in for the real thing: shared backend state plus
/// a per-user screen projection. Handlers return whether anything changed.
class SimApp {
public:
    virtual ~SimApp() = default;

    virtual void start(World& world) = 0;
    /// Full, unsimplified hierarchy shown to `user`.
    virtual ViewNode screen(const World& world, UserId user) const = 0;
    /// `target` is the resolved node of the simplified screen.
    virtual bool tap(World& world, UserId user, const ViewNode& target) = 0;
    virtual bool input(World& world, UserId user, const ViewNode& target, const std::string& value) = 0;
    virtual bool back(World& world, UserId user) = 0;
    virtual void expire(World& world, const Deadline& deadline) = 0;

    virtual SimDuration default_ttl(std::string_view cue) const = 0;
    virtual std::string state_label() const = 0;
    virtual GoalPredicate goal_for(const TaskSpec& task) const = 0;
};

struct AppInfo {
    std::string id;
    std::string description;
    /// Task text matches when every word of any one group occurs in it.
    std::vector<std::vector<std::string>> keywords;
    std::function<std::unique_ptr<SimApp>()> factory;
};

class AppRegistry {
public:
    /// All built-in sim apps, in matching priority order.
    static const AppRegistry& builtin();

    void add(AppInfo info);
    const AppInfo& find(std::string_view id) const; // UnknownApp
    bool contains(std::string_view id) const;
    /// First app whose keywords match the task text. Throws UnknownApp.
    const AppInfo& match(const TaskSpec& task) const;
    const std::vector<AppInfo>& apps() const { return apps_; }

private:
    std::vector<AppInfo> apps_;
};

struct WorldOptions {
    std::map<std::string, SimDuration> ttl_overrides; // by cue name
    FaultTable faults;
};

/// Shared backend of one task run plus the devices looking at it. Backend
/// state changes only through apply_action() and advance_clock().
class World {
public:
    World(std::string app_id, std::unique_ptr<SimApp> app, std::map<UserId, DeviceProfile> devices,
          WorldOptions options = {});

    /// Instantiates a registered app. Throws UnknownApp.
    static World create(std::string_view app_id, std::map<UserId, DeviceProfile> devices,
                        WorldOptions options = {}, const AppRegistry& registry = AppRegistry::builtin());

    World(World&&) noexcept;
    World& operator=(World&&) noexcept;
    ~World();

    const std::string& app_id() const { return app_id_; }
    const SimApp& app() const { return *app_; }

    template <class App>
    const App& app_as() const
    {
        return dynamic_cast<const App&>(*app_);
    }

    std::vector<UserId> users() const;
    UserId user_of(const DeviceId& device) const;   // UnknownDevice
    const DeviceId& device_of(UserId user) const;    // UnknownDevice
    const DeviceProfile& profile_of(UserId user) const;
    /// "Alice", "Bob", ... by user index; User_7 and up get "User 7".
    static std::string display_name(UserId user);

    /// Raw hierarchy currently shown on `device`. Throws UnknownDevice.
    ScreenSnapshot project_screen(const DeviceId& device) const;

    /// Executes tap/input/back. Element misses are recorded outcomes, not
    /// errors. Throws UnknownDevice, or InvalidArgument for switch/end.
    ActionOutcome apply_action(const DeviceId& device, const AgentAction& action);

    /// Fires every deadline crossed, in deadline order.
    void advance_clock(SimDuration delta);

    void set_goal(GoalPredicate goal);
    const GoalPredicate& goal() const { return goal_; }
    bool check_goal() const;

    SimTime clock() const { return clock_; }
    const std::vector<EventRecord>& event_log() const { return events_; }
    bool crashed() const { return crashed_; }
    std::string state_label() const;
    std::vector<Deadline> pending_deadlines() const;

    // Used by app handlers.
    DeadlineId schedule(std::string cue, UserId owner, bool goal_critical = true);
    void cancel(DeadlineId id);
    bool pending(DeadlineId id) const;
    std::optional<SimTime> deadline_at(DeadlineId id) const;
    SimDuration ttl(std::string_view cue) const;
    void log_transition(UserId user, std::string detail);

private:
    void append(EventKind kind, const DeviceId& device, std::string detail, std::string action = {});

    std::string app_id_;
    std::unique_ptr<SimApp> app_;
    std::map<UserId, DeviceProfile> devices_;
    WorldOptions options_;
    GoalPredicate goal_;
    SimTime clock_{0};
    std::vector<EventRecord> events_;
    std::map<std::pair<SimTime, DeadlineId>, Deadline> deadlines_;
    DeadlineId next_deadline_ = 1;
    bool crashed_ = false;
};

/// Snapshots the simplified screen the way agents see it.
ScreenSnapshot observe(const World& world, UserId user);

} // namespace coplay

#endif // COPLAY_SIM_ENV_HPP
