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

#include "coplay/sim_env.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "apps/builtin.hpp"
#include "coplay/error.hpp"
#include "strings.hpp"

namespace coplay {

std::string_view to_string(EventKind kind)
{
    switch (kind) {
    case EventKind::Action: return "action";
    case EventKind::Transition: return "transition";
    case EventKind::Crash: return "crash";
    case EventKind::Expiry: return "expiry";
    }
    return "action";
}

EventKind event_kind_from_string(std::string_view text)
{
    if (text == "action") return EventKind::Action;
    if (text == "transition") return EventKind::Transition;
    if (text == "crash") return EventKind::Crash;
    if (text == "expiry") return EventKind::Expiry;
    fail(ErrorCode::Parse, "unknown event kind \"" + std::string(text) + "\"");
}

std::string_view to_string(OutcomeStatus status)
{
    switch (status) {
    case OutcomeStatus::Applied: return "applied";
    case OutcomeStatus::NoEffect: return "no-effect";
    case OutcomeStatus::UnknownElement: return "unknown-element";
    case OutcomeStatus::AmbiguousTarget: return "ambiguous-target";
    case OutcomeStatus::Crashed: return "crashed";
    case OutcomeStatus::Frozen: return "frozen";
    }
    return "applied";
}

// Fault tables

namespace {

std::string canonical_action_pattern(const std::string& text)
{
    if (text == "*") {
        return text;
    }
    try {
        return render_action(parse_action(text));
    } catch (const Error&) {
        return detail::lower(detail::trim(text));
    }
}

bool pattern_matches(std::string_view pattern, std::string_view value)
{
    return pattern == "*" || detail::iequals(pattern, value);
}

} // namespace

FaultTable FaultTable::from_json_text(const std::string& text)
{
    FaultTable table;
    try {
        const auto doc = nlohmann::json::parse(text);
        for (const auto& entry : doc.at("faults")) {
            FaultRule rule;
            rule.app_id = entry.value("app", std::string("*"));
            rule.state = entry.value("state", std::string("*"));
            rule.action = canonical_action_pattern(entry.value("action", std::string("*")));
            table.rules.push_back(std::move(rule));
        }
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::InvalidConfig, std::string("fault table: ") + e.what());
    }
    return table;
}

FaultTable FaultTable::from_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        fail(ErrorCode::Io, "cannot read fault table " + path);
    }
    std::ostringstream content;
    content << in.rdbuf();
    return from_json_text(content.str());
}

bool FaultTable::matches(std::string_view app_id, std::string_view state, std::string_view action) const
{
    for (const auto& rule : rules) {
        if (pattern_matches(rule.app_id, app_id) && pattern_matches(rule.state, state) &&
            pattern_matches(rule.action, action)) {
            return true;
        }
    }
    return false;
}

// Registry

const AppRegistry& AppRegistry::builtin()
{
    static const AppRegistry registry = [] {
        AppRegistry r;
        apps::register_builtin_apps(r);
        return r;
    }();
    return registry;
}

void AppRegistry::add(AppInfo info)
{
    if (contains(info.id)) {
        fail(ErrorCode::InvalidConfig, "app id registered twice: " + info.id);
    }
    apps_.push_back(std::move(info));
}

bool AppRegistry::contains(std::string_view id) const
{
    for (const auto& app : apps_) {
        if (app.id == id) {
            return true;
        }
    }
    return false;
}

const AppInfo& AppRegistry::find(std::string_view id) const
{
    for (const auto& app : apps_) {
        if (app.id == id) {
            return app;
        }
    }
    fail(ErrorCode::UnknownApp, "no sim app registered as \"" + std::string(id) + "\"");
}

const AppInfo& AppRegistry::match(const TaskSpec& task) const
{
    const std::string text = detail::lower(task.raw_text);
    for (const auto& app : apps_) {
        for (const auto& group : app.keywords) {
            bool all = !group.empty();
            for (const auto& word : group) {
                all = all && text.find(word) != std::string::npos;
            }
            if (all) {
                return app;
            }
        }
    }
    fail(ErrorCode::UnknownApp, "no sim app matches task \"" + task.raw_text + "\"");
}

// World

World::World(std::string app_id, std::unique_ptr<SimApp> app, std::map<UserId, DeviceProfile> devices,
             WorldOptions options)
    : app_id_(std::move(app_id)), app_(std::move(app)), devices_(std::move(devices)), options_(std::move(options))
{
    if (!app_) {
        fail(ErrorCode::InvalidArgument, "world needs an app");
    }
    goal_ = {"never", [](const World&) { return false; }};
    app_->start(*this);
}

World World::create(std::string_view app_id, std::map<UserId, DeviceProfile> devices, WorldOptions options,
                    const AppRegistry& registry)
{
    const auto& info = registry.find(app_id);
    return World(info.id, info.factory(), std::move(devices), std::move(options));
}

World::World(World&&) noexcept = default;
World& World::operator=(World&&) noexcept = default;
World::~World() = default;

std::vector<UserId> World::users() const
{
    std::vector<UserId> out;
    for (const auto& entry : devices_) {
        out.push_back(entry.first);
    }
    return out;
}

UserId World::user_of(const DeviceId& device) const
{
    for (const auto& [user, profile] : devices_) {
        if (profile.device_id == device) {
            return user;
        }
    }
    fail(ErrorCode::UnknownDevice, "device " + device + " is not part of this world");
}

const DeviceId& World::device_of(UserId user) const
{
    return profile_of(user).device_id;
}

const DeviceProfile& World::profile_of(UserId user) const
{
    const auto it = devices_.find(user);
    if (it == devices_.end()) {
        fail(ErrorCode::UnknownDevice, to_string(user) + " has no device in this world");
    }
    return it->second;
}

std::string World::display_name(UserId user)
{
    static const char* names[] = {"Alice", "Bob", "Carol", "Dave", "Erin", "Frank"};
    if (user.index() >= 1 && user.index() <= 6) {
        return names[user.index() - 1];
    }
    return "User " + std::to_string(user.index());
}

ScreenSnapshot World::project_screen(const DeviceId& device) const
{
    const UserId user = user_of(device);
    return {device, app_->screen(*this, user), clock_};
}

ActionOutcome World::apply_action(const DeviceId& device, const AgentAction& action)
{
    const UserId user = user_of(device);
    if (!is_device_action(action)) {
        fail(ErrorCode::InvalidArgument, "switch and end_task are not device actions");
    }
    const std::string canonical = render_action(action);
    if (crashed_) {
        append(EventKind::Action, device, "ignored, app has crashed", canonical);
        return {OutcomeStatus::Frozen, "app has crashed"};
    }

    const ViewNode* target = nullptr;
    ScreenSnapshot snapshot;
    if (!std::holds_alternative<action::Back>(action)) {
        const ElementRef& ref = std::holds_alternative<action::Tap>(action) ? std::get<action::Tap>(action).target
                                                                           : std::get<action::Input>(action).target;
        snapshot = observe(*this, user);
        try {
            target = &resolve_target(snapshot, ref);
        } catch (const Error& e) {
            const bool ambiguous = e.code() == ErrorCode::AmbiguousMatch;
            append(EventKind::Action, device, std::string(ambiguous ? "ambiguous: " : "miss: ") + e.what(), canonical);
            return {ambiguous ? OutcomeStatus::AmbiguousTarget : OutcomeStatus::UnknownElement, e.what()};
        }
        if (std::holds_alternative<action::Tap>(action) && !target->clickable) {
            append(EventKind::Action, device, "no effect: element is not clickable", canonical);
            return {OutcomeStatus::NoEffect, "element is not clickable"};
        }
        if (std::holds_alternative<action::Input>(action) && !target->editable()) {
            append(EventKind::Action, device, "no effect: element is not editable", canonical);
            return {OutcomeStatus::NoEffect, "element is not editable"};
        }
    }

    const std::string state = app_->state_label();
    if (options_.faults.matches(app_id_, state, canonical)) {
        crashed_ = true;
        append(EventKind::Crash, device, app_id_ + " crashed in state " + state, canonical);
        return {OutcomeStatus::Crashed, "fault injected in state " + state};
    }

    append(EventKind::Action, device, std::string(verb(action)), canonical);
    bool changed = false;
    if (std::holds_alternative<action::Back>(action)) {
        changed = app_->back(*this, user);
    } else if (std::holds_alternative<action::Tap>(action)) {
        changed = app_->tap(*this, user, *target);
    } else {
        changed = app_->input(*this, user, *target, std::get<action::Input>(action).value);
    }
    if (!changed) {
        return {OutcomeStatus::NoEffect, "nothing happened"};
    }
    return {OutcomeStatus::Applied, {}};
}

void World::advance_clock(SimDuration delta)
{
    if (delta.count() < 0) {
        fail(ErrorCode::InvalidArgument, "clock cannot move backwards");
    }
    const SimTime target = clock_ + delta;
    while (!deadlines_.empty() && deadlines_.begin()->second.at <= target) {
        const Deadline due = deadlines_.begin()->second;
        deadlines_.erase(deadlines_.begin());
        clock_ = std::max(clock_, due.at);
        const auto& device = devices_.contains(due.owner) ? devices_.at(due.owner).device_id : DeviceId{};
        append(due.goal_critical ? EventKind::Expiry : EventKind::Transition, device, due.cue + " expired");
        if (!crashed_) {
            app_->expire(*this, due);
        }
    }
    clock_ = target;
}

void World::set_goal(GoalPredicate goal)
{
    goal_ = std::move(goal);
}

bool World::check_goal() const
{
    return goal_.check && goal_.check(*this);
}

std::string World::state_label() const
{
    return app_->state_label();
}

std::vector<Deadline> World::pending_deadlines() const
{
    std::vector<Deadline> out;
    for (const auto& entry : deadlines_) {
        out.push_back(entry.second);
    }
    return out;
}

DeadlineId World::schedule(std::string cue, UserId owner, bool goal_critical)
{
    const DeadlineId id = next_deadline_++;
    const SimTime at = clock_ + ttl(cue);
    deadlines_.emplace(std::pair{at, id}, Deadline{id, at, std::move(cue), owner, goal_critical});
    return id;
}

void World::cancel(DeadlineId id)
{
    for (auto it = deadlines_.begin(); it != deadlines_.end(); ++it) {
        if (it->second.id == id) {
            deadlines_.erase(it);
            return;
        }
    }
}

bool World::pending(DeadlineId id) const
{
    return deadline_at(id).has_value();
}

std::optional<SimTime> World::deadline_at(DeadlineId id) const
{
    for (const auto& entry : deadlines_) {
        if (entry.second.id == id) {
            return entry.second.at;
        }
    }
    return std::nullopt;
}

SimDuration World::ttl(std::string_view cue) const
{
    if (const auto it = options_.ttl_overrides.find(std::string(cue)); it != options_.ttl_overrides.end()) {
        return it->second;
    }
    return app_->default_ttl(cue);
}

void World::log_transition(UserId user, std::string detail)
{
    const auto& device = devices_.contains(user) ? devices_.at(user).device_id : DeviceId{};
    append(EventKind::Transition, device, std::move(detail));
}

void World::append(EventKind kind, const DeviceId& device, std::string detail, std::string action)
{
    EventRecord record;
    record.seq = static_cast<std::int64_t>(events_.size());
    record.sim_time = clock_;
    record.device_id = device;
    record.kind = kind;
    record.detail = std::move(detail);
    record.state = app_->state_label();
    record.action = std::move(action);
    events_.push_back(std::move(record));
}

ScreenSnapshot observe(const World& world, UserId user)
{
    return simplify(world.project_screen(world.device_of(user)));
}

} // namespace coplay
