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

#include "apps/builtin.hpp"
#include "apps/ui.hpp"
#include "strings.hpp"

namespace coplay::apps {

namespace {

enum class RequestPhase { None, Pending, AwaitingConsent, Sharing, Denied, Expired, Stopped };

const char* phase_label(RequestPhase phase)
{
    switch (phase) {
    case RequestPhase::None: return "meeting";
    case RequestPhase::Pending: return "request-pending";
    case RequestPhase::AwaitingConsent: return "awaiting-system-consent";
    case RequestPhase::Sharing: return "sharing";
    case RequestPhase::Denied: return "denied";
    case RequestPhase::Expired: return "expired";
    case RequestPhase::Stopped: return "stopped";
    }
    return "meeting";
}

/// Everyone is already in one meeting. A participant can ask another to
/// share their screen; sharing needs the app grant and then a system consent.
class PermissionApp final : public NavApp {
public:
    PermissionApp() : NavApp("com.sim.meeting", "meeting") {}

    bool tap(World& world, UserId user, const ViewNode& target) override
    {
        const auto id = target.short_resource_id();
        const auto& screen = top(user);
        const auto name = screen_name(screen);

        if (phase_ == RequestPhase::Pending && user == to_) {
            if (id == "allow") {
                set_phase(world, user, RequestPhase::AwaitingConsent);
                return true;
            }
            if (id == "deny") {
                world.cancel(deadline_);
                set_phase(world, user, RequestPhase::Denied);
                return true;
            }
            return false;
        }
        if (phase_ == RequestPhase::AwaitingConsent && user == to_) {
            if (id == "button1") {
                world.cancel(deadline_);
                set_phase(world, user, RequestPhase::Sharing);
                shared_ = true;
                return true;
            }
            if (id == "button2") {
                world.cancel(deadline_);
                set_phase(world, user, RequestPhase::Denied);
                return true;
            }
            return false;
        }

        if (id == "participants" && name == "meeting") {
            push(user, "participants");
            return true;
        }
        if (id == "participant-row" && name == "participants") {
            if (const auto peer = user_named(target.text.value_or(""))) {
                push(user, "participant:" + std::to_string(peer->index()));
                return true;
            }
            return false;
        }
        if (id == "request-screen-share" && name == "participant") {
            if (phase_ == RequestPhase::Pending || phase_ == RequestPhase::AwaitingConsent ||
                phase_ == RequestPhase::Sharing) {
                return false;
            }
            from_ = user;
            to_ = UserId{screen_arg(screen)};
            deadline_ = world.schedule("permission-request", user);
            set_phase(world, user, RequestPhase::Pending);
            return true;
        }
        if (id == "stop-share" && phase_ == RequestPhase::Sharing && user == to_) {
            set_phase(world, user, RequestPhase::Stopped);
            return true;
        }
        if (id == "mic") {
            muted_[user] = !muted_[user];
            return true;
        }
        return false;
    }

    bool back(World& world, UserId user) override
    {
        if ((phase_ == RequestPhase::Pending || phase_ == RequestPhase::AwaitingConsent) && user == to_) {
            return false;
        }
        return NavApp::back(world, user);
    }

    void expire(World& world, const Deadline& deadline) override
    {
        if (deadline.id == deadline_ &&
            (phase_ == RequestPhase::Pending || phase_ == RequestPhase::AwaitingConsent)) {
            set_phase(world, from_, RequestPhase::Expired);
        }
    }

    SimDuration default_ttl(std::string_view) const override { return SimDuration{60000}; }

    std::string state_label() const override { return phase_label(phase_); }

    GoalPredicate goal_for(const TaskSpec& task) const override
    {
        const auto initiator = task.initiator;
        const auto peer = subject_peer(task, initiator);
        return {World::display_name(peer) + " shares their screen with " + World::display_name(initiator),
                [initiator, peer](const World& world) {
                    const auto& app = world.app_as<PermissionApp>();
                    return app.shared_ && app.from_ == initiator && app.to_ == peer;
                }};
    }

protected:
    std::vector<ViewNode> body(const World&, UserId user) const override
    {
        std::vector<ViewNode> out;
        const auto& screen = top(user);
        const auto name = screen_name(screen);
        if (name == "participants") {
            out.push_back(ui_.label("Participants (" + std::to_string(users_.size()) + ")", "title"));
            std::vector<ViewNode> rows;
            for (auto other : others(user)) {
                rows.push_back(ui_.padded(ui_.list_item("participant-row", World::display_name(other)), 1));
            }
            out.push_back(ui_.layout(std::move(rows), "androidx.recyclerview.widget.RecyclerView"));
            return out;
        }
        if (name == "participant") {
            const UserId peer{screen_arg(screen)};
            out.push_back(ui_.label(World::display_name(peer), "title"));
            out.push_back(ui_.button("request-screen-share", "Ask to share screen"));
            out.push_back(ui_.button("request-camera", "Ask to turn on camera"));
            if (from_ == user && to_ == peer && phase_ != RequestPhase::None) {
                out.push_back(ui_.label(std::string("Request: ") + phase_label(phase_), "request-status"));
            }
            return out;
        }
        out.push_back(ui_.padded(ui_.label("Standup meeting", "title"), 2));
        out.push_back(ui_.label(std::to_string(users_.size()) + " participants", "participant-count"));
        if (phase_ == RequestPhase::Sharing && (user == from_ || user == to_)) {
            out.push_back(ui_.label(user == to_ ? "You are sharing your screen"
                                                : "Viewing " + World::display_name(to_) + "'s screen",
                                    "share-status"));
            if (user == to_) {
                out.push_back(ui_.button("stop-share", "Stop sharing"));
            }
        }
        std::vector<ViewNode> controls;
        controls.push_back(ui_.icon_button("mic", muted_.contains(user) && muted_.at(user) ? "Unmute" : "Mute"));
        controls.push_back(ui_.icon_button("camera", "Camera"));
        controls.push_back(ui_.button("participants", "Participants"));
        controls.push_back(ui_.button("leave", "Leave"));
        out.push_back(ui_.padded(ui_.layout(std::move(controls)), 1));
        return out;
    }

    std::optional<ViewNode> overlay(const World&, UserId user) const override
    {
        if (user != to_) {
            return std::nullopt;
        }
        if (phase_ == RequestPhase::Pending) {
            std::vector<ViewNode> card;
            card.push_back(ui_.label(World::display_name(from_) + " asks you to share your screen", "request-title"));
            card.push_back(ui_.button("deny", "Don't allow"));
            card.push_back(ui_.button("allow", "Allow"));
            return ui_.section("share-request", std::move(card));
        }
        if (phase_ == RequestPhase::AwaitingConsent) {
            std::vector<ViewNode> dialog;
            dialog.push_back(ui_.label("Start recording or casting with Meeting?", "alertTitle"));
            dialog.push_back(ui_.system_button("button2", "Cancel"));
            dialog.push_back(ui_.system_button("button1", "Start now"));
            return ui_.padded(ui_.layout(std::move(dialog)), 1);
        }
        return std::nullopt;
    }

private:
    void set_phase(World& world, UserId actor, RequestPhase next)
    {
        world.log_transition(actor, std::string(phase_label(phase_)) + " -> " + phase_label(next) + " (" +
                                        World::display_name(from_) + " asks " + World::display_name(to_) + ")");
        phase_ = next;
    }

    RequestPhase phase_ = RequestPhase::None;
    UserId from_;
    UserId to_;
    DeadlineId deadline_ = 0;
    bool shared_ = false;
    std::map<UserId, bool> muted_;
};

} // namespace

std::unique_ptr<SimApp> make_permission_app()
{
    return std::make_unique<PermissionApp>();
}

} // namespace coplay::apps
