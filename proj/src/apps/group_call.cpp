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

#include <set>

#include "apps/builtin.hpp"
#include "apps/ui.hpp"
#include "strings.hpp"

namespace coplay::apps {

namespace {

enum class CallKind { Video, Voice };

const char* kind_label(CallKind kind)
{
    return kind == CallKind::Video ? "video" : "voice";
}

class GroupCallApp final : public NavApp {
public:
    GroupCallApp() : NavApp("com.sim.groupchat", "home") {}

    bool tap(World& world, UserId user, const ViewNode& target) override
    {
        const auto id = target.short_resource_id();
        const auto text = target.text.value_or("");
        const auto& screen = top(user);
        const auto name = screen_name(screen);

        if (ringing(user)) {
            if (id == "accept") {
                pending_.erase(user);
                joined_.insert(user);
                answered(world);
                world.log_transition(user, World::display_name(user) + " joined the " + kind_label(kind_) + " call");
                return true;
            }
            if (id == "decline") {
                pending_.erase(user);
                answered(world);
                world.log_transition(user, World::display_name(user) + " declined the call");
                return true;
            }
            return false;
        }
        if (in_call(user)) {
            if (id == "hang-up") {
                joined_.erase(user);
                if (joined_.size() <= 1 && pending_.empty()) {
                    finish(world, user, "ended");
                }
                world.log_transition(user, World::display_name(user) + " left the call");
                return true;
            }
            return id == "mute" && muted_.insert(user).second;
        }

        if (id == "group-row" && name == "home") {
            push(user, "group");
            return true;
        }
        if (id == "chat-row" && name == "home") {
            if (const auto peer = user_named(text)) {
                push(user, "chat:" + std::to_string(peer->index()));
                return true;
            }
            return false;
        }
        if ((id == "video-call" || id == "voice-call") && name == "group") {
            if (active_) {
                return false;
            }
            start_call(world, user, id == "video-call" ? CallKind::Video : CallKind::Voice);
            return true;
        }
        if (id == "send" && (name == "group" || name == "chat")) {
            const auto message = std::string(detail::trim(field(user, "message-field")));
            if (message.empty()) {
                return false;
            }
            messages_[screen].push_back(World::display_name(user) + ": " + message);
            set_field(user, "message-field", "");
            return true;
        }
        if (id == "add-member" && name == "group") {
            push(user, "add-member");
            return true;
        }
        if (id == "more" && name == "group") {
            push(user, "more-panel");
            return true;
        }
        return false;
    }

    bool back(World& world, UserId user) override
    {
        if (ringing(user) || in_call(user)) {
            return false;
        }
        return NavApp::back(world, user);
    }

    void expire(World& world, const Deadline& deadline) override
    {
        if (deadline.cue != "group-ring" || deadline.id != deadline_) {
            return;
        }
        deadline_ = 0;
        for (auto u : pending_) {
            missed_.insert(u);
        }
        pending_.clear();
        world.log_transition(host_, "group ring timed out");
        if (joined_.size() <= 1) {
            finish(world, host_, "no-answer");
        }
    }

    SimDuration default_ttl(std::string_view cue) const override
    {
        return cue == "group-ring" ? SimDuration{110000} : SimDuration{60000};
    }

    std::string state_label() const override
    {
        if (!active_) {
            return last_;
        }
        return pending_.empty() ? "in-call" : "ringing";
    }

    GoalPredicate goal_for(const TaskSpec& task) const override
    {
        const auto text = detail::lower(task.raw_text);
        const auto kind = text.find("voice") != std::string::npos ? CallKind::Voice : CallKind::Video;
        return {std::string("everyone joins the group ") + kind_label(kind) + " call", [kind](const World& world) {
                    const auto& app = world.app_as<GroupCallApp>();
                    return app.ever_full_ && app.full_kind_ == kind;
                }};
    }

protected:
    std::vector<ViewNode> body(const World&, UserId user) const override
    {
        std::vector<ViewNode> out;
        if (in_call(user)) {
            std::vector<UserId> joined(joined_.begin(), joined_.end());
            out.push_back(ui_.label(std::string(kind_ == CallKind::Video ? "Video" : "Voice") + " call - Team",
                                    "call-title"));
            out.push_back(ui_.label("Joined: " + join_names(joined), "call-members"));
            if (!pending_.empty()) {
                std::vector<UserId> waiting(pending_.begin(), pending_.end());
                out.push_back(ui_.label("Ringing: " + join_names(waiting), "call-waiting"));
            }
            std::vector<ViewNode> controls;
            controls.push_back(ui_.icon_button("mute", "Mute"));
            controls.push_back(ui_.button("hang-up", "Hang up"));
            out.push_back(ui_.padded(ui_.layout(std::move(controls)), 1));
            return out;
        }
        const auto& screen = top(user);
        const auto name = screen_name(screen);
        if (name == "group" || name == "chat") {
            std::vector<ViewNode> bar;
            if (name == "group") {
                bar.push_back(ui_.label("Team (" + std::to_string(users_.size()) + ")", "chat-title"));
                bar.push_back(ui_.button("add-member", "+"));
            } else {
                bar.push_back(ui_.label(World::display_name(UserId{screen_arg(screen)}), "chat-title"));
            }
            bar.push_back(ui_.icon_button("voice-call", "Voice call"));
            bar.push_back(ui_.icon_button("video-call", "Video call"));
            out.push_back(ui_.padded(ui_.section("toolbar", std::move(bar)), 1));
            std::vector<ViewNode> log;
            const auto it = messages_.find(screen);
            if (it != messages_.end()) {
                for (const auto& m : it->second) {
                    log.push_back(ui_.padded(ui_.label(m), 1));
                }
            }
            if (name == "group" && missed_.contains(user)) {
                log.push_back(ui_.label("Missed group call"));
            }
            log.push_back(ui_.spacer());
            out.push_back(ui_.section("message-list", std::move(log)));
            std::vector<ViewNode> composer;
            composer.push_back(ui_.edit("message-field", field(user, "message-field"), "Message"));
            composer.push_back(ui_.button("more", "+"));
            composer.push_back(ui_.button("send", "Send"));
            out.push_back(ui_.layout(std::move(composer)));
            return out;
        }
        if (name == "add-member" || name == "more-panel") {
            out.push_back(ui_.label(name == "add-member" ? "Add members" : "More", "title"));
            out.push_back(ui_.label(name == "add-member" ? "Everyone is already in this group" : "Album  Camera  File"));
            return out;
        }
        out.push_back(ui_.padded(ui_.label("Chats", "title"), 2));
        std::vector<ViewNode> rows;
        rows.push_back(ui_.padded(ui_.list_item("group-row", "Team"), 1));
        for (auto other : others(user)) {
            rows.push_back(ui_.padded(ui_.list_item("chat-row", World::display_name(other)), 1));
        }
        out.push_back(ui_.layout(std::move(rows), "androidx.recyclerview.widget.RecyclerView"));
        return out;
    }

    std::optional<ViewNode> overlay(const World&, UserId user) const override
    {
        if (!ringing(user)) {
            return std::nullopt;
        }
        std::vector<ViewNode> card;
        card.push_back(ui_.label(World::display_name(host_) + " started a group " + kind_label(kind_) + " call in Team",
                                 "incoming-title"));
        card.push_back(ui_.button("decline", "Decline"));
        card.push_back(ui_.button("accept", "Accept"));
        return ui_.section("incoming-call", std::move(card));
    }

private:
    bool ringing(UserId user) const { return active_ && pending_.contains(user); }
    bool in_call(UserId user) const { return active_ && joined_.contains(user); }

    void start_call(World& world, UserId host, CallKind kind)
    {
        active_ = true;
        host_ = host;
        kind_ = kind;
        joined_ = {host};
        pending_.clear();
        for (auto u : others(host)) {
            pending_.insert(u);
        }
        deadline_ = world.schedule("group-ring", host);
        world.log_transition(host, std::string("idle -> ringing (group ") + kind_label(kind) + " call by " +
                                       World::display_name(host) + ")");
    }

    void answered(World& world)
    {
        if (joined_.size() == users_.size()) {
            ever_full_ = true;
            full_kind_ = kind_;
        }
        if (pending_.empty()) {
            world.cancel(deadline_);
            deadline_ = 0;
            if (joined_.size() <= 1) {
                finish(world, host_, "declined");
            }
        }
    }

    void finish(World& world, UserId actor, const char* label)
    {
        active_ = false;
        world.cancel(deadline_);
        deadline_ = 0;
        joined_.clear();
        pending_.clear();
        last_ = label;
        world.log_transition(actor, std::string("call -> ") + label);
    }

    bool active_ = false;
    UserId host_;
    CallKind kind_ = CallKind::Video;
    std::set<UserId> joined_;
    std::set<UserId> pending_;
    std::set<UserId> missed_;
    std::set<UserId> muted_;
    DeadlineId deadline_ = 0;
    std::string last_ = "idle";
    bool ever_full_ = false;
    CallKind full_kind_ = CallKind::Video;
    std::map<std::string, std::vector<std::string>> messages_;
};

} // namespace

std::unique_ptr<SimApp> make_group_call_app()
{
    return std::make_unique<GroupCallApp>();
}

} // namespace coplay::apps
