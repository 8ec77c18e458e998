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

#include <optional>
#include <set>

#include "apps/builtin.hpp"
#include "apps/ui.hpp"
#include "strings.hpp"

namespace coplay::apps {

namespace {

enum class CallPhase { Idle, Ringing, Connected, Expired, Declined, Cancelled, Ended };

const char* phase_label(CallPhase phase)
{
    switch (phase) {
    case CallPhase::Idle: return "idle";
    case CallPhase::Ringing: return "ringing";
    case CallPhase::Connected: return "connected";
    case CallPhase::Expired: return "expired";
    case CallPhase::Declined: return "declined";
    case CallPhase::Cancelled: return "cancelled";
    case CallPhase::Ended: return "ended";
    }
    return "idle";
}

class VoiceCallApp final : public NavApp {
public:
    VoiceCallApp() : NavApp("com.sim.voicecall", "home") {}

    bool tap(World& world, UserId user, const ViewNode& target) override
    {
        const auto id = target.short_resource_id();
        const auto text = target.text.value_or("");
        const auto& screen = top(user);

        if (id == "accept" && ringing_to(user)) {
            world.cancel(deadline_);
            set_phase(world, user, CallPhase::Connected);
            connected_.insert({caller_.index(), callee_.index()});
            return true;
        }
        if (id == "decline" && ringing_to(user)) {
            world.cancel(deadline_);
            set_phase(world, user, CallPhase::Declined);
            return true;
        }
        if (id == "hang-up" && in_call(user)) {
            if (phase_ == CallPhase::Ringing) {
                world.cancel(deadline_);
                missed_[callee_] = caller_;
                set_phase(world, user, CallPhase::Cancelled);
            } else {
                set_phase(world, user, CallPhase::Ended);
            }
            return true;
        }
        if (in_call(user)) {
            return false;
        }
        if (id == "chat-row" || id == "contact-row") {
            if (const auto peer = user_named(text)) {
                push(user, "chat:" + std::to_string(peer->index()));
                return true;
            }
            return false;
        }
        if (id == "contacts-tab") {
            if (screen == "contacts") {
                return false;
            }
            reset(user);
            push(user, "contacts");
            return true;
        }
        if (id == "chats-tab") {
            if (screen == home_) {
                return false;
            }
            reset(user);
            return true;
        }
        if (id == "voice-call" && screen_name(screen) == "chat") {
            return dial(world, user, UserId{screen_arg(screen)});
        }
        if (id == "call-back" && missed_.contains(user)) {
            const auto peer = missed_.at(user);
            missed_.erase(user);
            dial(world, user, peer);
            return true;
        }
        if (id == "send" && screen_name(screen) == "chat") {
            const auto message = std::string(detail::trim(field(user, "message-field")));
            if (message.empty()) {
                return false;
            }
            const UserId peer{screen_arg(screen)};
            messages_[chat_key(user, peer)].push_back(World::display_name(user) + ": " + message);
            set_field(user, "message-field", "");
            return true;
        }
        return false;
    }

    bool back(World& world, UserId user) override
    {
        if (ringing_to(user)) {
            return false; // the incoming call overlay ignores back
        }
        return NavApp::back(world, user);
    }

    void expire(World& world, const Deadline& deadline) override
    {
        if (deadline.cue == "ring" && deadline.id == deadline_ && phase_ == CallPhase::Ringing) {
            missed_[callee_] = caller_;
            messages_[chat_key(caller_, callee_)].push_back("Voice call: no answer");
            set_phase(world, caller_, CallPhase::Expired);
        }
    }

    SimDuration default_ttl(std::string_view cue) const override
    {
        return cue == "ring" ? SimDuration{110000} : SimDuration{60000};
    }

    std::string state_label() const override { return phase_label(phase_); }

    GoalPredicate goal_for(const TaskSpec& task) const override
    {
        const auto initiator = task.initiator;
        const auto peer = subject_peer(task, initiator);
        const auto text = detail::lower(task.raw_text);
        if (text.find("call back") != std::string::npos || text.find("callback") != std::string::npos) {
            return {World::display_name(peer) + " calls " + World::display_name(initiator) + " back",
                    [initiator, peer](const World& world) {
                        const auto& app = world.app_as<VoiceCallApp>();
                        return app.dialed_.contains({peer.index(), initiator.index()});
                    }};
        }
        return {World::display_name(initiator) + " and " + World::display_name(peer) + " connect a voice call",
                [initiator, peer](const World& world) {
                    const auto& app = world.app_as<VoiceCallApp>();
                    return app.connected_.contains({initiator.index(), peer.index()});
                }};
    }

protected:
    std::vector<ViewNode> body(const World&, UserId user) const override
    {
        std::vector<ViewNode> out;
        if (in_call(user) && !ringing_to(user)) {
            const auto peer = user == caller_ ? callee_ : caller_;
            const bool connected = phase_ == CallPhase::Connected;
            out.push_back(ui_.image("Avatar of " + World::display_name(peer)));
            out.push_back(ui_.label(connected ? "In call with " + World::display_name(peer)
                                              : "Calling " + World::display_name(peer) + "...",
                                    "call-status"));
            std::vector<ViewNode> controls;
            controls.push_back(ui_.icon_button("mute", "Mute"));
            controls.push_back(ui_.icon_button("speaker", "Speaker"));
            controls.push_back(ui_.button("hang-up", "Hang up"));
            out.push_back(ui_.padded(ui_.layout(std::move(controls)), 1));
            return out;
        }

        const auto& screen = top(user);
        const auto name = screen_name(screen);
        if (name == "chat") {
            const UserId peer{screen_arg(screen)};
            std::vector<ViewNode> bar;
            bar.push_back(ui_.label(World::display_name(peer), "chat-title"));
            bar.push_back(ui_.icon_button("voice-call", "Voice call"));
            bar.push_back(ui_.icon_button("video-call", "Video call"));
            out.push_back(ui_.padded(ui_.section("toolbar", std::move(bar)), 1));
            std::vector<ViewNode> log;
            const auto it = messages_.find(chat_key(user, peer));
            if (it != messages_.end()) {
                for (const auto& m : it->second) {
                    log.push_back(ui_.padded(ui_.label(m), 1));
                }
            }
            log.push_back(ui_.spacer());
            out.push_back(ui_.section("message-list", std::move(log)));
            std::vector<ViewNode> composer;
            composer.push_back(ui_.edit("message-field", field(user, "message-field"), "Message"));
            composer.push_back(ui_.button("send", "Send"));
            out.push_back(ui_.layout(std::move(composer)));
            return out;
        }

        const bool contacts = name == "contacts";
        out.push_back(ui_.padded(ui_.label(contacts ? "Contacts" : "Chats", "title"), 2));
        if (!contacts && missed_.contains(user)) {
            std::vector<ViewNode> banner;
            banner.push_back(ui_.label("Missed voice call from " + World::display_name(missed_.at(user))));
            banner.push_back(ui_.button("call-back", "Call back"));
            out.push_back(ui_.section("missed-call", std::move(banner)));
        }
        std::vector<ViewNode> rows;
        for (auto other : others(user)) {
            rows.push_back(ui_.padded(ui_.list_item(contacts ? "contact-row" : "chat-row", World::display_name(other)), 1));
        }
        out.push_back(ui_.layout(std::move(rows), "androidx.recyclerview.widget.RecyclerView"));
        std::vector<ViewNode> tabs;
        tabs.push_back(ui_.button("chats-tab", "Chats"));
        tabs.push_back(ui_.button("contacts-tab", "Contacts"));
        out.push_back(ui_.layout(std::move(tabs)));
        return out;
    }

    std::optional<ViewNode> overlay(const World&, UserId user) const override
    {
        if (!ringing_to(user)) {
            return std::nullopt;
        }
        std::vector<ViewNode> card;
        card.push_back(ui_.label(World::display_name(caller_) + " is calling you", "incoming-title"));
        card.push_back(ui_.button("decline", "Decline"));
        card.push_back(ui_.button("accept", "Accept"));
        return ui_.section("incoming-call", std::move(card));
    }

private:
    static std::pair<int, int> chat_key(UserId a, UserId b)
    {
        return {std::min(a.index(), b.index()), std::max(a.index(), b.index())};
    }

    bool active() const { return phase_ == CallPhase::Ringing || phase_ == CallPhase::Connected; }
    bool in_call(UserId user) const { return active() && (user == caller_ || user == callee_); }
    bool ringing_to(UserId user) const { return phase_ == CallPhase::Ringing && user == callee_; }

    bool dial(World& world, UserId from, UserId to)
    {
        if (active() || from == to) {
            return false;
        }
        caller_ = from;
        callee_ = to;
        dialed_.insert({from.index(), to.index()});
        deadline_ = world.schedule("ring", from);
        set_phase(world, from, CallPhase::Ringing);
        return true;
    }

    void set_phase(World& world, UserId actor, CallPhase next)
    {
        const auto before = phase_;
        phase_ = next;
        world.log_transition(actor, std::string(phase_label(before)) + " -> " + phase_label(next) + " (" +
                                        World::display_name(caller_) + " -> " + World::display_name(callee_) + ")");
    }

    CallPhase phase_ = CallPhase::Idle;
    UserId caller_;
    UserId callee_;
    DeadlineId deadline_ = 0;
    std::set<std::pair<int, int>> connected_;
    std::set<std::pair<int, int>> dialed_;
    std::map<UserId, UserId> missed_;
    std::map<std::pair<int, int>, std::vector<std::string>> messages_;
};

} // namespace

std::unique_ptr<SimApp> make_voice_call_app()
{
    return std::make_unique<VoiceCallApp>();
}

} // namespace coplay::apps
