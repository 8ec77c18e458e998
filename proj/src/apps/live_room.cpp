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

enum class InviteKind { Guest, Watch };
enum class InvitePhase { Pending, Accepted, Declined, Expired };

struct Invite {
    InviteKind kind = InviteKind::Guest;
    UserId from;
    UserId to;
    InvitePhase phase = InvitePhase::Pending;
    DeadlineId deadline = 0;
};

const char* phase_label(InvitePhase phase)
{
    switch (phase) {
    case InvitePhase::Pending: return "pending";
    case InvitePhase::Accepted: return "accepted";
    case InvitePhase::Declined: return "declined";
    case InvitePhase::Expired: return "expired";
    }
    return "pending";
}

class LiveRoomApp final : public NavApp {
public:
    LiveRoomApp() : NavApp("com.sim.live", "feed") {}

    bool tap(World& world, UserId user, const ViewNode& target) override
    {
        const auto id = target.short_resource_id();
        const auto text = target.text.value_or("");
        const auto& screen = top(user);
        const auto name = screen_name(screen);

        if (const auto idx = pending_guest_invite(user)) {
            if (id == "accept") {
                resolve(world, *idx, InvitePhase::Accepted);
                guests_[invites_[*idx].from].insert(user);
                reset(user);
                push(user, "live-guest:" + std::to_string(invites_[*idx].from.index()));
                return true;
            }
            if (id == "decline") {
                resolve(world, *idx, InvitePhase::Declined);
                return true;
            }
            return false;
        }

        if (id == "home-tab") {
            if (screen == home_) {
                return false;
            }
            reset(user);
            return true;
        }
        if (id == "inbox-tab") {
            if (name == "inbox") {
                return false;
            }
            reset(user);
            push(user, "inbox");
            read_.insert(user);
            return true;
        }
        if (id == "multi-guest" && name == "feed") {
            push(user, "guest-picker");
            return true;
        }
        if (id == "share" && name == "feed") {
            push(user, "share-panel");
            return true;
        }
        if (id == "watch-together" && name == "share-panel") {
            replace_top(user, "watch-picker");
            return true;
        }
        if (id == "copy-link" && name == "share-panel") {
            return false;
        }
        if (id == "friend-row" && (name == "guest-picker" || name == "watch-picker")) {
            const auto peer = user_named(text);
            if (!peer) {
                return false;
            }
            const auto kind = name == "guest-picker" ? InviteKind::Guest : InviteKind::Watch;
            send_invite(world, user, *peer, kind);
            if (kind == InviteKind::Guest) {
                reset(user);
                push(user, "live-host");
            } else {
                replace_top(user, "watch-waiting:" + std::to_string(peer->index()));
            }
            return true;
        }
        if (id == "watch-invite" && name == "inbox") {
            const auto idx = latest_watch_invite(user);
            if (!idx) {
                return false;
            }
            push(user, "invite-card:" + std::to_string(*idx));
            return true;
        }
        if (name == "invite-card") {
            const auto idx = static_cast<std::size_t>(screen_arg(screen));
            if (idx >= invites_.size() || invites_[idx].phase != InvitePhase::Pending) {
                return false;
            }
            if (id == "accept") {
                resolve(world, idx, InvitePhase::Accepted);
                watching_.insert({invites_[idx].from.index(), user.index()});
                reset(user);
                push(user, "watching:" + std::to_string(invites_[idx].from.index()));
                return true;
            }
            if (id == "decline") {
                resolve(world, idx, InvitePhase::Declined);
                pop(user);
                return true;
            }
            return false;
        }
        if (id == "end-live" && name == "live-host") {
            guests_.erase(user);
            live_.erase(user);
            world.log_transition(user, World::display_name(user) + " ended LIVE");
            reset(user);
            return true;
        }
        if (id == "leave" && (name == "live-guest" || name == "watching")) {
            const UserId other{screen_arg(screen)};
            if (name == "live-guest") {
                guests_[other].erase(user);
            } else {
                watching_.erase({other.index(), user.index()});
            }
            reset(user);
            return true;
        }
        if (id == "like" && name == "feed") {
            return liked_.insert(user).second;
        }
        return false;
    }

    bool back(World& world, UserId user) override
    {
        if (pending_guest_invite(user)) {
            return false;
        }
        return NavApp::back(world, user);
    }

    void expire(World& world, const Deadline& deadline) override
    {
        for (std::size_t i = 0; i < invites_.size(); ++i) {
            if (invites_[i].deadline == deadline.id && invites_[i].phase == InvitePhase::Pending) {
                invites_[i].deadline = 0;
                set_phase(world, i, InvitePhase::Expired, invites_[i].from);
            }
        }
    }

    SimDuration default_ttl(std::string_view cue) const override
    {
        if (cue == "guest-invite" || cue == "watch-invite") {
            return SimDuration{110000};
        }
        return SimDuration{60000};
    }

    std::string state_label() const override
    {
        for (const auto& inv : invites_) {
            if (inv.phase == InvitePhase::Pending) {
                return inv.kind == InviteKind::Guest ? "guest-invite-pending" : "watch-invite-pending";
            }
        }
        if (!watching_.empty()) {
            return "watching-together";
        }
        for (const auto& [host, guests] : guests_) {
            if (!guests.empty()) {
                return "multi-guest-live";
            }
        }
        return live_.empty() ? "browsing" : "live";
    }

    GoalPredicate goal_for(const TaskSpec& task) const override
    {
        const auto initiator = task.initiator;
        const auto peer = subject_peer(task, initiator);
        const auto text = detail::lower(task.raw_text);
        if (text.find("watch together") != std::string::npos) {
            return {World::display_name(initiator) + " and " + World::display_name(peer) + " watch together",
                    [initiator, peer](const World& world) {
                        return world.app_as<LiveRoomApp>().watching_.contains({initiator.index(), peer.index()});
                    }};
        }
        return {World::display_name(peer) + " joins " + World::display_name(initiator) + "'s LIVE as a guest",
                [initiator, peer](const World& world) {
                    const auto& guests = world.app_as<LiveRoomApp>().guests_;
                    const auto it = guests.find(initiator);
                    return it != guests.end() && it->second.contains(peer);
                }};
    }

protected:
    std::vector<ViewNode> body(const World&, UserId user) const override
    {
        std::vector<ViewNode> out;
        const auto& screen = top(user);
        const auto name = screen_name(screen);
        if (name == "feed") {
            out.push_back(ui_.padded(ui_.label("For You", "title"), 2));
            std::vector<ViewNode> video;
            video.push_back(ui_.image("Video by Erin"));
            video.push_back(ui_.label("Sunset timelapse #travel", "video-caption"));
            out.push_back(ui_.section("video-player", std::move(video)));
            std::vector<ViewNode> rail;
            rail.push_back(ui_.icon_button("like", liked_.contains(user) ? "Liked" : "Like"));
            rail.push_back(ui_.icon_button("share", "Share"));
            rail.push_back(ui_.button("multi-guest", "LIVE with guests"));
            out.push_back(ui_.padded(ui_.layout(std::move(rail)), 1));
        } else if (name == "guest-picker" || name == "watch-picker") {
            out.push_back(ui_.label(name == "guest-picker" ? "Invite guests" : "Watch together with", "title"));
            std::vector<ViewNode> rows;
            for (auto other : others(user)) {
                rows.push_back(ui_.padded(ui_.list_item("friend-row", World::display_name(other)), 1));
            }
            out.push_back(ui_.layout(std::move(rows), "androidx.recyclerview.widget.RecyclerView"));
        } else if (name == "share-panel") {
            out.push_back(ui_.label("Share to", "title"));
            std::vector<ViewNode> grid;
            grid.push_back(ui_.icon_button("watch-together", "Watch together"));
            grid.push_back(ui_.icon_button("copy-link", "Copy link"));
            grid.push_back(ui_.icon_button("repost", "Repost"));
            out.push_back(ui_.padded(ui_.layout(std::move(grid)), 1));
        } else if (name == "live-host") {
            out.push_back(ui_.label("LIVE", "live-badge"));
            std::vector<UserId> guests;
            const auto it = guests_.find(user);
            if (it != guests_.end()) {
                guests.assign(it->second.begin(), it->second.end());
            }
            out.push_back(ui_.label(guests.empty() ? "Waiting for guests" : "Guests: " + join_names(guests),
                                    "guest-status"));
            out.push_back(ui_.button("end-live", "End LIVE"));
        } else if (name == "live-guest") {
            out.push_back(ui_.label("LIVE", "live-badge"));
            out.push_back(ui_.label("You are a guest in " + World::display_name(UserId{screen_arg(screen)}) + "'s LIVE",
                                    "guest-status"));
            out.push_back(ui_.button("leave", "Leave"));
        } else if (name == "watch-waiting") {
            const UserId peer{screen_arg(screen)};
            const bool joined = watching_.contains({user.index(), peer.index()});
            out.push_back(ui_.label(joined ? "Watching together with " + World::display_name(peer)
                                           : "Waiting for " + World::display_name(peer) + " to join",
                                    "watch-status"));
        } else if (name == "watching") {
            out.push_back(ui_.label("Watching together with " + World::display_name(UserId{screen_arg(screen)}),
                                    "watch-status"));
            out.push_back(ui_.button("leave", "Leave"));
        } else if (name == "inbox") {
            out.push_back(ui_.padded(ui_.label("Inbox", "title"), 2));
            std::vector<ViewNode> rows;
            for (const auto& inv : invites_) {
                if (inv.kind == InviteKind::Watch && inv.to == user) {
                    rows.push_back(ui_.padded(
                        ui_.list_item("watch-invite",
                                      World::display_name(inv.from) + " invited you to watch together"),
                        1));
                }
            }
            rows.push_back(ui_.padded(ui_.label("Erin liked your video"), 1));
            out.push_back(ui_.layout(std::move(rows), "androidx.recyclerview.widget.RecyclerView"));
        } else if (name == "invite-card") {
            const auto& inv = invites_.at(static_cast<std::size_t>(screen_arg(screen)));
            out.push_back(ui_.label("Watch together with " + World::display_name(inv.from), "title"));
            if (inv.phase == InvitePhase::Pending) {
                out.push_back(ui_.button("decline", "Decline"));
                out.push_back(ui_.button("accept", "Accept"));
            } else {
                out.push_back(ui_.label(std::string("Invitation ") + phase_label(inv.phase), "invite-status"));
            }
        }
        std::vector<ViewNode> tabs;
        tabs.push_back(ui_.button("home-tab", "Home"));
        const auto unread = unread_count(user);
        tabs.push_back(ui_.button("inbox-tab", unread > 0 ? "Inbox (" + std::to_string(unread) + ")" : "Inbox"));
        tabs.push_back(ui_.button("profile-tab", "Profile"));
        out.push_back(ui_.layout(std::move(tabs)));
        return out;
    }

    std::optional<ViewNode> overlay(const World&, UserId user) const override
    {
        const auto idx = pending_guest_invite(user);
        if (!idx) {
            return std::nullopt;
        }
        std::vector<ViewNode> card;
        card.push_back(ui_.label(World::display_name(invites_[*idx].from) + " invited you to join LIVE as a guest",
                                 "invite-title"));
        card.push_back(ui_.button("decline", "Decline"));
        card.push_back(ui_.button("accept", "Accept"));
        return ui_.section("guest-invite", std::move(card));
    }

private:
    std::optional<std::size_t> pending_guest_invite(UserId user) const
    {
        for (std::size_t i = 0; i < invites_.size(); ++i) {
            const auto& inv = invites_[i];
            if (inv.kind == InviteKind::Guest && inv.to == user && inv.phase == InvitePhase::Pending) {
                return i;
            }
        }
        return std::nullopt;
    }

    std::optional<std::size_t> latest_watch_invite(UserId user) const
    {
        std::optional<std::size_t> found;
        for (std::size_t i = 0; i < invites_.size(); ++i) {
            if (invites_[i].kind == InviteKind::Watch && invites_[i].to == user) {
                found = i;
            }
        }
        return found;
    }

    int unread_count(UserId user) const
    {
        if (read_.contains(user)) {
            return 0;
        }
        int n = 0;
        for (const auto& inv : invites_) {
            if (inv.kind == InviteKind::Watch && inv.to == user && inv.phase == InvitePhase::Pending) {
                ++n;
            }
        }
        return n;
    }

    void send_invite(World& world, UserId from, UserId to, InviteKind kind)
    {
        Invite inv;
        inv.kind = kind;
        inv.from = from;
        inv.to = to;
        inv.deadline = world.schedule(kind == InviteKind::Guest ? "guest-invite" : "watch-invite", from);
        invites_.push_back(inv);
        if (kind == InviteKind::Guest) {
            live_.insert(from);
        } else {
            read_.erase(to);
        }
        world.log_transition(from, std::string(kind == InviteKind::Guest ? "guest" : "watch-together") +
                                       " invite " + World::display_name(from) + " -> " + World::display_name(to));
    }

    void resolve(World& world, std::size_t idx, InvitePhase phase)
    {
        world.cancel(invites_[idx].deadline);
        invites_[idx].deadline = 0;
        set_phase(world, idx, phase, invites_[idx].to);
    }

    void set_phase(World& world, std::size_t idx, InvitePhase phase, UserId actor)
    {
        auto& inv = invites_[idx];
        world.log_transition(actor, std::string("invite ") + phase_label(inv.phase) + " -> " + phase_label(phase));
        inv.phase = phase;
    }

    std::vector<Invite> invites_;
    std::set<UserId> live_;
    std::map<UserId, std::set<UserId>> guests_;
    std::set<std::pair<int, int>> watching_;
    std::set<UserId> read_;
    std::set<UserId> liked_;
};

} // namespace

std::unique_ptr<SimApp> make_live_room_app()
{
    return std::make_unique<LiveRoomApp>();
}

} // namespace coplay::apps
