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

struct Comment {
    UserId author;
    std::string text;
    std::optional<std::size_t> reply_to;
    bool visible = true;
    DeadlineId deadline = 0;
};

enum class CardPhase { Pending, Opened, Dismissed, Expired };

struct Card {
    std::string kind;
    UserId from;
    UserId to;
    CardPhase phase = CardPhase::Pending;
    DeadlineId deadline = 0;
};

const char* card_phase_label(CardPhase phase)
{
    switch (phase) {
    case CardPhase::Pending: return "pending";
    case CardPhase::Opened: return "opened";
    case CardPhase::Dismissed: return "dismissed";
    case CardPhase::Expired: return "expired";
    }
    return "pending";
}

/// User 1 hosts a LIVE session; everyone else watches it.
class LiveCommentApp final : public NavApp {
public:
    LiveCommentApp() : NavApp("com.sim.livecomment", "live") {}

    void start(World& world) override
    {
        NavApp::start(world);
        host_ = users_.front();
    }

    bool tap(World& world, UserId user, const ViewNode& target) override
    {
        const auto id = target.short_resource_id();
        const auto& screen = top(user);
        const auto name = screen_name(screen);

        if (const auto idx = pending_card(user)) {
            if (id == "open-card") {
                set_card_phase(world, *idx, CardPhase::Opened, user);
                push(user, "card-view:" + std::to_string(*idx));
                return true;
            }
            if (id == "dismiss") {
                set_card_phase(world, *idx, CardPhase::Dismissed, user);
                return true;
            }
            return false;
        }

        if (name == "live") {
            if (id == "comment") {
                const auto idx = comment_for(target.text.value_or(""));
                if (!idx || comments_[*idx].author == user) {
                    return false;
                }
                auto& c = comments_[*idx];
                world.cancel(c.deadline); // the reply box keeps the comment pinned
                c.deadline = 0;
                replying_[user] = *idx;
                set_field(user, "comment-field", "@" + World::display_name(c.author) + " ");
                return true;
            }
            if (id == "send") {
                const auto text = std::string(detail::trim(field(user, "comment-field")));
                if (text.empty()) {
                    return false;
                }
                post(world, user, text);
                set_field(user, "comment-field", "");
                return true;
            }
            if (id == "cards" && user == host_) {
                push(user, "card-panel");
                return true;
            }
            return false;
        }
        if (name == "card-panel") {
            if (id == "quiz-card" || id == "poll-card") {
                replace_top(user, "card-target:" + std::string(id == "quiz-card" ? "1" : "2"));
                return true;
            }
            return false;
        }
        if (name == "card-target" && id == "viewer-row") {
            const auto peer = user_named(target.text.value_or(""));
            if (!peer || *peer == user) {
                return false;
            }
            Card card;
            card.kind = screen_arg(screen) == 1 ? "quiz" : "poll";
            card.from = user;
            card.to = *peer;
            card.deadline = world.schedule("card", user);
            cards_.push_back(card);
            world.log_transition(user, card.kind + " card sent " + World::display_name(user) + " -> " +
                                           World::display_name(*peer));
            reset(user);
            return true;
        }
        if (name == "card-view" && id == "answer") {
            return answered_.insert(user).second;
        }
        return false;
    }

    bool back(World& world, UserId user) override
    {
        if (replying_.erase(user) > 0) {
            set_field(user, "comment-field", "");
            return true;
        }
        return NavApp::back(world, user);
    }

    void expire(World& world, const Deadline& deadline) override
    {
        for (auto& c : comments_) {
            if (c.deadline == deadline.id && c.visible) {
                c.visible = false;
                c.deadline = 0;
                world.log_transition(deadline.owner, "comment scrolled away: " + c.text);
            }
        }
        for (std::size_t i = 0; i < cards_.size(); ++i) {
            if (cards_[i].deadline == deadline.id && cards_[i].phase == CardPhase::Pending) {
                cards_[i].deadline = 0;
                set_card_phase(world, i, CardPhase::Expired, deadline.owner);
            }
        }
    }

    SimDuration default_ttl(std::string_view cue) const override
    {
        if (cue == "comment") {
            return SimDuration{5000};
        }
        if (cue == "card") {
            return SimDuration{30000};
        }
        return SimDuration{60000};
    }

    std::string state_label() const override
    {
        for (const auto& card : cards_) {
            if (card.phase == CardPhase::Pending) {
                return "card-pending";
            }
        }
        for (const auto& c : comments_) {
            if (c.visible && !c.reply_to) {
                return "comment-visible";
            }
        }
        return "live";
    }

    GoalPredicate goal_for(const TaskSpec& task) const override
    {
        const auto initiator = task.initiator;
        const auto text = detail::lower(task.raw_text);
        if (text.find("card") != std::string::npos) {
            const auto peer = subject_peer(task, initiator);
            return {World::display_name(peer) + " opens the card from " + World::display_name(initiator),
                    [initiator, peer](const World& world) {
                        for (const auto& card : world.app_as<LiveCommentApp>().cards_) {
                            if (card.from == initiator && card.to == peer && card.phase == CardPhase::Opened) {
                                return true;
                            }
                        }
                        return false;
                    }};
        }
        return {"someone replies to " + World::display_name(initiator) + "'s comment",
                [initiator](const World& world) {
                    const auto& comments = world.app_as<LiveCommentApp>().comments_;
                    for (const auto& c : comments) {
                        if (c.reply_to && comments[*c.reply_to].author == initiator && c.author != initiator) {
                            return true;
                        }
                    }
                    return false;
                }};
    }

protected:
    std::vector<ViewNode> body(const World&, UserId user) const override
    {
        std::vector<ViewNode> out;
        const auto& screen = top(user);
        const auto name = screen_name(screen);
        if (name == "card-panel") {
            out.push_back(ui_.label("Interactive cards", "title"));
            std::vector<ViewNode> items;
            items.push_back(ui_.padded(ui_.list_item("quiz-card", "Quiz card"), 1));
            items.push_back(ui_.padded(ui_.list_item("poll-card", "Poll card"), 1));
            out.push_back(ui_.layout(std::move(items)));
            return out;
        }
        if (name == "card-target") {
            out.push_back(ui_.label("Send to viewer", "title"));
            std::vector<ViewNode> rows;
            for (auto other : others(user)) {
                rows.push_back(ui_.padded(ui_.list_item("viewer-row", World::display_name(other)), 1));
            }
            out.push_back(ui_.layout(std::move(rows), "androidx.recyclerview.widget.RecyclerView"));
            return out;
        }
        if (name == "card-view") {
            const auto& card = cards_.at(static_cast<std::size_t>(screen_arg(screen)));
            out.push_back(ui_.label(card.kind == "quiz" ? "Quiz: which city hosts this LIVE?" : "Poll: next song?",
                                    "card-question"));
            out.push_back(ui_.button("answer", "Answer"));
            return out;
        }

        const bool hosting = user == host_;
        std::vector<ViewNode> header;
        header.push_back(ui_.label(hosting ? "LIVE" : World::display_name(host_) + "'s LIVE", "live-title"));
        header.push_back(ui_.label("Viewers: " + std::to_string(users_.size() - 1), "viewer-count"));
        out.push_back(ui_.padded(ui_.section("live-header", std::move(header)), 1));
        out.push_back(ui_.image("LIVE video"));

        std::vector<ViewNode> list;
        for (const auto& c : comments_) {
            if (c.visible) {
                list.push_back(ui_.padded(ui_.list_item("comment", World::display_name(c.author) + ": " + c.text), 1));
            }
        }
        list.push_back(ui_.spacer());
        out.push_back(ui_.section("comment-list", std::move(list)));

        if (const auto it = replying_.find(user); it != replying_.end()) {
            out.push_back(ui_.label("Replying to " + World::display_name(comments_[it->second].author), "reply-hint"));
        }
        std::vector<ViewNode> composer;
        composer.push_back(ui_.edit("comment-field", field(user, "comment-field"), "Add comment..."));
        composer.push_back(ui_.button("send", "Send"));
        if (hosting) {
            composer.push_back(ui_.icon_button("cards", "Interactive cards"));
        } else {
            composer.push_back(ui_.icon_button("gift", "Gift"));
        }
        out.push_back(ui_.layout(std::move(composer)));
        return out;
    }

    std::optional<ViewNode> overlay(const World&, UserId user) const override
    {
        const auto idx = pending_card(user);
        if (!idx) {
            return std::nullopt;
        }
        const auto& card = cards_[*idx];
        std::vector<ViewNode> body;
        body.push_back(ui_.label(World::display_name(card.from) + " sent you a " + card.kind + " card", "card-title"));
        body.push_back(ui_.button("dismiss", "Dismiss"));
        body.push_back(ui_.button("open-card", "Open"));
        return ui_.section("card-popup", std::move(body));
    }

private:
    std::optional<std::size_t> pending_card(UserId user) const
    {
        for (std::size_t i = 0; i < cards_.size(); ++i) {
            if (cards_[i].to == user && cards_[i].phase == CardPhase::Pending) {
                return i;
            }
        }
        return std::nullopt;
    }

    std::optional<std::size_t> comment_for(const std::string& shown) const
    {
        for (std::size_t i = 0; i < comments_.size(); ++i) {
            const auto& c = comments_[i];
            if (c.visible && World::display_name(c.author) + ": " + c.text == shown) {
                return i;
            }
        }
        return std::nullopt;
    }

    void post(World& world, UserId user, const std::string& text)
    {
        Comment c;
        c.author = user;
        c.text = text;
        if (const auto it = replying_.find(user); it != replying_.end()) {
            c.reply_to = it->second;
            replying_.erase(it);
        }
        // Unanswered top-level comments are what tasks wait on; replies can
        // scroll away without consequence.
        c.deadline = world.schedule("comment", user, !c.reply_to.has_value());
        comments_.push_back(c);
        world.log_transition(user, std::string(c.reply_to ? "reply" : "comment") + " by " +
                                       World::display_name(user) + ": " + text);
    }

    void set_card_phase(World& world, std::size_t idx, CardPhase phase, UserId actor)
    {
        auto& card = cards_[idx];
        if (phase != CardPhase::Expired) {
            world.cancel(card.deadline);
            card.deadline = 0;
        }
        world.log_transition(actor, "card " + std::string(card_phase_label(card.phase)) + " -> " +
                                        card_phase_label(phase));
        card.phase = phase;
    }

    UserId host_;
    std::vector<Comment> comments_;
    std::vector<Card> cards_;
    std::map<UserId, std::size_t> replying_;
    std::set<UserId> answered_;
};

} // namespace

std::unique_ptr<SimApp> make_live_comment_app()
{
    return std::make_unique<LiveCommentApp>();
}

} // namespace coplay::apps
