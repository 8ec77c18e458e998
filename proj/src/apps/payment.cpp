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

#include <cmath>
#include <cstdio>

#include "apps/builtin.hpp"
#include "apps/ui.hpp"
#include "strings.hpp"

namespace coplay::apps {

namespace {

enum class TransferPhase { Pending, Received, Refunded };

struct Transfer {
    UserId from;
    UserId to;
    long cents = 0;
    TransferPhase phase = TransferPhase::Pending;
    DeadlineId deadline = 0;
};

const char* phase_label(TransferPhase phase)
{
    switch (phase) {
    case TransferPhase::Pending: return "pending";
    case TransferPhase::Received: return "received";
    case TransferPhase::Refunded: return "refunded";
    }
    return "pending";
}

std::string money(long cents)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%ld.%02ld", cents / 100, cents % 100);
    return std::string("¥") + buf;
}

std::optional<long> parse_amount(const std::string& text)
{
    const auto t = std::string(detail::trim(text));
    if (t.empty()) {
        return std::nullopt;
    }
    std::size_t used = 0;
    double value = 0;
    try {
        value = std::stod(t, &used);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    if (used != t.size() || !(value > 0) || value > 200000) {
        return std::nullopt;
    }
    return static_cast<long>(std::llround(value * 100));
}

class PaymentApp final : public NavApp {
public:
    PaymentApp() : NavApp("com.sim.wallet", "home") {}

    bool tap(World& world, UserId user, const ViewNode& target) override
    {
        const auto id = target.short_resource_id();
        const auto& screen = top(user);
        const auto name = screen_name(screen);

        if (id == "chat-row" && name == "home") {
            if (const auto peer = user_named(target.text.value_or(""))) {
                push(user, "chat:" + std::to_string(peer->index()));
                return true;
            }
            return false;
        }
        if (id == "transfer" && name == "chat") {
            push(user, "transfer-form:" + std::to_string(screen_arg(screen)));
            set_field(user, "amount-field", "");
            return true;
        }
        if (id == "pay" && name == "transfer-form") {
            const auto cents = parse_amount(field(user, "amount-field"));
            if (!cents) {
                return false;
            }
            Transfer t;
            t.from = user;
            t.to = UserId{screen_arg(screen)};
            t.cents = *cents;
            t.deadline = world.schedule("transfer", user);
            transfers_.push_back(t);
            world.log_transition(user, "transfer " + money(t.cents) + " " + World::display_name(t.from) + " -> " +
                                           World::display_name(t.to) + " pending");
            pop(user);
            return true;
        }
        if (id == "transfer-card" && name == "chat") {
            const auto idx = latest_transfer(user, UserId{screen_arg(screen)});
            if (!idx) {
                return false;
            }
            push(user, "transfer-detail:" + std::to_string(*idx));
            return true;
        }
        if (id == "confirm-receipt" && name == "transfer-detail") {
            const auto idx = static_cast<std::size_t>(screen_arg(screen));
            auto& t = transfers_.at(idx);
            if (t.to != user || t.phase != TransferPhase::Pending) {
                return false;
            }
            world.cancel(t.deadline);
            t.deadline = 0;
            set_phase(world, idx, TransferPhase::Received, user);
            return true;
        }
        if (id == "send" && name == "chat") {
            const auto message = std::string(detail::trim(field(user, "message-field")));
            if (message.empty()) {
                return false;
            }
            messages_[chat_key(user, UserId{screen_arg(screen)})].push_back(World::display_name(user) + ": " + message);
            set_field(user, "message-field", "");
            return true;
        }
        if (id == "wallet-tab") {
            reset(user);
            push(user, "wallet");
            return true;
        }
        if (id == "chats-tab") {
            if (screen == home_) {
                return false;
            }
            reset(user);
            return true;
        }
        return false;
    }

    void expire(World& world, const Deadline& deadline) override
    {
        for (std::size_t i = 0; i < transfers_.size(); ++i) {
            if (transfers_[i].deadline == deadline.id && transfers_[i].phase == TransferPhase::Pending) {
                transfers_[i].deadline = 0;
                set_phase(world, i, TransferPhase::Refunded, transfers_[i].from);
            }
        }
    }

    SimDuration default_ttl(std::string_view cue) const override
    {
        return cue == "transfer" ? SimDuration{86400000} : SimDuration{60000};
    }

    std::string state_label() const override
    {
        std::string label = "idle";
        for (const auto& t : transfers_) {
            if (t.phase == TransferPhase::Pending) {
                return "transfer-pending";
            }
            label = t.phase == TransferPhase::Received ? "transfer-received" : "transfer-refunded";
        }
        return label;
    }

    GoalPredicate goal_for(const TaskSpec& task) const override
    {
        const auto initiator = task.initiator;
        const auto peer = subject_peer(task, initiator);
        return {World::display_name(peer) + " receives a transfer from " + World::display_name(initiator),
                [initiator, peer](const World& world) {
                    for (const auto& t : world.app_as<PaymentApp>().transfers_) {
                        if (t.from == initiator && t.to == peer && t.phase == TransferPhase::Received) {
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
        if (name == "chat") {
            const UserId peer{screen_arg(screen)};
            out.push_back(ui_.padded(ui_.label(World::display_name(peer), "chat-title"), 1));
            std::vector<ViewNode> log;
            if (const auto it = messages_.find(chat_key(user, peer)); it != messages_.end()) {
                for (const auto& m : it->second) {
                    log.push_back(ui_.padded(ui_.label(m), 1));
                }
            }
            for (const auto& t : transfers_) {
                if ((t.from == user && t.to == peer) || (t.from == peer && t.to == user)) {
                    const auto who = t.from == user ? "Transfer to " + World::display_name(peer)
                                                    : "Transfer from " + World::display_name(peer);
                    log.push_back(ui_.padded(
                        ui_.list_item("transfer-card", who + " " + money(t.cents) + " - " + phase_label(t.phase)), 1));
                }
            }
            log.push_back(ui_.spacer());
            out.push_back(ui_.section("message-list", std::move(log)));
            std::vector<ViewNode> composer;
            composer.push_back(ui_.edit("message-field", field(user, "message-field"), "Message"));
            composer.push_back(ui_.icon_button("transfer", "Transfer"));
            composer.push_back(ui_.button("send", "Send"));
            out.push_back(ui_.layout(std::move(composer)));
            return out;
        }
        if (name == "transfer-form") {
            out.push_back(ui_.label("Transfer to " + World::display_name(UserId{screen_arg(screen)}), "title"));
            out.push_back(ui_.edit("amount-field", field(user, "amount-field"), "Amount"));
            out.push_back(ui_.button("pay", "Pay"));
            return out;
        }
        if (name == "transfer-detail") {
            const auto& t = transfers_.at(static_cast<std::size_t>(screen_arg(screen)));
            out.push_back(ui_.label((t.from == user ? "Transfer to " + World::display_name(t.to)
                                                    : "Transfer from " + World::display_name(t.from)),
                                    "title"));
            out.push_back(ui_.label(money(t.cents), "amount"));
            out.push_back(ui_.label(std::string("Status: ") + phase_label(t.phase), "transfer-status"));
            if (t.to == user && t.phase == TransferPhase::Pending) {
                out.push_back(ui_.button("confirm-receipt", "Confirm receipt"));
            }
            return out;
        }
        if (name == "wallet") {
            out.push_back(ui_.label("Wallet", "title"));
            out.push_back(ui_.label("Balance " + money(balance(user)), "balance"));
        } else {
            out.push_back(ui_.padded(ui_.label("Chats", "title"), 2));
            std::vector<ViewNode> rows;
            for (auto other : others(user)) {
                rows.push_back(ui_.padded(ui_.list_item("chat-row", World::display_name(other)), 1));
            }
            out.push_back(ui_.layout(std::move(rows), "androidx.recyclerview.widget.RecyclerView"));
        }
        std::vector<ViewNode> tabs;
        tabs.push_back(ui_.button("chats-tab", "Chats"));
        tabs.push_back(ui_.button("wallet-tab", "Wallet"));
        out.push_back(ui_.layout(std::move(tabs)));
        return out;
    }

private:
    static std::pair<int, int> chat_key(UserId a, UserId b)
    {
        return {std::min(a.index(), b.index()), std::max(a.index(), b.index())};
    }

    std::optional<std::size_t> latest_transfer(UserId user, UserId peer) const
    {
        std::optional<std::size_t> found;
        for (std::size_t i = 0; i < transfers_.size(); ++i) {
            const auto& t = transfers_[i];
            if ((t.from == user && t.to == peer) || (t.from == peer && t.to == user)) {
                found = i;
            }
        }
        return found;
    }

    long balance(UserId user) const
    {
        long cents = 100000;
        for (const auto& t : transfers_) {
            if (t.from == user && t.phase != TransferPhase::Refunded) {
                cents -= t.cents;
            }
            if (t.to == user && t.phase == TransferPhase::Received) {
                cents += t.cents;
            }
        }
        return cents;
    }

    void set_phase(World& world, std::size_t idx, TransferPhase phase, UserId actor)
    {
        auto& t = transfers_[idx];
        world.log_transition(actor, "transfer " + std::string(phase_label(t.phase)) + " -> " + phase_label(phase));
        t.phase = phase;
    }

    std::vector<Transfer> transfers_;
    std::map<std::pair<int, int>, std::vector<std::string>> messages_;
};

} // namespace

std::unique_ptr<SimApp> make_payment_app()
{
    return std::make_unique<PaymentApp>();
}

} // namespace coplay::apps
