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

#include <algorithm>
#include <cctype>
#include <set>

#include "apps/builtin.hpp"
#include "apps/ui.hpp"
#include "strings.hpp"

namespace coplay::apps {

namespace {

constexpr std::size_t kCodeLength = 4;

struct CodeRoom {
    std::string code;
    std::vector<UserId> nearby; // in the order they entered the code
    std::set<UserId> joined;
    DeadlineId deadline = 0;
    bool expired = false;
};

class FaceToFaceApp final : public NavApp {
public:
    FaceToFaceApp() : NavApp("com.sim.facetoface", "home") {}

    bool tap(World& world, UserId user, const ViewNode& target) override
    {
        const auto id = target.short_resource_id();
        const auto& screen = top(user);
        const auto name = screen_name(screen);

        if (id == "plus" && name == "home") {
            push(user, "plus-menu");
            return true;
        }
        if (name == "plus-menu") {
            if (id == "face-to-face") {
                replace_top(user, "f2f-entry");
                set_field(user, "code", "");
                return true;
            }
            return false;
        }
        if (name == "f2f-entry") {
            auto code = field(user, "code");
            if (id == "key-del") {
                if (code.empty()) {
                    return false;
                }
                code.pop_back();
                set_field(user, "code", code);
                return true;
            }
            if (id.size() == 5 && id.rfind("key-", 0) == 0 && std::isdigit(static_cast<unsigned char>(id[4])) != 0) {
                code.push_back(id[4]);
                set_field(user, "code", code);
                if (code.size() == kCodeLength) {
                    const auto idx = enter_room(world, user, code);
                    replace_top(user, "f2f-room:" + std::to_string(idx));
                }
                return true;
            }
            return false;
        }
        if (name == "f2f-room" && id == "join-group") {
            auto& room = rooms_.at(static_cast<std::size_t>(screen_arg(screen)));
            if (room.expired || room.joined.contains(user)) {
                return false;
            }
            room.joined.insert(user);
            world.log_transition(user, World::display_name(user) + " joined face-to-face group " + room.code + " (" +
                                           std::to_string(room.joined.size()) + " members)");
            replace_top(user, "group-chat:" + std::to_string(screen_arg(screen)));
            return true;
        }
        if (name == "group-chat" && id == "send") {
            const auto message = std::string(detail::trim(field(user, "message-field")));
            if (message.empty()) {
                return false;
            }
            messages_[screen].push_back(World::display_name(user) + ": " + message);
            set_field(user, "message-field", "");
            return true;
        }
        return false;
    }

    void expire(World& world, const Deadline& deadline) override
    {
        for (auto& room : rooms_) {
            if (room.deadline == deadline.id && !room.expired) {
                room.expired = true;
                room.deadline = 0;
                world.log_transition(deadline.owner, "face-to-face code " + room.code + " expired");
            }
        }
    }

    SimDuration default_ttl(std::string_view cue) const override
    {
        return cue == "code-room" ? SimDuration{300000} : SimDuration{60000};
    }

    std::string state_label() const override
    {
        bool open = false;
        for (const auto& room : rooms_) {
            if (!room.joined.empty()) {
                return "group-formed";
            }
            open = open || !room.expired;
        }
        return open ? "code-room-open" : "idle";
    }

    GoalPredicate goal_for(const TaskSpec& task) const override
    {
        const auto users = task.users;
        return {"all users join one face-to-face group", [users](const World& world) {
                    for (const auto& room : world.app_as<FaceToFaceApp>().rooms_) {
                        bool all = true;
                        for (auto u : users) {
                            all = all && room.joined.contains(u);
                        }
                        if (all) {
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
        if (name == "plus-menu") {
            out.push_back(ui_.label("Start", "title"));
            std::vector<ViewNode> items;
            items.push_back(ui_.padded(ui_.list_item("new-chat", "New chat"), 1));
            items.push_back(ui_.padded(ui_.list_item("face-to-face", "Face-to-face group chat"), 1));
            items.push_back(ui_.padded(ui_.list_item("scan", "Scan QR code"), 1));
            out.push_back(ui_.layout(std::move(items)));
        } else if (name == "f2f-entry") {
            out.push_back(ui_.label("Enter the same 4 digits as friends nearby", "title"));
            const auto code = field(user, "code");
            std::string shown;
            for (std::size_t i = 0; i < kCodeLength; ++i) {
                if (i > 0) {
                    shown.push_back(' ');
                }
                shown.push_back(i < code.size() ? code[i] : '_');
            }
            out.push_back(ui_.label(shown, "code-display"));
            std::vector<ViewNode> keypad;
            for (int row = 0; row < 3; ++row) {
                std::vector<ViewNode> keys;
                for (int col = 1; col <= 3; ++col) {
                    const auto digit = std::to_string(row * 3 + col);
                    keys.push_back(ui_.button("key-" + digit, digit));
                }
                keypad.push_back(ui_.layout(std::move(keys)));
            }
            std::vector<ViewNode> last;
            last.push_back(ui_.spacer());
            last.push_back(ui_.button("key-0", "0"));
            last.push_back(ui_.icon_button("key-del", "Delete"));
            keypad.push_back(ui_.layout(std::move(last)));
            out.push_back(ui_.section("keypad", std::move(keypad)));
        } else if (name == "f2f-room") {
            const auto& room = rooms_.at(static_cast<std::size_t>(screen_arg(screen)));
            out.push_back(ui_.label("Group code " + room.code, "title"));
            out.push_back(ui_.label("Friends nearby: " + join_names(room.nearby), "nearby"));
            if (room.expired) {
                out.push_back(ui_.label("This code has expired", "room-status"));
            } else {
                out.push_back(ui_.button("join-group", "Join this group"));
            }
        } else if (name == "group-chat") {
            const auto& room = rooms_.at(static_cast<std::size_t>(screen_arg(screen)));
            std::vector<UserId> members(room.joined.begin(), room.joined.end());
            out.push_back(ui_.label("Group chat (" + std::to_string(members.size()) + ")", "chat-title"));
            out.push_back(ui_.label("Members: " + join_names(members), "members"));
            std::vector<ViewNode> log;
            const auto it = messages_.find(screen);
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
        } else {
            std::vector<ViewNode> bar;
            bar.push_back(ui_.label("Chats", "title"));
            auto plus = ui_.icon_button("plus", "More options");
            bar.push_back(std::move(plus));
            out.push_back(ui_.padded(ui_.section("toolbar", std::move(bar)), 1));
            std::vector<ViewNode> rows;
            for (auto other : others(user)) {
                rows.push_back(ui_.padded(ui_.label(World::display_name(other)), 1));
            }
            out.push_back(ui_.layout(std::move(rows), "androidx.recyclerview.widget.RecyclerView"));
        }
        return out;
    }

private:
    std::size_t enter_room(World& world, UserId user, const std::string& code)
    {
        for (std::size_t i = 0; i < rooms_.size(); ++i) {
            auto& room = rooms_[i];
            if (room.code == code && !room.expired) {
                if (std::find(room.nearby.begin(), room.nearby.end(), user) == room.nearby.end()) {
                    room.nearby.push_back(user);
                }
                return i;
            }
        }
        CodeRoom room;
        room.code = code;
        room.nearby.push_back(user);
        room.deadline = world.schedule("code-room", user);
        rooms_.push_back(room);
        world.log_transition(user, "face-to-face code " + code + " opened by " + World::display_name(user));
        return rooms_.size() - 1;
    }

    std::vector<CodeRoom> rooms_;
    std::map<std::string, std::vector<std::string>> messages_;
};

} // namespace

std::unique_ptr<SimApp> make_face_to_face_app()
{
    return std::make_unique<FaceToFaceApp>();
}

} // namespace coplay::apps
