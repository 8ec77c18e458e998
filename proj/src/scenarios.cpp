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

#include "coplay/scenarios.hpp"

#include "strings.hpp"

namespace coplay {

namespace {

using Script = std::vector<std::string>;

std::vector<Scenario> make_scenarios()
{
    const UserId u1{1};
    const UserId u2{2};
    const UserId u3{3};

    const auto f2f_member = [](std::optional<int> next) {
        Script s = {"[tap] [plus]",  "[tap] [face-to-face]", "[tap] [1]", "[tap] [2]",
                    "[tap] [3]",     "[tap] [4]",            "[tap] [join-group]"};
        if (next) {
            s.push_back("[switch] [user_" + std::to_string(*next) + "]");
        }
        return s;
    };

    std::vector<Scenario> out;
    out.push_back({"voice-call-accept", "voice-call", "invite-accept",
                   "User_1: send a voice call to User_2; User_2: accept the call",
                   {{u1, {"[tap] [bob]", "[tap] [voice-call]", "[switch] [user_2]"}}, {u2, {"[tap] [accept]"}}}});
    out.push_back({"voice-call-back", "voice-call", "invite-accept",
                   "User_1: send a voice call to User_2, then hang up; User_2: make a call back",
                   {{u1, {"[tap] [bob]", "[tap] [voice-call]", "[tap] [hang-up]", "[switch] [user_2]"}},
                    {u2, {"[tap] [call-back]"}}}});
    out.push_back({"live-multi-guest", "live-room", "invite-accept",
                   "User_1: invite User_2 to a multi-guest LIVE session; User_2: accept the invitation",
                   {{u1, {"[tap] [multi-guest]", "[tap] [bob]", "[switch] [user_2]"}}, {u2, {"[tap] [accept]"}}}});
    out.push_back({"live-watch-together", "live-room", "invite-accept",
                   "User_1: invite User_2 to watch together; User_2: accept the invitation",
                   {{u1, {"[tap] [share]", "[tap] [watch-together]", "[tap] [bob]", "[switch] [user_2]"}},
                    {u2, {"[tap] [inbox-tab]", "[tap] [watch-invite]", "[tap] [accept]"}}}});
    out.push_back({"group-video-call", "group-call", "three-party-accept",
                   "User_1: send a video call in group chat; User_2: accept the call; User_3: accept the call",
                   {{u1, {"[tap] [team]", "[tap] [video-call]", "[switch] [user_2]"}},
                    {u2, {"[tap] [accept]", "[switch] [user_3]"}},
                    {u3, {"[tap] [accept]"}}}});
    out.push_back({"group-voice-call", "group-call", "three-party-accept",
                   "User_1: send a voice call in group chat; User_2: accept the call; User_3: accept the call",
                   {{u1, {"[tap] [team]", "[tap] [voice-call]", "[switch] [user_2]"}},
                    {u2, {"[tap] [accept]", "[switch] [user_3]"}},
                    {u3, {"[tap] [accept]"}}}});
    out.push_back({"face-to-face-trio", "face-to-face", "code-entry-join",
                   "User_1: create a face-to-face group chat; User_2: join the chat; User_3: join the chat",
                   {{u1, f2f_member(2)}, {u2, f2f_member(3)}, {u3, f2f_member(std::nullopt)}}});
    out.push_back({"face-to-face-pair", "face-to-face", "code-entry-join",
                   "User_1: create a face-to-face group chat; User_2: join the chat",
                   {{u1, f2f_member(2)}, {u2, f2f_member(std::nullopt)}}});
    out.push_back({"live-comment-reply", "live-comment", "send-respond",
                   "User_1: send a comment in LIVE session; User_2: reply the comment",
                   {{u1, {"[input] [comment-field] [Welcome to my LIVE!]", "[tap] [send]", "[switch] [user_2]"}},
                    {u2,
                     {"[tap] [welcome to my live!]", "[input] [comment-field] [Thanks for having me]",
                      "[tap] [send]"}}}});
    out.push_back({"live-interactive-card", "live-comment", "send-respond",
                   "User_1: send User_2 an interactive card in LIVE session; User_2: trigger the interactive card",
                   {{u1, {"[tap] [cards]", "[tap] [quiz-card]", "[tap] [bob]", "[switch] [user_2]"}},
                    {u2, {"[tap] [open-card]"}}}});
    out.push_back({"screen-share-permission", "permission", "permission-grant",
                   "User_1: request screen sharing permission from User_2; User_2: grant the permission",
                   {{u1, {"[tap] [participants]", "[tap] [bob]", "[tap] [request-screen-share]", "[switch] [user_2]"}},
                    {u2, {"[tap] [allow]", "[tap] [start now]"}}}});
    out.push_back({"payment-transfer", "payment", "payment-confirm",
                   "User_1: start a payment transfer to User_2; User_2: confirm the payment",
                   {{u1,
                     {"[tap] [bob]", "[tap] [transfer]", "[input] [amount-field] [10]", "[tap] [pay]",
                      "[switch] [user_2]"}},
                    {u2, {"[tap] [alice]", "[tap] [transfer-card]", "[tap] [confirm-receipt]"}}}});
    return out;
}

} // namespace

const std::vector<Scenario>& builtin_scenarios()
{
    static const std::vector<Scenario> scenarios = make_scenarios();
    return scenarios;
}

const Scenario* find_scenario(std::string_view id)
{
    for (const auto& s : builtin_scenarios()) {
        if (s.id == id) {
            return &s;
        }
    }
    return nullptr;
}

const Scenario* find_scenario_by_text(std::string_view task_text)
{
    const auto wanted = detail::lower(detail::normalize_space(task_text));
    for (const auto& s : builtin_scenarios()) {
        if (detail::lower(detail::normalize_space(s.task_text)) == wanted) {
            return &s;
        }
    }
    return nullptr;
}

} // namespace coplay
