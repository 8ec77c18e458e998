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

#include "coplay/action_space.hpp"

#include "coplay/error.hpp"
#include "strings.hpp"

namespace coplay {

namespace {

void reject_brackets(std::string_view text, std::string_view what)
{
    if (text.find_first_of("[]") != std::string_view::npos) {
        fail(ErrorCode::MalformedAction, std::string(what) + " may not contain brackets: \"" + std::string(text) + "\"");
    }
}

std::string normalize_verb(std::string_view token)
{
    std::string out;
    for (char c : detail::lower(detail::trim(token))) {
        const char mapped = (c == ' ' || c == '-') ? '_' : c;
        if (mapped == '_' && !out.empty() && out.back() == '_') {
            continue;
        }
        out.push_back(mapped);
    }
    return out;
}

std::optional<UserId> parse_user_argument(std::string_view token)
{
    std::string arg = detail::lower(detail::trim(token));
    if (arg == "user") {
        return std::nullopt;
    }
    if (arg.starts_with("user")) {
        arg.erase(0, 4);
        if (!arg.empty() && (arg.front() == '_' || arg.front() == ' ' || arg.front() == '-')) {
            arg.erase(0, 1);
        }
    }
    if (arg.size() != 1 || arg[0] < '1' || arg[0] > '9') {
        fail(ErrorCode::MalformedAction, "switch target must name User_1..User_9, got \"" + std::string(token) + "\"");
    }
    return UserId(arg[0] - '0');
}

void expect_arity(const std::string& verb_name, std::size_t got, std::size_t want)
{
    if (got != want) {
        fail(ErrorCode::MalformedAction, "[" + verb_name + "] takes " + std::to_string(want) + " argument(s), got " +
                                             std::to_string(got));
    }
}

struct Candidate {
    const ViewNode* node;
    int rank;
};

bool resource_id_matches(const ViewNode& node, const std::string& selector)
{
    if (!node.resource_id) {
        return false;
    }
    return detail::lower(*node.resource_id) == selector || detail::lower(node.short_resource_id()) == selector;
}

// 0: resource id, 1: text, 2: content description, -1: none.
int exact_rank(const ViewNode& node, const std::string& selector)
{
    if (resource_id_matches(node, selector)) {
        return 0;
    }
    if (node.text && detail::lower(*node.text) == selector) {
        return 1;
    }
    if (node.content_desc && detail::lower(*node.content_desc) == selector) {
        return 2;
    }
    return -1;
}

bool substring_match(const ViewNode& node, const std::string& selector)
{
    return (node.resource_id && detail::icontains(node.short_resource_id(), selector)) ||
           (node.text && detail::icontains(*node.text, selector)) ||
           (node.content_desc && detail::icontains(*node.content_desc, selector));
}

void collect(const ViewNode& node, const std::string& selector, std::vector<Candidate>& exact,
             std::vector<const ViewNode*>& partial)
{
    if (const int rank = exact_rank(node, selector); rank >= 0) {
        exact.push_back({&node, rank});
    } else if (substring_match(node, selector)) {
        partial.push_back(&node);
    }
    for (const auto& child : node.children) {
        collect(child, selector, exact, partial);
    }
}

} // namespace

ElementRef::ElementRef(std::string_view selector) : selector_(detail::lower(detail::trim(selector)))
{
    if (selector_.empty()) {
        fail(ErrorCode::MalformedAction, "empty element selector");
    }
    reject_brackets(selector_, "selector");
}

AgentAction make_tap(std::string_view selector)
{
    return action::Tap{ElementRef(selector)};
}

AgentAction make_input(std::string_view selector, std::string_view value)
{
    reject_brackets(value, "input value");
    return action::Input{ElementRef(selector), std::string(detail::trim(value))};
}

AgentAction make_switch(int user_index)
{
    return action::SwitchUser{UserId(user_index)};
}

bool is_device_action(const AgentAction& action)
{
    return std::holds_alternative<action::Tap>(action) || std::holds_alternative<action::Input>(action) ||
           std::holds_alternative<action::Back>(action);
}

std::string_view verb(const AgentAction& action)
{
    static constexpr std::string_view names[] = {"tap", "input", "back", "switch", "end_task"};
    return names[action.index()];
}

AgentAction parse_action(std::string_view model_output)
{
    // Innermost "[...]" groups, left to right.
    std::vector<std::string> tokens;
    std::size_t open = std::string_view::npos;
    for (std::size_t i = 0; i < model_output.size(); ++i) {
        if (model_output[i] == '[') {
            open = i;
        } else if (model_output[i] == ']' && open != std::string_view::npos) {
            tokens.emplace_back(detail::trim(model_output.substr(open + 1, i - open - 1)));
            open = std::string_view::npos;
        }
    }
    if (tokens.empty()) {
        fail(ErrorCode::MalformedAction, "no bracketed action in output");
    }

    const std::string name = normalize_verb(tokens.front());
    const std::size_t args = tokens.size() - 1;
    if (name == "tap") {
        expect_arity(name, args, 1);
        return make_tap(tokens[1]);
    }
    if (name == "input") {
        expect_arity(name, args, 2);
        return make_input(tokens[1], tokens[2]);
    }
    if (name == "back") {
        expect_arity(name, args, 0);
        return action::Back{};
    }
    if (name == "switch" || name == "switch_user") {
        if (args > 1) {
            expect_arity("switch", args, 1);
        }
        return action::SwitchUser{args == 0 ? std::nullopt : parse_user_argument(tokens[1])};
    }
    if (name == "end_task" || name == "endtask") {
        expect_arity("end_task", args, 0);
        return action::EndTask{};
    }
    fail(ErrorCode::MalformedAction, "unknown action verb \"" + tokens.front() + "\"");
}

std::string render_action(const AgentAction& action)
{
    struct Renderer {
        std::string operator()(const action::Tap& a) const { return "[tap] [" + a.target.selector() + "]"; }
        std::string operator()(const action::Input& a) const
        {
            return "[input] [" + a.target.selector() + "] [" + a.value + "]";
        }
        std::string operator()(const action::Back&) const { return "[back]"; }
        std::string operator()(const action::SwitchUser& a) const
        {
            if (!a.target_user) {
                return "[switch] [user]";
            }
            return "[switch] [user_" + std::to_string(a.target_user->index()) + "]";
        }
        std::string operator()(const action::EndTask&) const { return "[end_task]"; }
    };
    return std::visit(Renderer{}, action);
}

const ViewNode& resolve_target(const ViewNode& root, const ElementRef& ref)
{
    std::vector<Candidate> exact;
    std::vector<const ViewNode*> partial;
    collect(root, ref.selector(), exact, partial);

    if (!exact.empty()) {
        int best = 3;
        for (const auto& c : exact) {
            best = std::min(best, c.rank);
        }
        const ViewNode* found = nullptr;
        int ties = 0;
        for (const auto& c : exact) {
            if (c.rank == best) {
                found = c.node;
                ++ties;
            }
        }
        if (ties > 1) {
            fail(ErrorCode::AmbiguousMatch,
                 std::to_string(ties) + " elements match \"" + ref.selector() + "\" equally well");
        }
        return *found;
    }
    if (partial.size() == 1) {
        return *partial.front();
    }
    if (partial.size() > 1) {
        fail(ErrorCode::AmbiguousMatch,
             std::to_string(partial.size()) + " elements contain \"" + ref.selector() + "\"");
    }
    fail(ErrorCode::NoMatch, "no element matches \"" + ref.selector() + "\"");
}

const ViewNode& resolve_target(const ScreenSnapshot& snapshot, const ElementRef& ref)
{
    return resolve_target(snapshot.root, ref);
}

} // namespace coplay
