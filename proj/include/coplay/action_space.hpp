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

#ifndef COPLAY_ACTION_SPACE_HPP
#define COPLAY_ACTION_SPACE_HPP

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "coplay/screen_codec.hpp"
#include "coplay/types.hpp"

namespace coplay {

/// Selector for a GUI element. Stored trimmed and lower-cased; matched
/// against resource_id, then text, then content_desc.
class ElementRef {
public:
    /// Throws MalformedAction when the selector is empty after trimming.
    explicit ElementRef(std::string_view selector);

    const std::string& selector() const { return selector_; }

    friend bool operator==(const ElementRef&, const ElementRef&) = default;

private:
    std::string selector_;
};

namespace action {

struct Tap {
    ElementRef target;
    friend bool operator==(const Tap&, const Tap&) = default;
};

struct Input {
    ElementRef target;
    std::string value; // trimmed, case preserved
    friend bool operator==(const Input&, const Input&) = default;
};

struct Back {
    friend bool operator==(const Back&, const Back&) = default;
};

/// `target_user` is empty for the bare "[switch] [user]" form; the
/// orchestrator then hands control to the next live agent.
struct SwitchUser {
    std::optional<UserId> target_user;
    friend bool operator==(const SwitchUser&, const SwitchUser&) = default;
};

struct EndTask {
    friend bool operator==(const EndTask&, const EndTask&) = default;
};

} // namespace action

using AgentAction = std::variant<action::Tap, action::Input, action::Back, action::SwitchUser, action::EndTask>;

AgentAction make_tap(std::string_view selector);
AgentAction make_input(std::string_view selector, std::string_view value);
AgentAction make_switch(int user_index);

/// True for tap/input/back, the actions executed on a device.
bool is_device_action(const AgentAction& action);

/// "tap", "input", "back", "switch", "end_task"
std::string_view verb(const AgentAction& action);

/// Extracts bracketed groups in order; the first selects the verb, the rest
/// are arguments and must match the verb's arity exactly. Text outside the
/// brackets is ignored. Throws MalformedAction, never anything else.
AgentAction parse_action(std::string_view model_output);

/// Canonical lower-case bracket form, e.g. "[tap] [accept]" or
/// "[input] [field] [Hi]" (input values keep their case).
std::string render_action(const AgentAction& action);

/// Unique node for `ref`. Exact (case-insensitive) matches are ranked
/// resource_id < text < content_desc; when there are none, a unique
/// substring match over the same fields is accepted.
/// Throws NoMatch, or AmbiguousMatch when two nodes tie.
const ViewNode& resolve_target(const ViewNode& root, const ElementRef& ref);
const ViewNode& resolve_target(const ScreenSnapshot& snapshot, const ElementRef& ref);

} // namespace coplay

#endif // COPLAY_ACTION_SPACE_HPP
