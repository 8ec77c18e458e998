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

#ifndef COPLAY_AGENT_HPP
#define COPLAY_AGENT_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coplay/action_space.hpp"
#include "coplay/screen_codec.hpp"
#include "coplay/task_model.hpp"

namespace coplay {

/// What one agent was asked and what it answered. Owned by exactly one agent.
struct CompletionSession {
    struct Exchange {
        std::string prompt;
        std::string completion;
    };
    std::vector<Exchange> exchanges;
};

struct PromptBundle {
    std::string task_text;
    std::string action_catalog;
    std::string screen_text;
    std::optional<std::string> history_text;
    std::optional<std::string> retry_note;

    /// Sections in order: task, actions, [history], screen, [retry note].
    std::string render() const;

    friend bool operator==(const PromptBundle&, const PromptBundle&) = default;
};

class CompletionProvider {
public:
    virtual ~CompletionProvider() = default;
    /// "scripted-oracle", "recorded-replay", "remote-endpoint", ...
    virtual std::string kind() const = 0;
    /// Throws ProviderFailure on transport or credential problems.
    virtual std::string complete(const PromptBundle& prompt) = 0;
};

/// Everything a provider factory may key on when building one agent's
/// provider instance.
struct AgentSetup {
    std::string task_id;
    const TaskSpec* task = nullptr;
    UserId user;
    DeviceId device;
    std::uint64_t seed = 0;
};

using ProviderFactory = std::function<std::unique_ptr<CompletionProvider>(const AgentSetup&)>;

struct AgentOptions {
    int step_budget = 50;
    int retry_cap = 3;
    /// Last k executed actions included in the prompt; 0 disables history.
    int history_window = 0;
};

struct AgentContext {
    UserId user_id;
    DeviceId device_id;
    SubTask subtask;
    CompletionSession session;
    int steps_taken = 0;
    std::optional<std::string> last_error;
    std::vector<std::string> executed; // canonical actions, for history mode
};

/// The fixed action list shown to every agent.
const std::string& action_catalog();

PromptBundle build_prompt(const AgentContext& ctx, const TaskSpec& task, const ScreenSnapshot& snapshot,
                          const AgentOptions& options = {});

/// One user's agent: its own context, session and provider instance.
class Agent {
public:
    Agent(const TaskSpec& task, UserId user, DeviceId device, std::unique_ptr<CompletionProvider> provider,
          AgentOptions options = {});

    Agent(Agent&&) noexcept = default;
    Agent& operator=(Agent&&) noexcept = default;

    /// Prompts until the reply parses or the retry cap is hit, counting each
    /// provider call against the step budget.
    /// Throws StepBudgetExhausted, MalformedOutput or ProviderFailure.
    AgentAction step(const ScreenSnapshot& snapshot);

    /// The next prompt carries a retry note naming this problem.
    void note_miss(std::string message);
    void note_executed(const AgentAction& action);

    PromptBundle prompt_for(const ScreenSnapshot& snapshot) const;

    const AgentContext& context() const { return ctx_; }
    UserId user() const { return ctx_.user_id; }
    const DeviceId& device() const { return ctx_.device_id; }
    const CompletionProvider& provider() const { return *provider_; }
    const AgentOptions& options() const { return options_; }

    bool ended = false;

private:
    const TaskSpec* task_;
    AgentContext ctx_;
    std::unique_ptr<CompletionProvider> provider_;
    AgentOptions options_;
};

} // namespace coplay

#endif // COPLAY_AGENT_HPP
