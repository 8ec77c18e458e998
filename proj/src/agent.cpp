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

#include "coplay/agent.hpp"

#include "coplay/error.hpp"

namespace coplay {

std::string PromptBundle::render() const
{
    std::string out = task_text;
    out += "\n\n";
    out += action_catalog;
    if (history_text) {
        out += "\n\n";
        out += *history_text;
    }
    out += "\n\nCurrent screen:\n";
    out += screen_text;
    if (retry_note) {
        out += "\n";
        out += *retry_note;
    }
    return out;
}

const std::string& action_catalog()
{
    static const std::string catalog =
        "Reply with exactly one action, written in square brackets:\n"
        "[tap] [element]            tap an element\n"
        "[input] [element] [value]  type value into an editable element\n"
        "[back]                     press the system back key\n"
        "[switch] [user_N]          hand control to User_N\n"
        "[end_task]                 your part of the task is done\n"
        "An element is named by the id, text or desc shown for it on the screen.";
    return catalog;
}

PromptBundle build_prompt(const AgentContext& ctx, const TaskSpec& task, const ScreenSnapshot& snapshot,
                          const AgentOptions& options)
{
    PromptBundle bundle;
    bundle.task_text = "You are " + to_string(ctx.user_id) + ", one of " + std::to_string(task.users.size()) +
                       " users testing an app together, each on their own device.\n"
                       "Overall task: " +
                       task.raw_text + "\nYour task: " + ctx.subtask.description;
    bundle.action_catalog = action_catalog();
    bundle.screen_text = serialize_for_prompt(snapshot.root);
    if (options.history_window > 0) {
        std::string history = "Your previous actions:";
        const auto k = static_cast<std::size_t>(options.history_window);
        const auto start = ctx.executed.size() > k ? ctx.executed.size() - k : 0;
        if (start == ctx.executed.size()) {
            history += " none";
        }
        for (auto i = start; i < ctx.executed.size(); ++i) {
            history += "\n" + ctx.executed[i];
        }
        bundle.history_text = std::move(history);
    }
    if (ctx.last_error) {
        bundle.retry_note = "Your previous reply could not be carried out: " + *ctx.last_error +
                            "\nAnswer again with one action from the list.";
    }
    return bundle;
}

Agent::Agent(const TaskSpec& task, UserId user, DeviceId device, std::unique_ptr<CompletionProvider> provider,
             AgentOptions options)
    : task_(&task), provider_(std::move(provider)), options_(options)
{
    if (!provider_) {
        fail(ErrorCode::InvalidArgument, "agent for " + to_string(user) + " has no provider");
    }
    ctx_.user_id = user;
    ctx_.device_id = std::move(device);
    ctx_.subtask = task.subtask(user);
}

PromptBundle Agent::prompt_for(const ScreenSnapshot& snapshot) const
{
    return build_prompt(ctx_, *task_, snapshot, options_);
}

AgentAction Agent::step(const ScreenSnapshot& snapshot)
{
    std::string last_reply;
    for (int attempt = 0; attempt <= options_.retry_cap; ++attempt) {
        if (ctx_.steps_taken >= options_.step_budget) {
            fail(ErrorCode::StepBudgetExhausted, to_string(ctx_.user_id) + " used all " +
                                                     std::to_string(options_.step_budget) + " steps");
        }
        const auto bundle = prompt_for(snapshot);
        ++ctx_.steps_taken;
        last_reply = provider_->complete(bundle);
        ctx_.session.exchanges.push_back({bundle.render(), last_reply});
        try {
            auto parsed = parse_action(last_reply);
            ctx_.last_error.reset();
            return parsed;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::MalformedAction) {
                throw;
            }
            ctx_.last_error = std::string(e.what());
        }
    }
    fail(ErrorCode::MalformedOutput, to_string(ctx_.user_id) + " gave " + std::to_string(options_.retry_cap + 1) +
                                         " unparsable replies, last: \"" + last_reply + "\"");
}

void Agent::note_miss(std::string message)
{
    ctx_.last_error = std::move(message);
}

void Agent::note_executed(const AgentAction& action)
{
    ctx_.last_error.reset();
    ctx_.executed.push_back(render_action(action));
}

} // namespace coplay
