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

#ifndef COPLAY_ERROR_HPP
#define COPLAY_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace coplay {

enum class ErrorCode {
    // task-model
    NoUsersFound,
    UserIndexOutOfRange,
    SingleUserTask,
    DuplicateOwner,
    MissingSubtask,
    EmptySubtask,
    // device-farm
    InsufficientDevices,
    UnknownAllocation,
    // sim-env
    UnknownDevice,
    UnknownElement,
    UnknownApp,
    // action-space
    MalformedAction,
    NoMatch,
    AmbiguousMatch,
    // agent-core
    StepBudgetExhausted,
    MalformedOutput,
    ProviderFailure,
    // orchestrator
    SwitchToEnded,
    SwitchToUnknown,
    // eval-harness
    UserSetMismatch,
    TaskIdMismatch,
    EmptySuite,
    MissingTruth,
    // plumbing
    InvalidArgument,
    InvalidConfig,
    Io,
    Parse,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message)
{
    throw Error(code, message);
}

} // namespace coplay

#endif // COPLAY_ERROR_HPP
