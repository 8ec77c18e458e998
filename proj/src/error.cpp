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

#include "coplay/error.hpp"
#include "coplay/types.hpp"

namespace coplay {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::NoUsersFound: return "NoUsersFound";
    case ErrorCode::UserIndexOutOfRange: return "UserIndexOutOfRange";
    case ErrorCode::SingleUserTask: return "SingleUserTask";
    case ErrorCode::DuplicateOwner: return "DuplicateOwner";
    case ErrorCode::MissingSubtask: return "MissingSubtask";
    case ErrorCode::EmptySubtask: return "EmptySubtask";
    case ErrorCode::InsufficientDevices: return "InsufficientDevices";
    case ErrorCode::UnknownAllocation: return "UnknownAllocation";
    case ErrorCode::UnknownDevice: return "UnknownDevice";
    case ErrorCode::UnknownElement: return "UnknownElement";
    case ErrorCode::UnknownApp: return "UnknownApp";
    case ErrorCode::MalformedAction: return "MalformedAction";
    case ErrorCode::NoMatch: return "NoMatch";
    case ErrorCode::AmbiguousMatch: return "AmbiguousMatch";
    case ErrorCode::StepBudgetExhausted: return "StepBudgetExhausted";
    case ErrorCode::MalformedOutput: return "MalformedOutput";
    case ErrorCode::ProviderFailure: return "ProviderFailure";
    case ErrorCode::SwitchToEnded: return "SwitchToEnded";
    case ErrorCode::SwitchToUnknown: return "SwitchToUnknown";
    case ErrorCode::UserSetMismatch: return "UserSetMismatch";
    case ErrorCode::TaskIdMismatch: return "TaskIdMismatch";
    case ErrorCode::EmptySuite: return "EmptySuite";
    case ErrorCode::MissingTruth: return "MissingTruth";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Parse: return "Parse";
    }
    return "Unknown";
}

std::string to_string(UserId user)
{
    return "User_" + std::to_string(user.index());
}

} // namespace coplay
