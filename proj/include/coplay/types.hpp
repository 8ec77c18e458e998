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

#ifndef COPLAY_TYPES_HPP
#define COPLAY_TYPES_HPP

#include <chrono>
#include <compare>
#include <cstdint>
#include <string>

namespace coplay {

/// Index of a simulated user, as written in task text ("User_2" -> 2).
class UserId {
public:
    constexpr UserId() = default;
    constexpr explicit UserId(int index) : index_(index) {}

    constexpr int index() const { return index_; }

    friend constexpr auto operator<=>(UserId, UserId) = default;

private:
    int index_ = 0;
};

/// "User_2"
std::string to_string(UserId user);

using DeviceId = std::string;

/// Virtual simulation time. Only ever advanced explicitly.
using SimDuration = std::chrono::milliseconds;
using SimTime = std::chrono::milliseconds;

} // namespace coplay

#endif // COPLAY_TYPES_HPP
