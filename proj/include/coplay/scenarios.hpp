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

#ifndef COPLAY_SCENARIOS_HPP
#define COPLAY_SCENARIOS_HPP

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "coplay/eval.hpp"
#include "coplay/types.hpp"

namespace coplay {

/// A built-in task with its authored ground-truth trace.
struct Scenario {
    std::string id;
    std::string app_id;
    std::string archetype;
    std::string task_text;
    std::map<UserId, std::vector<std::string>> truth;

    GroundTruthTrace ground_truth() const { return GroundTruthTrace::make(id, truth); }
};

/// The desk-scale suite: twelve tasks over the six interaction archetypes.
const std::vector<Scenario>& builtin_scenarios();

const Scenario* find_scenario(std::string_view id);
/// Matches on whitespace-normalised task text.
const Scenario* find_scenario_by_text(std::string_view task_text);

} // namespace coplay

#endif // COPLAY_SCENARIOS_HPP
