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

#ifndef COPLAY_TESTS_SUPPORT_HPP
#define COPLAY_TESTS_SUPPORT_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "coplay/device_farm.hpp"
#include "coplay/orchestrator.hpp"
#include "coplay/providers.hpp"
#include "coplay/scenarios.hpp"
#include "coplay/screen_codec.hpp"

namespace coplay::testing {

/// splitmix64-backed generator for hand-rolled property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() { return next_random(state_); }
    int range(int lo, int hi) { return lo + static_cast<int>(bounded_draw(state_, static_cast<std::uint64_t>(hi - lo + 1))); }
    bool chance(double p) { return unit_draw(state_) < p; }
    template <class T>
    const T& pick(const std::vector<T>& items)
    {
        return items[bounded_draw(state_, items.size())];
    }

private:
    std::uint64_t state_;
};

/// Random raw hierarchy in dump form: bare layouts, id-only sections,
/// labels, buttons and edits.
ViewNode random_hierarchy(Gen& gen, int max_depth = 5);

/// Fresh empty directory under the system temp dir.
std::filesystem::path temp_dir(const std::string& name);

ProviderFactory oracle_factory(const std::map<UserId, std::vector<std::string>>& scripts);

/// Builds and runs a built-in scenario with the scripted oracle.
RunResult run_scenario(const Scenario& scenario, const OrchestratorConfig& config = {},
                       const ProviderFactory& providers = {});

/// Devices 1..n of the desk farm keyed by user.
std::map<UserId, DeviceProfile> desk_devices(int users);

} // namespace coplay::testing

#endif // COPLAY_TESTS_SUPPORT_HPP
