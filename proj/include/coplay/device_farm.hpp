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

#ifndef COPLAY_DEVICE_FARM_HPP
#define COPLAY_DEVICE_FARM_HPP

#include <condition_variable>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "coplay/types.hpp"

namespace coplay {

struct DeviceProfile {
    DeviceId device_id;
    int screen_width = 0;
    int screen_height = 0;
    std::string platform_label;
    bool available = true;

    friend bool operator==(const DeviceProfile&, const DeviceProfile&) = default;
};

struct Allocation {
    std::string allocation_id;
    std::string task_id;
    std::map<UserId, DeviceId> leases;
    std::uint64_t seed = 0;

    friend bool operator==(const Allocation&, const Allocation&) = default;
};

/// Registry of simulated devices. allocate/release are serialized by an
/// internal mutex, so one farm can back several concurrent task runs.
class DeviceFarm {
public:
    /// Throws InvalidConfig on duplicate ids or non-positive resolutions.
    explicit DeviceFarm(std::vector<DeviceProfile> profiles);

    /// Eight devices alternating 1080x2400 and 720x1280.
    static DeviceFarm desk_default();

    /// JSON: {"devices": [{"id", "width", "height", "platform"}]}
    static DeviceFarm from_file(const std::string& path);
    static DeviceFarm from_json_text(const std::string& text);

    DeviceFarm(const DeviceFarm&) = delete;
    DeviceFarm& operator=(const DeviceFarm&) = delete;

    /// Seeded uniform sampling without replacement over the available
    /// devices, in id order. Leases are keyed by `users` in order.
    /// Throws InsufficientDevices.
    Allocation allocate(const std::string& task_id, const std::vector<UserId>& users, std::uint64_t seed);

    /// Like allocate, but waits for leases to come back while the farm is
    /// large enough in total. Throws InsufficientDevices when it never can be.
    Allocation allocate_blocking(const std::string& task_id, const std::vector<UserId>& users,
                                 std::uint64_t seed);

    /// Idempotent for allocations this farm produced. Throws UnknownAllocation.
    void release(const Allocation& allocation);

    std::size_t size() const;
    std::size_t available_count() const;
    std::size_t leased_count() const;

    /// Snapshot of all profiles in id order.
    std::vector<DeviceProfile> profiles() const;
    DeviceProfile profile(const DeviceId& id) const;

private:
    Allocation allocate_locked(const std::string& task_id, const std::vector<UserId>& users,
                               std::uint64_t seed);

    mutable std::mutex mutex_;
    std::condition_variable released_;
    std::string farm_tag_;
    std::map<DeviceId, DeviceProfile> devices_;
    // allocation_id -> still leased
    std::map<std::string, bool> allocations_;
    std::map<std::string, Allocation> live_;
    std::uint64_t next_serial_ = 0;
};

/// splitmix64 step. Used wherever a seeded stream must be identical across
/// standard libraries (std::uniform_int_distribution is not).
std::uint64_t next_random(std::uint64_t& state);

/// Unbiased draw in [0, bound).
std::uint64_t bounded_draw(std::uint64_t& state, std::uint64_t bound);

/// Uniform double in [0, 1).
double unit_draw(std::uint64_t& state);

} // namespace coplay

#endif // COPLAY_DEVICE_FARM_HPP
