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

#include "coplay/device_farm.hpp"

#include <atomic>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "coplay/error.hpp"

namespace coplay {

std::uint64_t next_random(std::uint64_t& state)
{
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t bounded_draw(std::uint64_t& state, std::uint64_t bound)
{
    if (bound <= 1) {
        return 0;
    }
    // Reject the incomplete final block so every residue is equally likely.
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
    std::uint64_t value = 0;
    do {
        value = next_random(state);
    } while (value >= limit);
    return value % bound;
}

double unit_draw(std::uint64_t& state)
{
    return static_cast<double>(next_random(state) >> 11) * 0x1.0p-53;
}

namespace {

std::string new_farm_tag()
{
    static std::atomic<std::uint64_t> counter{0};
    return "farm" + std::to_string(++counter);
}

} // namespace

DeviceFarm::DeviceFarm(std::vector<DeviceProfile> profiles) : farm_tag_(new_farm_tag())
{
    for (auto& profile : profiles) {
        if (profile.device_id.empty()) {
            fail(ErrorCode::InvalidConfig, "device with empty id");
        }
        if (profile.screen_width <= 0 || profile.screen_height <= 0) {
            fail(ErrorCode::InvalidConfig, "device " + profile.device_id + " has a non-positive resolution");
        }
        if (devices_.contains(profile.device_id)) {
            fail(ErrorCode::InvalidConfig, "duplicate device id " + profile.device_id);
        }
        profile.available = true;
        devices_.emplace(profile.device_id, std::move(profile));
    }
}

DeviceFarm DeviceFarm::desk_default()
{
    std::vector<DeviceProfile> profiles;
    for (int i = 1; i <= 8; ++i) {
        const bool large = i % 2 == 1;
        std::ostringstream id;
        id << "sim-" << (i < 10 ? "0" : "") << i;
        profiles.push_back({id.str(), large ? 1080 : 720, large ? 2400 : 1280,
                            large ? "android-14-phone" : "android-9-compact", true});
    }
    return DeviceFarm(std::move(profiles));
}

DeviceFarm DeviceFarm::from_json_text(const std::string& text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::Parse, std::string("farm definition: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("devices") || !doc["devices"].is_array()) {
        fail(ErrorCode::InvalidConfig, "farm definition needs a \"devices\" array");
    }
    std::vector<DeviceProfile> profiles;
    try {
        for (const auto& entry : doc["devices"]) {
            DeviceProfile profile;
            profile.device_id = entry.at("id").get<std::string>();
            profile.screen_width = entry.at("width").get<int>();
            profile.screen_height = entry.at("height").get<int>();
            profile.platform_label = entry.value("platform", std::string("android"));
            profiles.push_back(std::move(profile));
        }
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::InvalidConfig, std::string("farm definition: ") + e.what());
    }
    return DeviceFarm(std::move(profiles));
}

DeviceFarm DeviceFarm::from_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        fail(ErrorCode::Io, "cannot read farm definition " + path);
    }
    std::ostringstream content;
    content << in.rdbuf();
    return from_json_text(content.str());
}

Allocation DeviceFarm::allocate_locked(const std::string& task_id, const std::vector<UserId>& users,
                                       std::uint64_t seed)
{
    std::vector<DeviceId> pool;
    for (const auto& [id, profile] : devices_) {
        if (profile.available) {
            pool.push_back(id);
        }
    }
    if (users.size() > pool.size()) {
        fail(ErrorCode::InsufficientDevices, "need " + std::to_string(users.size()) + " devices, " +
                                                 std::to_string(pool.size()) + " available");
    }

    // Partial Fisher-Yates over the id-ordered pool.
    std::uint64_t state = seed;
    Allocation allocation;
    allocation.task_id = task_id;
    allocation.seed = seed;
    allocation.allocation_id = farm_tag_ + "/" + std::to_string(++next_serial_);
    for (std::size_t i = 0; i < users.size(); ++i) {
        const auto pick = i + bounded_draw(state, pool.size() - i);
        std::swap(pool[i], pool[pick]);
        devices_.at(pool[i]).available = false;
        allocation.leases.emplace(users[i], pool[i]);
    }
    allocations_[allocation.allocation_id] = true;
    live_.emplace(allocation.allocation_id, allocation);
    return allocation;
}

Allocation DeviceFarm::allocate(const std::string& task_id, const std::vector<UserId>& users, std::uint64_t seed)
{
    if (users.size() < 2) {
        fail(ErrorCode::InvalidArgument, "allocation needs at least two users");
    }
    std::lock_guard lock(mutex_);
    return allocate_locked(task_id, users, seed);
}

Allocation DeviceFarm::allocate_blocking(const std::string& task_id, const std::vector<UserId>& users,
                                         std::uint64_t seed)
{
    if (users.size() < 2) {
        fail(ErrorCode::InvalidArgument, "allocation needs at least two users");
    }
    std::unique_lock lock(mutex_);
    if (users.size() > devices_.size()) {
        fail(ErrorCode::InsufficientDevices, "need " + std::to_string(users.size()) + " devices, farm has " +
                                                 std::to_string(devices_.size()));
    }
    released_.wait(lock, [&] {
        std::size_t free = 0;
        for (const auto& entry : devices_) {
            free += entry.second.available ? 1 : 0;
        }
        return free >= users.size();
    });
    return allocate_locked(task_id, users, seed);
}

void DeviceFarm::release(const Allocation& allocation)
{
    {
        std::lock_guard lock(mutex_);
        const auto known = allocations_.find(allocation.allocation_id);
        if (known == allocations_.end()) {
            fail(ErrorCode::UnknownAllocation, "allocation " + allocation.allocation_id + " is not from this farm");
        }
        if (!known->second) {
            return;
        }
        for (const auto& [user, device] : live_.at(allocation.allocation_id).leases) {
            devices_.at(device).available = true;
        }
        known->second = false;
        live_.erase(allocation.allocation_id);
    }
    released_.notify_all();
}

std::size_t DeviceFarm::size() const
{
    std::lock_guard lock(mutex_);
    return devices_.size();
}

std::size_t DeviceFarm::available_count() const
{
    std::lock_guard lock(mutex_);
    std::size_t count = 0;
    for (const auto& entry : devices_) {
        count += entry.second.available ? 1 : 0;
    }
    return count;
}

std::size_t DeviceFarm::leased_count() const
{
    std::lock_guard lock(mutex_);
    std::size_t count = 0;
    for (const auto& entry : live_) {
        count += entry.second.leases.size();
    }
    return count;
}

std::vector<DeviceProfile> DeviceFarm::profiles() const
{
    std::lock_guard lock(mutex_);
    std::vector<DeviceProfile> out;
    for (const auto& entry : devices_) {
        out.push_back(entry.second);
    }
    return out;
}

DeviceProfile DeviceFarm::profile(const DeviceId& id) const
{
    std::lock_guard lock(mutex_);
    const auto it = devices_.find(id);
    if (it == devices_.end()) {
        fail(ErrorCode::UnknownDevice, "unknown device " + id);
    }
    return it->second;
}

} // namespace coplay
