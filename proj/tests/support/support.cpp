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

#include "support.hpp"

#include <atomic>
#include <unistd.h>

#include "coplay/task_model.hpp"

namespace coplay::testing {

namespace {

void set_raw(ViewNode& node, const std::string& cls, const std::string& rid, const std::string& text,
             const std::string& desc, bool clickable)
{
    node.class_name = cls;
    node.raw_attributes = {{"class", cls},
                           {"resource-id", rid},
                           {"text", text},
                           {"content-desc", desc},
                           {"clickable", clickable ? "true" : "false"},
                           {"enabled", "true"},
                           {"focusable", clickable ? "true" : "false"},
                           {"package", "com.example.gen"},
                           {"bounds", "[0,0][100,100]"}};
}

ViewNode random_node(Gen& gen, int depth, int max_depth, int& serial)
{
    static const std::vector<std::string> words = {"Accept", "Send", "Chats", "Alice", "Bob", "+", "Share", "Live",
                                                   "OK",     "Call", "Next",  "Inbox", "Team", "Pay"};
    ViewNode node;
    const int kind = depth >= max_depth ? gen.range(3, 6) : gen.range(0, 6);
    const auto id = [&] { return "com.example.gen:id/n" + std::to_string(serial++); };
    switch (kind) {
    case 0:
    case 1: // bare layout
        set_raw(node, gen.chance(0.5) ? "android.widget.FrameLayout" : "android.widget.LinearLayout", "", "", "",
                false);
        break;
    case 2: // id-only section
        set_raw(node, "android.widget.LinearLayout", id(), "", "", false);
        break;
    case 3: // label
        set_raw(node, "android.widget.TextView", gen.chance(0.5) ? id() : "", gen.pick(words), "", false);
        break;
    case 4: // button
        set_raw(node, "android.widget.Button", gen.chance(0.7) ? id() : "", gen.chance(0.8) ? gen.pick(words) : "",
                gen.chance(0.3) ? gen.pick(words) : "", true);
        break;
    case 5: // image, possibly bare
        set_raw(node, "android.widget.ImageView", "", "", gen.chance(0.5) ? gen.pick(words) : "", false);
        break;
    default: // edit field
        set_raw(node, "android.widget.EditText", id(), gen.chance(0.3) ? gen.pick(words) : "", "", true);
        break;
    }
    if (kind <= 2 && depth < max_depth) {
        const int children = gen.chance(0.4) ? 1 : gen.range(0, 4);
        for (int i = 0; i < children; ++i) {
            node.children.push_back(random_node(gen, depth + 1, max_depth, serial));
        }
    }
    return node;
}

} // namespace

ViewNode random_hierarchy(Gen& gen, int max_depth)
{
    int serial = 0;
    ViewNode root;
    set_raw(root, "android.widget.FrameLayout", "", "", "", false);
    const int children = gen.range(1, 3);
    for (int i = 0; i < children; ++i) {
        root.children.push_back(random_node(gen, 1, max_depth, serial));
    }
    return root;
}

std::filesystem::path temp_dir(const std::string& name)
{
    static std::atomic<int> counter{0};
    const auto path = std::filesystem::temp_directory_path() /
                      ("coplay-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++) + "-" + name);
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
    return path;
}

ProviderFactory oracle_factory(const std::map<UserId, std::vector<std::string>>& scripts)
{
    return [scripts](const AgentSetup& setup) -> std::unique_ptr<CompletionProvider> {
        const auto it = scripts.find(setup.user);
        return std::make_unique<ScriptedOracleProvider>(it == scripts.end() ? std::vector<std::string>{}
                                                                            : it->second);
    };
}

RunResult run_scenario(const Scenario& scenario, const OrchestratorConfig& config, const ProviderFactory& providers)
{
    const auto task = segment(scenario.task_text);
    auto farm = DeviceFarm::desk_default();
    return run_task_detailed(scenario.id, task, scenario.app_id, farm,
                             providers ? providers : oracle_factory(scenario.truth), config);
}

std::map<UserId, DeviceProfile> desk_devices(int users)
{
    const auto farm = DeviceFarm::desk_default();
    const auto profiles = farm.profiles();
    std::map<UserId, DeviceProfile> out;
    for (int i = 1; i <= users; ++i) {
        out[UserId{i}] = profiles.at(static_cast<std::size_t>(i - 1));
    }
    return out;
}

} // namespace coplay::testing
