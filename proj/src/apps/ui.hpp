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

#ifndef COPLAY_APPS_UI_HPP
#define COPLAY_APPS_UI_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coplay/device_farm.hpp"
#include "coplay/screen_codec.hpp"
#include "coplay/sim_env.hpp"

namespace coplay::apps {

/// Builds raw view hierarchies in the shape of an accessibility dump: every
/// attribute is a raw string, resource ids are "package:id/name".
class Ui {
public:
    explicit Ui(std::string package) : package_(std::move(package)) {}

    const std::string& package() const { return package_; }

    ViewNode layout(std::vector<ViewNode> children, const std::string& cls = "android.widget.LinearLayout") const;
    /// Wraps `child` in `depth` bare single-child layouts.
    ViewNode padded(ViewNode child, int depth = 2) const;
    ViewNode section(const std::string& id, std::vector<ViewNode> children) const;
    ViewNode label(const std::string& text, const std::string& id = {}) const;
    ViewNode button(const std::string& id, const std::string& text) const;
    ViewNode icon_button(const std::string& id, const std::string& desc) const;
    ViewNode image(const std::string& desc) const;
    ViewNode edit(const std::string& id, const std::string& text, const std::string& hint) const;
    ViewNode list_item(const std::string& id, const std::string& text) const;
    /// Empty decorative view; simplification drops it.
    ViewNode spacer() const;
    /// A button owned by the system UI rather than the app.
    ViewNode system_button(const std::string& id, const std::string& text) const;

    /// Decor frame -> content frame -> body, with an optional overlay stacked
    /// on the content. Assigns bounds for the device's resolution.
    ViewNode window(const DeviceProfile& device, std::vector<ViewNode> body,
                    std::optional<ViewNode> overlay = std::nullopt) const;

private:
    ViewNode node(const std::string& cls, const std::string& id, const std::string& text, const std::string& desc,
                  bool clickable) const;

    std::string package_;
};

/// Base for apps with per-user navigation stacks and typed field values.
class NavApp : public SimApp {
public:
    void start(World& world) override;
    ViewNode screen(const World& world, UserId user) const override;
    bool input(World& world, UserId user, const ViewNode& target, const std::string& value) override;
    bool back(World& world, UserId user) override;

protected:
    NavApp(std::string package, std::string home) : ui_(std::move(package)), home_(std::move(home)) {}

    virtual std::vector<ViewNode> body(const World& world, UserId user) const = 0;
    virtual std::optional<ViewNode> overlay(const World&, UserId) const { return std::nullopt; }

    const std::string& top(UserId user) const;
    void push(UserId user, std::string screen);
    void replace_top(UserId user, std::string screen);
    bool pop(UserId user);
    void reset(UserId user);

    std::string field(UserId user, const std::string& id) const;
    void set_field(UserId user, const std::string& id, std::string value);

    /// "chat:2" -> "chat"
    static std::string screen_name(const std::string& screen);
    /// "chat:2" -> 2
    static int screen_arg(const std::string& screen);

    /// User whose display name equals `name`, if any.
    std::optional<UserId> user_named(const std::string& name) const;
    std::vector<UserId> others(UserId user) const;

    Ui ui_;
    std::string home_;
    std::vector<UserId> users_;
    std::map<UserId, std::vector<std::string>> nav_;
    std::map<UserId, std::map<std::string, std::string>> fields_;
};

/// Peer a subtask is about: its first mentioned peer, else the lowest other user.
UserId subject_peer(const TaskSpec& task, UserId user);

std::string join_names(const std::vector<UserId>& users);

} // namespace coplay::apps

#endif // COPLAY_APPS_UI_HPP
