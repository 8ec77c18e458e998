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

#include "apps/ui.hpp"

#include <algorithm>

#include "coplay/error.hpp"

namespace coplay::apps {

namespace {

constexpr const char* kTextColor = "#FF161823";

void assign_bounds(ViewNode& node, int left, int top, int right, int bottom)
{
    node.raw_attributes["bounds"] = "[" + std::to_string(left) + "," + std::to_string(top) + "][" +
                                    std::to_string(right) + "," + std::to_string(bottom) + "]";
    if (node.children.empty()) {
        return;
    }
    const int n = static_cast<int>(node.children.size());
    const int height = std::max(0, bottom - top);
    for (int i = 0; i < n; ++i) {
        auto& child = node.children[static_cast<std::size_t>(i)];
        child.raw_attributes["index"] = std::to_string(i);
        assign_bounds(child, left, top + height * i / n, right, top + height * (i + 1) / n);
    }
}

} // namespace

ViewNode Ui::node(const std::string& cls, const std::string& id, const std::string& text, const std::string& desc,
                  bool clickable) const
{
    ViewNode n;
    n.class_name = cls;
    auto& raw = n.raw_attributes;
    raw["index"] = "0";
    raw["class"] = cls;
    raw["package"] = package_;
    raw["resource-id"] = id.empty() ? "" : (id.find(':') == std::string::npos ? package_ + ":id/" + id : id);
    raw["text"] = text;
    raw["content-desc"] = desc;
    raw["checkable"] = "false";
    raw["checked"] = "false";
    raw["clickable"] = clickable ? "true" : "false";
    raw["enabled"] = "true";
    raw["focusable"] = clickable ? "true" : "false";
    raw["focused"] = "false";
    raw["scrollable"] = "false";
    raw["long-clickable"] = "false";
    raw["password"] = "false";
    raw["selected"] = "false";
    return n;
}

ViewNode Ui::layout(std::vector<ViewNode> children, const std::string& cls) const
{
    auto n = node(cls, {}, {}, {}, false);
    n.children = std::move(children);
    return n;
}

ViewNode Ui::padded(ViewNode child, int depth) const
{
    for (int i = 0; i < depth; ++i) {
        std::vector<ViewNode> one;
        one.push_back(std::move(child));
        child = layout(std::move(one), i % 2 == 0 ? "android.widget.FrameLayout" : "android.widget.LinearLayout");
    }
    return child;
}

ViewNode Ui::section(const std::string& id, std::vector<ViewNode> children) const
{
    auto n = node("android.widget.LinearLayout", id, {}, {}, false);
    n.children = std::move(children);
    return n;
}

ViewNode Ui::label(const std::string& text, const std::string& id) const
{
    auto n = node("android.widget.TextView", id, text, {}, false);
    n.raw_attributes["textColor"] = kTextColor;
    return n;
}

ViewNode Ui::button(const std::string& id, const std::string& text) const
{
    auto n = node("android.widget.Button", id, text, {}, true);
    n.raw_attributes["textColor"] = kTextColor;
    return n;
}

ViewNode Ui::icon_button(const std::string& id, const std::string& desc) const
{
    return node("android.widget.ImageButton", id, {}, desc, true);
}

ViewNode Ui::image(const std::string& desc) const
{
    return node("android.widget.ImageView", {}, {}, desc, false);
}

ViewNode Ui::edit(const std::string& id, const std::string& text, const std::string& hint) const
{
    auto n = node("android.widget.EditText", id, text, {}, true);
    n.raw_attributes["hint"] = hint;
    n.raw_attributes["imeOptions"] = "actionSend";
    n.raw_attributes["textColor"] = kTextColor;
    return n;
}

ViewNode Ui::list_item(const std::string& id, const std::string& text) const
{
    auto n = node("android.widget.TextView", id, text, {}, true);
    n.raw_attributes["textColor"] = kTextColor;
    n.raw_attributes["long-clickable"] = "true";
    return n;
}

ViewNode Ui::spacer() const
{
    return node("android.view.View", {}, {}, {}, false);
}

ViewNode Ui::system_button(const std::string& id, const std::string& text) const
{
    auto n = node("android.widget.Button", "android:id/" + id, text, {}, true);
    n.raw_attributes["package"] = "com.android.systemui";
    return n;
}

ViewNode Ui::window(const DeviceProfile& device, std::vector<ViewNode> body, std::optional<ViewNode> overlay) const
{
    std::vector<ViewNode> content;
    content.push_back(layout(std::move(body)));
    if (overlay) {
        content.push_back(std::move(*overlay));
    }
    auto content_frame = node("android.widget.FrameLayout", "android:id/content", {}, {}, false);
    content_frame.children = std::move(content);

    std::vector<ViewNode> decor_children;
    decor_children.push_back(std::move(content_frame));
    auto decor = layout({layout(std::move(decor_children))}, "android.widget.FrameLayout");
    assign_bounds(decor, 0, 0, device.screen_width, device.screen_height);
    return decor;
}

void NavApp::start(World& world)
{
    users_ = world.users();
    for (auto user : users_) {
        nav_[user] = {home_};
        fields_[user];
    }
}

ViewNode NavApp::screen(const World& world, UserId user) const
{
    return ui_.window(world.profile_of(user), body(world, user), overlay(world, user));
}

bool NavApp::input(World&, UserId user, const ViewNode& target, const std::string& value)
{
    const auto id = target.short_resource_id();
    if (id.empty()) {
        return false;
    }
    const bool changed = field(user, id) != value;
    set_field(user, id, value);
    return changed;
}

bool NavApp::back(World&, UserId user)
{
    return pop(user);
}

const std::string& NavApp::top(UserId user) const
{
    const auto it = nav_.find(user);
    if (it == nav_.end() || it->second.empty()) {
        fail(ErrorCode::UnknownDevice, "no screen for " + to_string(user));
    }
    return it->second.back();
}

void NavApp::push(UserId user, std::string screen)
{
    nav_[user].push_back(std::move(screen));
}

void NavApp::replace_top(UserId user, std::string screen)
{
    auto& stack = nav_[user];
    if (stack.empty()) {
        stack.push_back(std::move(screen));
    } else {
        stack.back() = std::move(screen);
    }
}

bool NavApp::pop(UserId user)
{
    auto& stack = nav_[user];
    if (stack.size() <= 1) {
        return false;
    }
    stack.pop_back();
    return true;
}

void NavApp::reset(UserId user)
{
    nav_[user] = {home_};
}

std::string NavApp::field(UserId user, const std::string& id) const
{
    const auto it = fields_.find(user);
    if (it == fields_.end()) {
        return {};
    }
    const auto f = it->second.find(id);
    return f == it->second.end() ? std::string{} : f->second;
}

void NavApp::set_field(UserId user, const std::string& id, std::string value)
{
    fields_[user][id] = std::move(value);
}

std::string NavApp::screen_name(const std::string& screen)
{
    return screen.substr(0, screen.find(':'));
}

int NavApp::screen_arg(const std::string& screen)
{
    const auto pos = screen.find(':');
    if (pos == std::string::npos) {
        return 0;
    }
    try {
        return std::stoi(screen.substr(pos + 1));
    } catch (const std::exception&) {
        return 0;
    }
}

std::optional<UserId> NavApp::user_named(const std::string& name) const
{
    for (auto user : users_) {
        if (World::display_name(user) == name) {
            return user;
        }
    }
    return std::nullopt;
}

std::vector<UserId> NavApp::others(UserId user) const
{
    std::vector<UserId> out;
    for (auto u : users_) {
        if (u != user) {
            out.push_back(u);
        }
    }
    return out;
}

UserId subject_peer(const TaskSpec& task, UserId user)
{
    const auto it = task.subtasks.find(user);
    if (it != task.subtasks.end() && !it->second.mentioned_peers.empty()) {
        return *it->second.mentioned_peers.begin();
    }
    for (auto u : task.users) {
        if (u != user) {
            return u;
        }
    }
    return user;
}

std::string join_names(const std::vector<UserId>& users)
{
    std::string out;
    for (auto u : users) {
        if (!out.empty()) {
            out += ", ";
        }
        out += World::display_name(u);
    }
    return out;
}

} // namespace coplay::apps
