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

#ifndef COPLAY_SCREEN_CODEC_HPP
#define COPLAY_SCREEN_CODEC_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coplay/types.hpp"

namespace coplay {

/// One element of a GUI view hierarchy. Freshly captured nodes keep every
/// dump attribute in `raw_attributes`; filter_attributes() moves the five
/// semantic ones into fields and drops the rest.
struct ViewNode {
    std::optional<std::string> resource_id;
    std::string class_name;
    bool clickable = false;
    std::optional<std::string> text;
    std::optional<std::string> content_desc;
    std::vector<ViewNode> children;
    std::map<std::string, std::string> raw_attributes;

    /// resource_id with any "package:id/" prefix removed.
    std::string short_resource_id() const;
    /// "android.widget.Button" -> "Button"
    std::string short_class() const;
    /// EditText and its subclasses.
    bool editable() const;

    friend bool operator==(const ViewNode&, const ViewNode&) = default;
};

struct ScreenSnapshot {
    DeviceId device_id;
    ViewNode root;
    SimTime captured_at{0};
};

/// Keeps resource_id, class, clickable, text and content_desc; empty values
/// become absent. Structure is unchanged.
ViewNode filter_attributes(const ViewNode& root);

/// Depth-first removal of bare layout containers. A node is bare when it has
/// no resource id, no text, no content description and is not clickable.
/// Bare nodes with exactly one child are replaced by that child, bare leaves
/// are dropped, everything else is kept. The root is never dropped.
ViewNode prune_containers(const ViewNode& root);

/// prune_containers(filter_attributes(root))
ViewNode simplify(const ViewNode& root);
ScreenSnapshot simplify(const ScreenSnapshot& snapshot);

bool is_bare(const ViewNode& node);

/// One node per line, two spaces of indent per depth:
///   Button id=voice-call desc="Voice call" clickable
/// Attributes that survived no filtering are appended as key="value" so an
/// unsimplified tree serializes to its full size.
std::string serialize_for_prompt(const ViewNode& root);
std::string serialize_for_prompt(const ScreenSnapshot& snapshot);

/// Parses a UIAutomator-style accessibility dump:
///   <hierarchy><node class=".." text=".." .../></hierarchy>
/// Every attribute lands in raw_attributes; class_name is populated. A
/// hierarchy with several top-level nodes gets a synthetic "hierarchy" root.
/// Throws Parse.
ViewNode parse_accessibility_dump(std::string_view xml);

/// Inverse of parse_accessibility_dump for raw trees.
std::string to_accessibility_dump(const ViewNode& root);

std::size_t count_nodes(const ViewNode& root);

} // namespace coplay

#endif // COPLAY_SCREEN_CODEC_HPP
