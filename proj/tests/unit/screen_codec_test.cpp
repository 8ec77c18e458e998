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

#include <gtest/gtest.h>

#include <optional>

#include "coplay/error.hpp"
#include "coplay/screen_codec.hpp"
#include "coplay/sim_env.hpp"
#include "coplay/task_model.hpp"
#include "support.hpp"

using namespace coplay;

namespace {

ViewNode node(std::string cls, std::vector<ViewNode> children = {})
{
    ViewNode n;
    n.class_name = std::move(cls);
    n.children = std::move(children);
    return n;
}

ViewNode button(const std::string& text)
{
    auto n = node("android.widget.Button");
    n.text = text;
    n.clickable = true;
    return n;
}

ViewNode label(const std::string& text)
{
    auto n = node("android.widget.TextView");
    n.text = text;
    return n;
}

// Reference pruning written independently of the library: recursive
// rewrite returning nullopt for dropped nodes.
std::optional<ViewNode> reference_prune(const ViewNode& n, bool is_root)
{
    const bool bare = !n.resource_id && !n.text && !n.content_desc && !n.clickable;
    std::vector<ViewNode> kids;
    for (const auto& c : n.children) {
        if (auto p = reference_prune(c, false)) {
            kids.push_back(std::move(*p));
        }
    }
    if (bare && kids.size() == 1) {
        return kids.front();
    }
    if (bare && kids.empty() && !is_root) {
        return std::nullopt;
    }
    ViewNode out = n;
    out.children = std::move(kids);
    return out;
}

} // namespace

TEST(FilterAttributes, KeepsOnlySemanticFields)
{
    ViewNode raw;
    raw.class_name = "android.widget.Button";
    raw.raw_attributes = {{"class", "android.widget.Button"},
                          {"resource-id", "com.sim.voicecall:id/voice-call"},
                          {"text", ""},
                          {"content-desc", "Voice call"},
                          {"clickable", "true"},
                          {"textColor", "#ff000000"},
                          {"bounds", "[0,0][10,10]"},
                          {"index", "2"},
                          {"package", "com.sim.voicecall"},
                          {"focusable", "true"},
                          {"enabled", "true"},
                          {"checked", "false"}};
    ASSERT_EQ(raw.raw_attributes.size(), 12u);
    const auto f = filter_attributes(raw);
    EXPECT_TRUE(f.raw_attributes.empty());
    EXPECT_EQ(f.class_name, "android.widget.Button");
    EXPECT_EQ(f.resource_id, "com.sim.voicecall:id/voice-call");
    EXPECT_FALSE(f.text.has_value());
    EXPECT_EQ(f.content_desc, "Voice call");
    EXPECT_TRUE(f.clickable);
    EXPECT_EQ(f.short_resource_id(), "voice-call");
    EXPECT_EQ(f.short_class(), "Button");
}

TEST(FilterAttributes, MinimalNodeUnchanged)
{
    const auto b = button("Call");
    EXPECT_EQ(filter_attributes(b), b);
    EXPECT_EQ(filter_attributes(filter_attributes(b)), filter_attributes(b));
}

TEST(FilterAttributes, SingleChildlessNode)
{
    ViewNode raw;
    raw.class_name = "android.view.View";
    raw.raw_attributes = {{"class", "android.view.View"}, {"bounds", "[0,0][1,1]"}};
    const auto f = filter_attributes(raw);
    EXPECT_TRUE(f.children.empty());
    EXPECT_EQ(f.class_name, "android.view.View");
    EXPECT_TRUE(f.raw_attributes.empty());
}

TEST(PruneContainers, FrameLinearExample)
{
    const auto tree = node("android.widget.FrameLayout",
                           {node("android.widget.LinearLayout", {button("Call"), label("Alice")})});
    const auto expected = node("android.widget.LinearLayout", {button("Call"), label("Alice")});
    EXPECT_EQ(prune_containers(tree), expected);
    EXPECT_EQ(prune_containers(tree), *reference_prune(tree, true));
}

TEST(PruneContainers, NoSingleChildLayoutsIsFixedPoint)
{
    const auto tree = node("android.widget.LinearLayout", {button("A"), label("B"), button("C")});
    EXPECT_EQ(prune_containers(tree), tree);
}

TEST(PruneContainers, StackedFramesPromoteButton)
{
    const auto tree = node("android.widget.FrameLayout",
                           {node("android.widget.FrameLayout", {node("android.widget.FrameLayout", {button("Go")})})});
    EXPECT_EQ(prune_containers(tree), button("Go"));
}

TEST(PruneContainers, BareLeavesDropped)
{
    const auto tree = node("android.widget.LinearLayout", {button("A"), node("android.view.View"), label("B")});
    EXPECT_EQ(prune_containers(tree), node("android.widget.LinearLayout", {button("A"), label("B")}));
}

TEST(PruneContainers, BareRootLeafKept)
{
    const auto tree = node("android.widget.FrameLayout");
    EXPECT_EQ(prune_containers(tree), tree);
}

TEST(PruneContainers, IdentifiedSingleChildKept)
{
    auto section = node("android.widget.LinearLayout", {button("Accept")});
    section.resource_id = "incoming-call";
    EXPECT_EQ(prune_containers(section), section);
}

TEST(PruneContainers, MatchesReferenceOnGeneratedTrees)
{
    coplay::testing::Gen gen(1234);
    for (int i = 0; i < 300; ++i) {
        const auto filtered = filter_attributes(coplay::testing::random_hierarchy(gen));
        EXPECT_EQ(prune_containers(filtered), *reference_prune(filtered, true)) << "tree " << i;
    }
}

TEST(Serialize, TwoNodeTree)
{
    auto parent = node("android.widget.LinearLayout", {button("Call")});
    parent.resource_id = "com.x:id/bar";
    const auto text = serialize_for_prompt(parent);
    EXPECT_EQ(text, "LinearLayout id=bar\n  Button text=\"Call\" clickable\n");
}

TEST(Serialize, Deterministic)
{
    coplay::testing::Gen gen(3);
    const auto tree = simplify(coplay::testing::random_hierarchy(gen));
    EXPECT_EQ(serialize_for_prompt(tree), serialize_for_prompt(tree));
}

TEST(Serialize, FullLineShape)
{
    auto b = button("Call");
    b.resource_id = "pkg:id/voice-call";
    b.content_desc = "Voice call";
    EXPECT_EQ(serialize_for_prompt(b), "Button id=voice-call text=\"Call\" desc=\"Voice call\" clickable\n");
}

TEST(Serialize, SimplifiedAppScreensAreShorter)
{
    for (const auto& s : builtin_scenarios()) {
        const auto task = segment(s.task_text);
        auto world = World::create(s.app_id, coplay::testing::desk_devices(static_cast<int>(task.users.size())));
        for (auto u : task.users) {
            const auto raw = world.project_screen(world.device_of(u)).root;
            EXPECT_LT(serialize_for_prompt(simplify(raw)).size(), serialize_for_prompt(raw).size()) << s.id;
        }
    }
}

TEST(Simplify, PropertiesOnGeneratedTrees)
{
    coplay::testing::Gen gen(909);
    for (int i = 0; i < 200; ++i) {
        const auto raw = coplay::testing::random_hierarchy(gen);
        const auto once = simplify(raw);
        EXPECT_EQ(simplify(once), once);
        EXPECT_LE(count_nodes(once), count_nodes(raw));
    }
}

TEST(Dump, ParseAndRoundTrip)
{
    const std::string xml =
        R"(<?xml version="1.0" encoding="UTF-8"?><hierarchy rotation="0">)"
        R"(<node index="0" class="android.widget.FrameLayout" resource-id="" text="" content-desc="" clickable="false">)"
        R"(<node index="0" class="android.widget.Button" resource-id="com.x:id/go" text="Go &amp; see" content-desc="" clickable="true"/>)"
        R"(</node></hierarchy>)";
    const auto root = parse_accessibility_dump(xml);
    EXPECT_EQ(root.class_name, "android.widget.FrameLayout");
    ASSERT_EQ(root.children.size(), 1u);
    EXPECT_EQ(root.children[0].raw_attributes.at("text"), "Go & see");
    const auto s = simplify(root);
    EXPECT_EQ(s.short_resource_id(), "go");
    EXPECT_EQ(s.text, "Go & see");
    EXPECT_EQ(parse_accessibility_dump(to_accessibility_dump(root)), root);
}

TEST(Dump, SeveralTopLevelNodes)
{
    const auto root = parse_accessibility_dump(
        R"(<hierarchy><node class="a.A" text="x"/><node class="a.B" text="y"/></hierarchy>)");
    EXPECT_EQ(root.class_name, "hierarchy");
    EXPECT_EQ(root.children.size(), 2u);
}

TEST(Dump, MalformedXml)
{
    try {
        parse_accessibility_dump("<hierarchy><node class=");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Parse);
    }
}

TEST(Dump, GeneratedRoundTrip)
{
    coplay::testing::Gen gen(8);
    for (int i = 0; i < 50; ++i) {
        const auto raw = coplay::testing::random_hierarchy(gen);
        EXPECT_EQ(parse_accessibility_dump(to_accessibility_dump(raw)), raw) << i;
    }
}
