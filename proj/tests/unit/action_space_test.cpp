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

#include "coplay/action_space.hpp"
#include "coplay/error.hpp"
#include "support.hpp"

using namespace coplay;

namespace {

ErrorCode parse_error(std::string_view text)
{
    try {
        parse_action(text);
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "parsed: " << text;
    return ErrorCode::InvalidArgument;
}

ViewNode make(const std::string& id, const std::string& text, const std::string& desc = "")
{
    ViewNode n;
    n.class_name = "android.widget.Button";
    if (!id.empty()) {
        n.resource_id = "com.sim:id/" + id;
    }
    if (!text.empty()) {
        n.text = text;
    }
    if (!desc.empty()) {
        n.content_desc = desc;
    }
    n.clickable = true;
    return n;
}

ViewNode screen(std::vector<ViewNode> kids)
{
    ViewNode root;
    root.class_name = "android.widget.LinearLayout";
    root.children = std::move(kids);
    return root;
}

} // namespace

TEST(ParseAction, Tap)
{
    EXPECT_EQ(parse_action("[tap] [voice-call]"), make_tap("voice-call"));
}

TEST(ParseAction, Input)
{
    const auto a = parse_action("[input] [message-field] [hello]");
    ASSERT_TRUE(std::holds_alternative<action::Input>(a));
    EXPECT_EQ(std::get<action::Input>(a).target.selector(), "message-field");
    EXPECT_EQ(std::get<action::Input>(a).value, "hello");
}

TEST(ParseAction, ProseAroundBrackets)
{
    EXPECT_TRUE(std::holds_alternative<action::EndTask>(parse_action("I will now finish. [end_task]")));
    EXPECT_EQ(parse_action("Sure! I'll tap it: [Tap] [ Accept ] now"), make_tap("accept"));
}

TEST(ParseAction, MissingBrackets)
{
    EXPECT_EQ(parse_error("tap voice-call"), ErrorCode::MalformedAction);
}

TEST(ParseAction, ArityAndVerbChecks)
{
    EXPECT_EQ(parse_error("[tap]"), ErrorCode::MalformedAction);
    EXPECT_EQ(parse_error("[tap] [a] [b]"), ErrorCode::MalformedAction);
    EXPECT_EQ(parse_error("[input] [field]"), ErrorCode::MalformedAction);
    EXPECT_EQ(parse_error("[back] [now]"), ErrorCode::MalformedAction);
    EXPECT_EQ(parse_error("[swipe] [left]"), ErrorCode::MalformedAction);
    EXPECT_EQ(parse_error("[tap] [   ]"), ErrorCode::MalformedAction);
    EXPECT_EQ(parse_error("[switch] [user_0]"), ErrorCode::MalformedAction);
    EXPECT_EQ(parse_error("[switch] [bob]"), ErrorCode::MalformedAction);
    EXPECT_EQ(parse_error(""), ErrorCode::MalformedAction);
}

TEST(ParseAction, SwitchForms)
{
    EXPECT_EQ(parse_action("[switch] [user_2]"), make_switch(2));
    EXPECT_EQ(parse_action("[switch] [User_3]"), make_switch(3));
    EXPECT_EQ(parse_action("[switch] [user]"), AgentAction{action::SwitchUser{std::nullopt}});
}

TEST(RenderAction, Canonical)
{
    EXPECT_EQ(render_action(make_tap("Accept")), "[tap] [accept]");
    EXPECT_EQ(render_action(make_switch(2)), "[switch] [user_2]");
    EXPECT_EQ(render_action(make_input("field", "Hi")), "[input] [field] [Hi]");
    EXPECT_EQ(render_action(action::Back{}), "[back]");
    EXPECT_EQ(render_action(action::EndTask{}), "[end_task]");
    EXPECT_EQ(render_action(action::SwitchUser{std::nullopt}), "[switch] [user]");
}

TEST(ActionSpace, Verbs)
{
    EXPECT_EQ(verb(make_tap("x")), "tap");
    EXPECT_EQ(verb(action::EndTask{}), "end_task");
    EXPECT_TRUE(is_device_action(action::Back{}));
    EXPECT_FALSE(is_device_action(make_switch(1)));
}

TEST(ParseAction, TotalOverRandomStrings)
{
    coplay::testing::Gen gen(17);
    const std::string alphabet = "[] abtpinuswched_0123-\n\t\"";
    int parsed = 0;
    for (int i = 0; i < 5000; ++i) {
        std::string s;
        const int len = gen.range(0, 30);
        for (int k = 0; k < len; ++k) {
            s.push_back(alphabet[static_cast<std::size_t>(gen.range(0, static_cast<int>(alphabet.size()) - 1))]);
        }
        try {
            const auto a = parse_action(s);
            ++parsed;
            EXPECT_EQ(parse_action(render_action(a)), a) << s;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::MalformedAction) << s;
        }
    }
    (void)parsed;
}

TEST(ResolveTarget, ExactIdTextDesc)
{
    const auto root = screen({make("decline", "Decline"), make("accept", "Accept"), make("", "", "More options")});
    EXPECT_EQ(resolve_target(root, ElementRef("accept")).short_resource_id(), "accept");
    EXPECT_EQ(resolve_target(root, ElementRef("ACCEPT")).short_resource_id(), "accept");
    EXPECT_EQ(resolve_target(root, ElementRef("more options")).content_desc, "More options");
}

TEST(ResolveTarget, IdOutranksText)
{
    const auto root = screen({make("", "send"), make("send", "Go")});
    EXPECT_EQ(resolve_target(root, ElementRef("send")).text, "Go");
}

TEST(ResolveTarget, TwoPlusButtonsAreAmbiguous)
{
    const auto root = screen({make("add-member", "+"), make("more", "+")});
    try {
        resolve_target(root, ElementRef("+"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::AmbiguousMatch);
    }
}

TEST(ResolveTarget, NoMatch)
{
    const auto root = screen({make("accept", "Accept")});
    try {
        resolve_target(root, ElementRef("nonexistent"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NoMatch);
    }
}

TEST(ResolveTarget, UniqueSubstringFallback)
{
    const auto root = screen({make("comment", "Alice: Welcome to my LIVE!"), make("send", "Send")});
    EXPECT_EQ(resolve_target(root, ElementRef("welcome to my live!")).short_resource_id(), "comment");
    const auto two = screen({make("", "Alice: hi there"), make("", "Bob: hi there")});
    EXPECT_THROW(resolve_target(two, ElementRef("hi there")), Error);
}

TEST(ResolveTarget, Deterministic)
{
    coplay::testing::Gen gen(2);
    for (int i = 0; i < 50; ++i) {
        const auto tree = simplify(coplay::testing::random_hierarchy(gen));
        for (const auto* sel : {"ok", "button", "title", "search"}) {
            const ViewNode* first = nullptr;
            try {
                first = &resolve_target(tree, ElementRef(sel));
            } catch (const Error&) {
            }
            const ViewNode* second = nullptr;
            try {
                second = &resolve_target(tree, ElementRef(sel));
            } catch (const Error&) {
            }
            EXPECT_EQ(first, second);
        }
    }
}

TEST(ElementRef, EmptySelectorRejected)
{
    EXPECT_THROW(ElementRef("  "), Error);
    EXPECT_EQ(ElementRef("  Voice-Call ").selector(), "voice-call");
}
