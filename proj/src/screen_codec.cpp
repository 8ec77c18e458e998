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

#include "coplay/screen_codec.hpp"

#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "coplay/error.hpp"
#include "strings.hpp"

namespace coplay {

namespace {

std::optional<std::string> raw_value(const ViewNode& node, std::initializer_list<const char*> keys)
{
    for (const char* key : keys) {
        const auto it = node.raw_attributes.find(key);
        if (it != node.raw_attributes.end() && !it->second.empty()) {
            return it->second;
        }
    }
    return std::nullopt;
}

std::optional<std::string> non_empty(const std::optional<std::string>& value)
{
    if (value && !value->empty()) {
        return value;
    }
    return std::nullopt;
}

std::optional<std::string> effective_resource_id(const ViewNode& node)
{
    if (auto value = non_empty(node.resource_id)) {
        return value;
    }
    return raw_value(node, {"resource-id", "resource_id"});
}

std::optional<std::string> effective_text(const ViewNode& node)
{
    if (auto value = non_empty(node.text)) {
        return value;
    }
    return raw_value(node, {"text"});
}

std::optional<std::string> effective_desc(const ViewNode& node)
{
    if (auto value = non_empty(node.content_desc)) {
        return value;
    }
    return raw_value(node, {"content-desc", "content_desc"});
}

bool effective_clickable(const ViewNode& node)
{
    if (node.clickable) {
        return true;
    }
    const auto value = raw_value(node, {"clickable"});
    return value && *value == "true";
}

std::optional<ViewNode> prune_node(const ViewNode& node)
{
    ViewNode out = node;
    out.children.clear();
    for (const auto& child : node.children) {
        if (auto kept = prune_node(child)) {
            out.children.push_back(std::move(*kept));
        }
    }
    if (is_bare(out)) {
        if (out.children.size() == 1) {
            return std::move(out.children.front());
        }
        if (out.children.empty()) {
            return std::nullopt;
        }
    }
    return out;
}

void append_quoted(std::string& out, std::string_view value)
{
    out.push_back('"');
    for (char c : value) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        default: out.push_back(c);
        }
    }
    out.push_back('"');
}

void serialize_into(std::string& out, const ViewNode& node, int depth)
{
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    out += node.short_class();
    if (auto rid = non_empty(node.resource_id)) {
        out += " id=";
        out += node.short_resource_id();
    }
    if (auto text = non_empty(node.text)) {
        out += " text=";
        append_quoted(out, *text);
    }
    if (auto desc = non_empty(node.content_desc)) {
        out += " desc=";
        append_quoted(out, *desc);
    }
    if (node.clickable) {
        out += " clickable";
    }
    for (const auto& [key, value] : node.raw_attributes) {
        out.push_back(' ');
        out += key;
        out.push_back('=');
        append_quoted(out, value);
    }
    out.push_back('\n');
    for (const auto& child : node.children) {
        serialize_into(out, child, depth + 1);
    }
}

ViewNode import_node(const boost::property_tree::ptree& tree)
{
    ViewNode node;
    if (const auto attrs = tree.get_child_optional("<xmlattr>")) {
        for (const auto& [key, value] : *attrs) {
            node.raw_attributes[key] = value.data();
        }
    }
    if (const auto it = node.raw_attributes.find("class"); it != node.raw_attributes.end()) {
        node.class_name = it->second;
    }
    for (const auto& [name, child] : tree) {
        if (name == "node") {
            node.children.push_back(import_node(child));
        }
    }
    return node;
}

void append_xml_escaped(std::string& out, std::string_view value)
{
    for (char c : value) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\n': out += "&#10;"; break;
        default: out.push_back(c);
        }
    }
}

void export_node(std::string& out, const ViewNode& node, int depth)
{
    std::map<std::string, std::string> attrs = node.raw_attributes;
    if (!node.class_name.empty()) {
        attrs.try_emplace("class", node.class_name);
    }
    if (node.resource_id) {
        attrs.try_emplace("resource-id", *node.resource_id);
    }
    if (node.text) {
        attrs.try_emplace("text", *node.text);
    }
    if (node.content_desc) {
        attrs.try_emplace("content-desc", *node.content_desc);
    }
    if (node.clickable) {
        attrs.try_emplace("clickable", "true");
    }
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    out += "<node";
    for (const auto& [key, value] : attrs) {
        out += ' ';
        out += key;
        out += "=\"";
        append_xml_escaped(out, value);
        out += '"';
    }
    if (node.children.empty()) {
        out += " />\n";
        return;
    }
    out += ">\n";
    for (const auto& child : node.children) {
        export_node(out, child, depth + 1);
    }
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    out += "</node>\n";
}

} // namespace

std::string ViewNode::short_resource_id() const
{
    if (!resource_id) {
        return {};
    }
    const auto pos = resource_id->find(":id/");
    return pos == std::string::npos ? *resource_id : resource_id->substr(pos + 4);
}

std::string ViewNode::short_class() const
{
    if (class_name.empty()) {
        return "View";
    }
    const auto pos = class_name.rfind('.');
    return pos == std::string::npos ? class_name : class_name.substr(pos + 1);
}

bool ViewNode::editable() const
{
    return class_name.find("EditText") != std::string::npos;
}

bool is_bare(const ViewNode& node)
{
    return !effective_resource_id(node) && !effective_text(node) && !effective_desc(node) &&
           !effective_clickable(node);
}

ViewNode filter_attributes(const ViewNode& root)
{
    ViewNode out;
    out.class_name = raw_value(root, {"class"}).value_or(root.class_name);
    out.resource_id = effective_resource_id(root);
    out.text = effective_text(root);
    out.content_desc = effective_desc(root);
    out.clickable = effective_clickable(root);
    out.children.reserve(root.children.size());
    for (const auto& child : root.children) {
        out.children.push_back(filter_attributes(child));
    }
    return out;
}

ViewNode prune_containers(const ViewNode& root)
{
    if (auto pruned = prune_node(root)) {
        return std::move(*pruned);
    }
    // A bare root whose subtree vanished entirely.
    ViewNode out = root;
    out.children.clear();
    return out;
}

ViewNode simplify(const ViewNode& root)
{
    return prune_containers(filter_attributes(root));
}

ScreenSnapshot simplify(const ScreenSnapshot& snapshot)
{
    return {snapshot.device_id, simplify(snapshot.root), snapshot.captured_at};
}

std::string serialize_for_prompt(const ViewNode& root)
{
    std::string out;
    serialize_into(out, root, 0);
    return out;
}

std::string serialize_for_prompt(const ScreenSnapshot& snapshot)
{
    return serialize_for_prompt(snapshot.root);
}

ViewNode parse_accessibility_dump(std::string_view xml)
{
    namespace pt = boost::property_tree;
    pt::ptree doc;
    try {
        std::istringstream in{std::string(xml)};
        pt::read_xml(in, doc, pt::xml_parser::trim_whitespace);
    } catch (const pt::xml_parser_error& e) {
        fail(ErrorCode::Parse, std::string("accessibility dump: ") + e.what());
    }
    const auto hierarchy = doc.get_child_optional("hierarchy");
    if (!hierarchy) {
        fail(ErrorCode::Parse, "accessibility dump has no <hierarchy> element");
    }
    std::vector<ViewNode> tops;
    for (const auto& [name, child] : *hierarchy) {
        if (name == "node") {
            tops.push_back(import_node(child));
        }
    }
    if (tops.empty()) {
        fail(ErrorCode::Parse, "accessibility dump has no <node> elements");
    }
    if (tops.size() == 1) {
        return std::move(tops.front());
    }
    ViewNode root;
    root.class_name = "hierarchy";
    root.children = std::move(tops);
    return root;
}

std::string to_accessibility_dump(const ViewNode& root)
{
    std::string out = "<?xml version='1.0' encoding='UTF-8' standalone='yes' ?>\n<hierarchy rotation=\"0\">\n";
    if (root.class_name == "hierarchy") {
        for (const auto& child : root.children) {
            export_node(out, child, 1);
        }
    } else {
        export_node(out, root, 1);
    }
    out += "</hierarchy>\n";
    return out;
}

std::size_t count_nodes(const ViewNode& root)
{
    std::size_t total = 1;
    for (const auto& child : root.children) {
        total += count_nodes(child);
    }
    return total;
}

} // namespace coplay
