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

#include "coplay/task_model.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "coplay/error.hpp"
#include "strings.hpp"

namespace coplay {

namespace {

// "User_2" and "User2"; the index is validated separately so "User_12" is an
// error rather than a silent "User_1".
const std::regex& user_token()
{
    static const std::regex pattern(R"(\bUser_?([0-9]+)\b)");
    return pattern;
}

const std::regex& clause_header()
{
    static const std::regex pattern(R"(^\s*User_?([0-9]+)\s*:\s*)");
    return pattern;
}

UserId checked_index(const std::string& digits)
{
    const int index = digits.size() > 2 ? 100 : std::stoi(digits);
    if (index < 1 || index > 9) {
        fail(ErrorCode::UserIndexOutOfRange, "user index out of range 1..9: User_" + digits);
    }
    return UserId(index);
}

std::set<UserId> users_in(std::string_view text)
{
    std::set<UserId> found;
    const std::string owned(text);
    for (auto it = std::sregex_iterator(owned.begin(), owned.end(), user_token()); it != std::sregex_iterator();
         ++it) {
        found.insert(checked_index((*it)[1].str()));
    }
    return found;
}

} // namespace

const SubTask& TaskSpec::subtask(UserId user) const
{
    const auto it = subtasks.find(user);
    if (it == subtasks.end()) {
        fail(ErrorCode::MissingSubtask, "no subtask for " + to_string(user));
    }
    return it->second;
}

std::vector<UserId> extract_users(std::string_view raw_text)
{
    const auto found = users_in(raw_text);
    if (found.empty()) {
        fail(ErrorCode::NoUsersFound, "no User_N token in task text");
    }
    return {found.begin(), found.end()};
}

TaskSpec segment(std::string_view raw_text)
{
    TaskSpec task;
    task.raw_text = std::string(raw_text);
    task.users = extract_users(raw_text);
    if (task.users.size() < 2) {
        fail(ErrorCode::SingleUserTask, "a multi-user task needs at least two users, found only " +
                                            to_string(task.users.front()));
    }

    int clause_number = 0;
    for (const auto piece : detail::split(raw_text, ';')) {
        const auto clause = detail::trim(piece);
        if (clause.empty()) {
            continue;
        }
        ++clause_number;
        const std::string owned(clause);
        std::smatch header;
        if (!std::regex_search(owned, header, clause_header())) {
            fail(ErrorCode::Parse, "clause " + std::to_string(clause_number) + " has no \"User_N:\" header: \"" +
                                       owned + "\"");
        }
        const UserId owner = checked_index(header[1].str());
        const std::string description(detail::trim(owned.substr(static_cast<std::size_t>(header.length(0)))));
        if (description.empty()) {
            fail(ErrorCode::EmptySubtask, to_string(owner) + " has an empty subtask");
        }
        if (task.subtasks.contains(owner)) {
            fail(ErrorCode::DuplicateOwner, to_string(owner) + " heads more than one clause");
        }
        SubTask sub{owner, description, users_in(description)};
        sub.mentioned_peers.erase(owner);
        task.subtasks.emplace(owner, std::move(sub));
    }

    for (const UserId user : task.users) {
        if (!task.subtasks.contains(user)) {
            fail(ErrorCode::MissingSubtask, to_string(user) + " is mentioned but has no clause");
        }
    }
    task.initiator = task.users.front();
    return task;
}

std::string join_subtasks(const TaskSpec& task)
{
    std::string out;
    for (const auto& [user, sub] : task.subtasks) {
        if (!out.empty()) {
            out += "; ";
        }
        out += to_string(user) + ": " + sub.description;
    }
    return out;
}

std::vector<TaskFileEntry> parse_task_lines(std::string_view content, std::string_view stem)
{
    std::vector<TaskFileEntry> entries;
    std::string pending_id;
    int line_number = 0;
    int ordinal = 0;
    if (content.starts_with("\xEF\xBB\xBF")) {
        content.remove_prefix(3);
    }
    for (auto line : detail::split(content, '\n')) {
        ++line_number;
        line = detail::trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '#') {
            auto body = detail::trim(line.substr(1));
            if (body.starts_with("id:")) {
                pending_id = std::string(detail::trim(body.substr(3)));
            }
            continue;
        }
        ++ordinal;
        TaskFileEntry entry;
        if (!pending_id.empty()) {
            entry.id = std::move(pending_id);
            pending_id.clear();
        } else {
            std::ostringstream id;
            id << stem << '-' << (ordinal < 10 ? "0" : "") << ordinal;
            entry.id = id.str();
        }
        entry.line = line_number;
        entry.text = std::string(line);
        entries.push_back(std::move(entry));
    }
    return entries;
}

std::vector<TaskFileEntry> read_task_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorCode::Io, "cannot read task file " + path);
    }
    std::ostringstream content;
    content << in.rdbuf();
    return parse_task_lines(content.str(), std::filesystem::path(path).stem().string());
}

} // namespace coplay
