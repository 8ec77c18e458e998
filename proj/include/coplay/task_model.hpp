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

#ifndef COPLAY_TASK_MODEL_HPP
#define COPLAY_TASK_MODEL_HPP

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "coplay/types.hpp"

namespace coplay {

struct SubTask {
    UserId owner;
    std::string description;
    std::set<UserId> mentioned_peers;

    friend bool operator==(const SubTask&, const SubTask&) = default;
};

/// A multi-user task split into one subtask per user.
struct TaskSpec {
    std::string raw_text;
    std::vector<UserId> users;
    std::map<UserId, SubTask> subtasks;
    UserId initiator;

    const SubTask& subtask(UserId user) const;

    friend bool operator==(const TaskSpec&, const TaskSpec&) = default;
};

/// Distinct user indices named by `User_N` / `UserN` tokens, ascending.
/// Throws NoUsersFound, or UserIndexOutOfRange for indices outside 1..9.
std::vector<UserId> extract_users(std::string_view raw_text);

/// Splits "User_1: ...; User_2: ..." into per-user subtasks. The initiator is
/// always the lowest user index present.
TaskSpec segment(std::string_view raw_text);

/// Canonical "User_1: desc; User_2: desc" text. segment(join_subtasks(t))
/// reproduces t's users and subtasks.
std::string join_subtasks(const TaskSpec& task);

/// One entry of a task file. `id` comes from a preceding `#id: <name>`
/// comment when present, otherwise `<stem>-<NN>` by ordinal.
struct TaskFileEntry {
    std::string id;
    int line = 0;
    std::string text;
};

/// Reads one task per line; blank lines and lines starting with '#' are
/// skipped. Does not segment the lines.
std::vector<TaskFileEntry> read_task_file(const std::string& path);
std::vector<TaskFileEntry> parse_task_lines(std::string_view content, std::string_view stem);

} // namespace coplay

#endif // COPLAY_TASK_MODEL_HPP
