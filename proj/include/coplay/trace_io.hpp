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

#ifndef COPLAY_TRACE_IO_HPP
#define COPLAY_TRACE_IO_HPP

#include <map>
#include <string>

#include "coplay/eval.hpp"
#include "coplay/orchestrator.hpp"

namespace coplay {

inline constexpr const char* kTraceSchema = "coplay.trace/1";
inline constexpr const char* kTruthSchema = "coplay.truth/1";
inline constexpr const char* kReportSchema = "coplay.report/1";

/// Stable, byte-deterministic JSON for a trace (two-space indent, sorted keys).
std::string trace_to_json(const RunTrace& trace);
RunTrace trace_from_json(const std::string& text);

std::string truth_to_json(const GroundTruthTrace& truth);
GroundTruthTrace truth_from_json(const std::string& text);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Loads every `*.json` in `dir` carrying the given schema, keyed by task id.
std::map<std::string, RunTrace> load_traces(const std::string& dir);
std::map<std::string, GroundTruthTrace> load_truths(const std::string& dir);

} // namespace coplay

#endif // COPLAY_TRACE_IO_HPP
