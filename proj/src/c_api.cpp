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

#include "coplay/coplay.h"

#include <cstring>
#include <exception>
#include <memory>
#include <string>
#include <vector>

#include "coplay/error.hpp"
#include "coplay/eval.hpp"
#include "coplay/runner.hpp"

#ifndef COPLAY_VERSION_STRING
#define COPLAY_VERSION_STRING "0.0.0"
#endif

struct coplay_config {
    coplay::RunConfig config;
    coplay_log_fn log_fn = nullptr;
    void* log_user = nullptr;
};

struct coplay_report {
    coplay::SuiteReport report;
    std::string json;
    std::string table;
};

namespace {

thread_local std::string g_last_error;

coplay_status status_for(coplay::ErrorCode code)
{
    using coplay::ErrorCode;
    switch (code) {
    case ErrorCode::InvalidArgument: return COPLAY_ERR_INVALID_ARGUMENT;
    case ErrorCode::InvalidConfig: return COPLAY_ERR_INVALID_CONFIG;
    case ErrorCode::Io: return COPLAY_ERR_IO;
    case ErrorCode::UnknownApp: return COPLAY_ERR_UNKNOWN_APP;
    case ErrorCode::MissingTruth: return COPLAY_ERR_MISSING_TRUTH;
    case ErrorCode::EmptySuite: return COPLAY_ERR_EMPTY_SUITE;
    case ErrorCode::ProviderFailure: return COPLAY_ERR_PROVIDER;
    case ErrorCode::MalformedAction: return COPLAY_ERR_MALFORMED_ACTION;
    case ErrorCode::InsufficientDevices: return COPLAY_ERR_INSUFFICIENT_DEVICES;
    case ErrorCode::Parse:
    case ErrorCode::NoUsersFound:
    case ErrorCode::UserIndexOutOfRange:
    case ErrorCode::SingleUserTask:
    case ErrorCode::DuplicateOwner:
    case ErrorCode::MissingSubtask:
    case ErrorCode::EmptySubtask:
    case ErrorCode::TaskIdMismatch:
    case ErrorCode::UserSetMismatch: return COPLAY_ERR_PARSE;
    default: return COPLAY_ERR_INTERNAL;
    }
}

template <class Fn>
coplay_status guarded(Fn&& fn)
{
    g_last_error.clear();
    try {
        fn();
        return COPLAY_OK;
    } catch (const coplay::Error& e) {
        g_last_error = e.what();
        return status_for(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return COPLAY_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown exception";
        return COPLAY_ERR_INTERNAL;
    }
}

coplay_status null_argument(const char* what)
{
    g_last_error = std::string(what) + " is NULL";
    return COPLAY_ERR_INVALID_ARGUMENT;
}

coplay_status reject_config(const std::string& message)
{
    g_last_error = message;
    return COPLAY_ERR_INVALID_CONFIG;
}

} // namespace

extern "C" {

const char* coplay_version(void)
{
    return COPLAY_VERSION_STRING;
}

const char* coplay_status_string(coplay_status status)
{
    switch (status) {
    case COPLAY_OK: return "ok";
    case COPLAY_ERR_INVALID_ARGUMENT: return "invalid argument";
    case COPLAY_ERR_INVALID_CONFIG: return "invalid configuration";
    case COPLAY_ERR_IO: return "i/o error";
    case COPLAY_ERR_PARSE: return "parse error";
    case COPLAY_ERR_UNKNOWN_APP: return "unknown app";
    case COPLAY_ERR_MISSING_TRUTH: return "missing ground truth";
    case COPLAY_ERR_EMPTY_SUITE: return "empty suite";
    case COPLAY_ERR_PROVIDER: return "provider failure";
    case COPLAY_ERR_MALFORMED_ACTION: return "malformed action";
    case COPLAY_ERR_INSUFFICIENT_DEVICES: return "insufficient devices";
    case COPLAY_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case COPLAY_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* coplay_last_error(void)
{
    return g_last_error.c_str();
}

coplay_status coplay_config_create(coplay_config** out)
{
    if (out == nullptr) {
        return null_argument("out");
    }
    return guarded([&] { *out = new coplay_config(); });
}

coplay_status coplay_config_load(const char* path, coplay_config** out)
{
    if (path == nullptr || out == nullptr) {
        return null_argument(path == nullptr ? "path" : "out");
    }
    return guarded([&] {
        auto config = std::make_unique<coplay_config>();
        config->config = coplay::RunConfig::from_file(path);
        *out = config.release();
    });
}

void coplay_config_destroy(coplay_config* config)
{
    delete config;
}

coplay_status coplay_config_merge_json(coplay_config* config, const char* json)
{
    if (config == nullptr || json == nullptr) {
        return null_argument(config == nullptr ? "config" : "json");
    }
    return guarded([&] { config->config.merge_json_text(json); });
}

coplay_status coplay_config_set_seed(coplay_config* config, uint64_t seed)
{
    if (config == nullptr) {
        return null_argument("config");
    }
    config->config.seed = seed;
    return COPLAY_OK;
}

coplay_status coplay_config_set_provider(coplay_config* config, const char* kind)
{
    if (config == nullptr || kind == nullptr) {
        return null_argument(config == nullptr ? "config" : "kind");
    }
    return guarded([&] { config->config.provider = coplay::provider_kind_from_string(kind); });
}

#define COPLAY_STRING_SETTER(name, field)                                                                              \
    coplay_status name(coplay_config* config, const char* value)                                                       \
    {                                                                                                                  \
        if (config == nullptr || value == nullptr) {                                                                   \
            return null_argument(config == nullptr ? "config" : "value");                                              \
        }                                                                                                              \
        config->config.field = value;                                                                                  \
        return COPLAY_OK;                                                                                              \
    }

COPLAY_STRING_SETTER(coplay_config_set_output_dir, output_dir)
COPLAY_STRING_SETTER(coplay_config_set_truth_dir, truth_dir)
COPLAY_STRING_SETTER(coplay_config_set_replay_dir, replay_dir)
COPLAY_STRING_SETTER(coplay_config_set_record_dir, record_dir)
COPLAY_STRING_SETTER(coplay_config_set_farm_file, farm_file)
COPLAY_STRING_SETTER(coplay_config_set_fault_table, fault_table_file)

#undef COPLAY_STRING_SETTER

coplay_status coplay_config_set_parallel(coplay_config* config, int workers)
{
    if (config == nullptr) {
        return null_argument("config");
    }
    if (workers <= 0) {
        return reject_config("parallel must be positive");
    }
    config->config.parallel = workers;
    return COPLAY_OK;
}

coplay_status coplay_config_set_clock_delta_ms(coplay_config* config, int64_t delta_ms)
{
    if (config == nullptr) {
        return null_argument("config");
    }
    if (delta_ms <= 0) {
        return reject_config("clock_delta_ms must be positive");
    }
    config->config.clock_delta = coplay::SimDuration{delta_ms};
    return COPLAY_OK;
}

coplay_status coplay_config_set_noise(coplay_config* config, double wrong_rate)
{
    if (config == nullptr) {
        return null_argument("config");
    }
    if (!(wrong_rate >= 0.0 && wrong_rate <= 1.0)) {
        return reject_config("noise must lie in [0, 1]");
    }
    config->config.noise = wrong_rate;
    return COPLAY_OK;
}

coplay_status coplay_config_set_log_callback(coplay_config* config, coplay_log_fn fn, void* user_data)
{
    if (config == nullptr) {
        return null_argument("config");
    }
    config->log_fn = fn;
    config->log_user = user_data;
    return COPLAY_OK;
}

coplay_status coplay_run_file(const coplay_config* config, const char* task_file, const char* app_id, int* tasks,
                              int* successes)
{
    if (config == nullptr || task_file == nullptr) {
        return null_argument(config == nullptr ? "config" : "task_file");
    }
    return guarded([&] {
        auto run_config = config->config;
        if (config->log_fn != nullptr) {
            const auto fn = config->log_fn;
            void* user = config->log_user;
            run_config.log = [fn, user](std::string_view message) { fn(std::string(message).c_str(), user); };
        }
        const auto summary = coplay::cmd_run(task_file, app_id == nullptr ? "auto" : app_id, run_config);
        if (tasks != nullptr) {
            *tasks = summary.tasks;
        }
        if (successes != nullptr) {
            *successes = summary.successes;
        }
    });
}

coplay_status coplay_score_dirs(const char* traces_dir, const char* truth_dir, const char* report_path,
                                coplay_report** out)
{
    if (traces_dir == nullptr || truth_dir == nullptr || out == nullptr) {
        return null_argument(traces_dir == nullptr ? "traces_dir" : truth_dir == nullptr ? "truth_dir" : "out");
    }
    return guarded([&] {
        auto report = std::make_unique<coplay_report>();
        report->report = coplay::cmd_score(traces_dir, truth_dir, report_path == nullptr ? "" : report_path);
        report->json = report->report.to_json();
        report->table = report->report.summary_table();
        *out = report.release();
    });
}

void coplay_report_destroy(coplay_report* report)
{
    delete report;
}

int coplay_report_total(const coplay_report* report)
{
    return report == nullptr ? 0 : report->report.total;
}

int coplay_report_successes(const coplay_report* report)
{
    return report == nullptr ? 0 : report->report.successes;
}

double coplay_report_success_rate(const coplay_report* report)
{
    return report == nullptr ? 0.0 : report->report.success_rate;
}

double coplay_report_mean_similarity(const coplay_report* report)
{
    return report == nullptr ? 0.0 : report->report.mean_similarity;
}

const char* coplay_report_json(const coplay_report* report)
{
    return report == nullptr ? "" : report->json.c_str();
}

const char* coplay_report_table(const coplay_report* report)
{
    return report == nullptr ? "" : report->table.c_str();
}

size_t coplay_app_count(void)
{
    return coplay::AppRegistry::builtin().apps().size();
}

const char* coplay_app_id(size_t index)
{
    const auto& apps = coplay::AppRegistry::builtin().apps();
    return index < apps.size() ? apps[index].id.c_str() : nullptr;
}

const char* coplay_app_description(size_t index)
{
    const auto& apps = coplay::AppRegistry::builtin().apps();
    return index < apps.size() ? apps[index].description.c_str() : nullptr;
}

coplay_status coplay_export_suite(const char* dir)
{
    if (dir == nullptr) {
        return null_argument("dir");
    }
    return guarded([&] { coplay::export_builtin_suite(dir); });
}

coplay_status coplay_canonicalize_action(const char* text, char* buffer, size_t buffer_size, size_t* needed)
{
    if (text == nullptr) {
        return null_argument("text");
    }
    std::string canonical;
    const auto status = guarded([&] { canonical = coplay::render_action(coplay::parse_action(text)); });
    if (status != COPLAY_OK) {
        return status;
    }
    if (needed != nullptr) {
        *needed = canonical.size() + 1;
    }
    if (buffer == nullptr || buffer_size < canonical.size() + 1) {
        g_last_error = "buffer needs " + std::to_string(canonical.size() + 1) + " bytes";
        return COPLAY_ERR_BUFFER_TOO_SMALL;
    }
    std::memcpy(buffer, canonical.c_str(), canonical.size() + 1);
    return COPLAY_OK;
}

coplay_status coplay_action_similarity(const char* const* inferred, size_t inferred_count, const char* const* truth,
                                       size_t truth_count, double* score)
{
    if (score == nullptr || (inferred == nullptr && inferred_count > 0) || (truth == nullptr && truth_count > 0)) {
        return null_argument("score or sequence");
    }
    return guarded([&] {
        std::vector<std::string> a(inferred, inferred + inferred_count);
        std::vector<std::string> b(truth, truth + truth_count);
        *score = coplay::action_similarity(a, b).score;
    });
}

} // extern "C"
