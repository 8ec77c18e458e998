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

/* C interface of the coplay runtime. All strings are UTF-8. Functions that
 * can fail return a coplay_status; coplay_last_error() then describes the
 * most recent failure on the calling thread. */
#ifndef COPLAY_COPLAY_H
#define COPLAY_COPLAY_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define COPLAY_API __declspec(dllexport)
#elif defined(__GNUC__)
#define COPLAY_API __attribute__((visibility("default")))
#else
#define COPLAY_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum coplay_status {
    COPLAY_OK = 0,
    COPLAY_ERR_INVALID_ARGUMENT = 1,
    COPLAY_ERR_INVALID_CONFIG = 2,
    COPLAY_ERR_IO = 3,
    COPLAY_ERR_PARSE = 4,
    COPLAY_ERR_UNKNOWN_APP = 5,
    COPLAY_ERR_MISSING_TRUTH = 6,
    COPLAY_ERR_EMPTY_SUITE = 7,
    COPLAY_ERR_PROVIDER = 8,
    COPLAY_ERR_MALFORMED_ACTION = 9,
    COPLAY_ERR_INSUFFICIENT_DEVICES = 10,
    COPLAY_ERR_BUFFER_TOO_SMALL = 11,
    COPLAY_ERR_INTERNAL = 99
} coplay_status;

typedef struct coplay_config coplay_config;
typedef struct coplay_report coplay_report;

typedef void (*coplay_log_fn)(const char* message, void* user_data);

COPLAY_API const char* coplay_version(void);
COPLAY_API const char* coplay_status_string(coplay_status status);
/* Message of the last failure on this thread; "" when there was none. */
COPLAY_API const char* coplay_last_error(void);

/* Run configuration. Defaults: scripted-oracle provider, seed 7, 1000 ms
 * clock delta, 50 steps per agent, retry cap 3, output dir "coplay-out". */
COPLAY_API coplay_status coplay_config_create(coplay_config** out);
COPLAY_API coplay_status coplay_config_load(const char* path, coplay_config** out);
COPLAY_API void coplay_config_destroy(coplay_config* config);
/* Overlays the keys present in a JSON object onto the configuration. */
COPLAY_API coplay_status coplay_config_merge_json(coplay_config* config, const char* json);
COPLAY_API coplay_status coplay_config_set_seed(coplay_config* config, uint64_t seed);
COPLAY_API coplay_status coplay_config_set_provider(coplay_config* config, const char* kind);
COPLAY_API coplay_status coplay_config_set_output_dir(coplay_config* config, const char* dir);
COPLAY_API coplay_status coplay_config_set_truth_dir(coplay_config* config, const char* dir);
COPLAY_API coplay_status coplay_config_set_replay_dir(coplay_config* config, const char* dir);
COPLAY_API coplay_status coplay_config_set_record_dir(coplay_config* config, const char* dir);
COPLAY_API coplay_status coplay_config_set_farm_file(coplay_config* config, const char* path);
COPLAY_API coplay_status coplay_config_set_fault_table(coplay_config* config, const char* path);
COPLAY_API coplay_status coplay_config_set_parallel(coplay_config* config, int workers);
COPLAY_API coplay_status coplay_config_set_clock_delta_ms(coplay_config* config, int64_t delta_ms);
COPLAY_API coplay_status coplay_config_set_noise(coplay_config* config, double wrong_rate);
COPLAY_API coplay_status coplay_config_set_log_callback(coplay_config* config, coplay_log_fn fn, void* user_data);

/* Runs every task of a task file. app_id "auto" picks the sim app by task
 * keywords. *tasks and *successes may be NULL. */
COPLAY_API coplay_status coplay_run_file(const coplay_config* config, const char* task_file, const char* app_id,
                                         int* tasks, int* successes);

/* Scores a directory of traces against a directory of ground truths. The
 * report is also written to report_path unless it is NULL or empty. */
COPLAY_API coplay_status coplay_score_dirs(const char* traces_dir, const char* truth_dir, const char* report_path,
                                           coplay_report** out);
COPLAY_API void coplay_report_destroy(coplay_report* report);
COPLAY_API int coplay_report_total(const coplay_report* report);
COPLAY_API int coplay_report_successes(const coplay_report* report);
COPLAY_API double coplay_report_success_rate(const coplay_report* report);
COPLAY_API double coplay_report_mean_similarity(const coplay_report* report);
COPLAY_API const char* coplay_report_json(const coplay_report* report);
COPLAY_API const char* coplay_report_table(const coplay_report* report);

COPLAY_API size_t coplay_app_count(void);
COPLAY_API const char* coplay_app_id(size_t index);
COPLAY_API const char* coplay_app_description(size_t index);

/* Writes suite.tasks and truth/<id>.json for the built-in scenarios. */
COPLAY_API coplay_status coplay_export_suite(const char* dir);

/* Parses a model reply and writes its canonical form. *needed receives the
 * size including the terminator, also when the buffer is too small. */
COPLAY_API coplay_status coplay_canonicalize_action(const char* text, char* buffer, size_t buffer_size,
                                                    size_t* needed);

COPLAY_API coplay_status coplay_action_similarity(const char* const* inferred, size_t inferred_count,
                                                  const char* const* truth, size_t truth_count, double* score);

#ifdef __cplusplus
}
#endif

#endif /* COPLAY_COPLAY_H */
