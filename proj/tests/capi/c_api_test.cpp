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

// Exercises the shared library through its C header only.

#include "coplay/coplay.h"

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include <unistd.h>

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    auto dir = fs::temp_directory_path() / ("coplay-capi-" + name + "-" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

struct ConfigHandle {
    coplay_config* ptr = nullptr;
    ~ConfigHandle() { coplay_config_destroy(ptr); }
};

} // namespace

TEST(CApi, VersionAndStatusStrings)
{
    EXPECT_STREQ(coplay_version(), "0.1.0");
    EXPECT_STREQ(coplay_status_string(COPLAY_OK), "ok");
    EXPECT_STRNE(coplay_status_string(COPLAY_ERR_PARSE), coplay_status_string(COPLAY_ERR_IO));
}

TEST(CApi, NullArgumentsAreRejected)
{
    EXPECT_EQ(coplay_config_create(nullptr), COPLAY_ERR_INVALID_ARGUMENT);
    EXPECT_NE(std::string(coplay_last_error()), "");
    EXPECT_EQ(coplay_config_set_seed(nullptr, 1), COPLAY_ERR_INVALID_ARGUMENT);
    coplay_config_destroy(nullptr);
    coplay_report_destroy(nullptr);
}

TEST(CApi, ConfigSettersValidate)
{
    ConfigHandle config;
    ASSERT_EQ(coplay_config_create(&config.ptr), COPLAY_OK);
    EXPECT_STREQ(coplay_last_error(), "");
    EXPECT_EQ(coplay_config_set_seed(config.ptr, 11), COPLAY_OK);
    EXPECT_EQ(coplay_config_set_provider(config.ptr, "random"), COPLAY_OK);
    EXPECT_EQ(coplay_config_set_provider(config.ptr, "telepathy"), COPLAY_ERR_INVALID_CONFIG);
    EXPECT_EQ(coplay_config_set_parallel(config.ptr, 0), COPLAY_ERR_INVALID_CONFIG);
    EXPECT_EQ(coplay_config_set_clock_delta_ms(config.ptr, -5), COPLAY_ERR_INVALID_CONFIG);
    EXPECT_EQ(coplay_config_set_noise(config.ptr, 1.5), COPLAY_ERR_INVALID_CONFIG);
    EXPECT_EQ(coplay_config_set_noise(config.ptr, 0.25), COPLAY_OK);
}

TEST(CApi, MergeJsonRejectsGarbageAndUnknownKeys)
{
    ConfigHandle config;
    ASSERT_EQ(coplay_config_create(&config.ptr), COPLAY_OK);
    EXPECT_EQ(coplay_config_merge_json(config.ptr, "{not json"), COPLAY_ERR_INVALID_CONFIG);
    EXPECT_EQ(coplay_config_merge_json(config.ptr, R"({"bogus": 1})"), COPLAY_ERR_INVALID_CONFIG);
    EXPECT_EQ(coplay_config_merge_json(config.ptr, R"({"step_budget": 20, "ttl_overrides_ms": {"ring": 5000}})"),
              COPLAY_OK);
}

TEST(CApi, LoadMissingConfigIsIo)
{
    coplay_config* config = nullptr;
    EXPECT_EQ(coplay_config_load("/nonexistent/coplay.json", &config), COPLAY_ERR_IO);
    EXPECT_EQ(config, nullptr);
}

TEST(CApi, AppListing)
{
    const auto count = coplay_app_count();
    ASSERT_GE(count, 6U);
    for (size_t i = 0; i < count; ++i) {
        EXPECT_NE(std::string(coplay_app_id(i)), "");
        EXPECT_NE(std::string(coplay_app_description(i)), "");
    }
    EXPECT_EQ(coplay_app_id(count), nullptr);
}

TEST(CApi, CanonicalizeAction)
{
    char buffer[64];
    size_t needed = 0;
    ASSERT_EQ(coplay_canonicalize_action("I will now [tap] [voice-call]", buffer, sizeof buffer, &needed), COPLAY_OK);
    EXPECT_STREQ(buffer, "[tap] [voice-call]");
    EXPECT_EQ(needed, std::string("[tap] [voice-call]").size() + 1);

    char tiny[4];
    needed = 0;
    EXPECT_EQ(coplay_canonicalize_action("[tap] [voice-call]", tiny, sizeof tiny, &needed),
              COPLAY_ERR_BUFFER_TOO_SMALL);
    EXPECT_EQ(needed, 19U);
    EXPECT_EQ(coplay_canonicalize_action("[tap] [a] [b]", buffer, sizeof buffer, &needed),
              COPLAY_ERR_MALFORMED_ACTION);
}

TEST(CApi, ActionSimilarity)
{
    const std::vector<const char*> inferred{"[tap] [a]", "[tap] [b]", "[tap] [x]", "[tap] [d]"};
    const std::vector<const char*> truth{"[tap] [a]", "[tap] [b]", "[tap] [c]", "[tap] [d]"};
    double score = -1;
    ASSERT_EQ(coplay_action_similarity(inferred.data(), inferred.size(), truth.data(), truth.size(), &score),
              COPLAY_OK);
    EXPECT_DOUBLE_EQ(score, 0.75);
    ASSERT_EQ(coplay_action_similarity(nullptr, 0, nullptr, 0, &score), COPLAY_OK);
    EXPECT_DOUBLE_EQ(score, 1.0);
}

namespace {

std::vector<std::string> g_messages;

void collect(const char* message, void* user)
{
    ++*static_cast<int*>(user);
    g_messages.emplace_back(message);
}

} // namespace

TEST(CApi, RunAndScoreBuiltinSuite)
{
    const auto dir = scratch("suite");
    ASSERT_EQ(coplay_export_suite(dir.c_str()), COPLAY_OK);

    ConfigHandle config;
    ASSERT_EQ(coplay_config_create(&config.ptr), COPLAY_OK);
    const auto out = dir / "out";
    const auto truth = dir / "truth";
    ASSERT_EQ(coplay_config_set_output_dir(config.ptr, out.c_str()), COPLAY_OK);
    ASSERT_EQ(coplay_config_set_truth_dir(config.ptr, truth.c_str()), COPLAY_OK);
    int calls = 0;
    ASSERT_EQ(coplay_config_set_log_callback(config.ptr, collect, &calls), COPLAY_OK);

    int tasks = 0;
    int successes = 0;
    const auto suite = dir / "suite.tasks";
    ASSERT_EQ(coplay_run_file(config.ptr, suite.c_str(), "auto", &tasks, &successes), COPLAY_OK)
        << coplay_last_error();
    EXPECT_EQ(tasks, 12);
    EXPECT_EQ(successes, 12);
    EXPECT_GT(calls, 0);

    coplay_report* report = nullptr;
    const auto report_path = dir / "report.json";
    ASSERT_EQ(coplay_score_dirs(out.c_str(), truth.c_str(), report_path.c_str(), &report), COPLAY_OK)
        << coplay_last_error();
    EXPECT_EQ(coplay_report_total(report), 12);
    EXPECT_EQ(coplay_report_successes(report), 12);
    EXPECT_DOUBLE_EQ(coplay_report_success_rate(report), 1.0);
    EXPECT_DOUBLE_EQ(coplay_report_mean_similarity(report), 1.0);
    EXPECT_NE(std::string(coplay_report_json(report)).find("\"success_rate\""), std::string::npos);
    EXPECT_NE(std::string(coplay_report_table(report)), "");
    EXPECT_TRUE(fs::exists(report_path));
    coplay_report_destroy(report);
    fs::remove_all(dir);
}

TEST(CApi, RunErrorsMapToStatus)
{
    const auto dir = scratch("errors");
    ConfigHandle config;
    ASSERT_EQ(coplay_config_create(&config.ptr), COPLAY_OK);
    EXPECT_EQ(coplay_run_file(config.ptr, (dir / "missing.tasks").c_str(), "auto", nullptr, nullptr),
              COPLAY_ERR_IO);

    const auto bad = dir / "bad.tasks";
    {
        std::FILE* f = std::fopen(bad.c_str(), "w");
        ASSERT_NE(f, nullptr);
        std::fputs("nobody is named here\n", f);
        std::fclose(f);
    }
    EXPECT_EQ(coplay_run_file(config.ptr, bad.c_str(), "auto", nullptr, nullptr), COPLAY_ERR_PARSE);
    EXPECT_NE(std::string(coplay_last_error()).find("bad.tasks:1"), std::string::npos);

    coplay_report* report = nullptr;
    EXPECT_EQ(coplay_score_dirs(dir.c_str(), dir.c_str(), nullptr, &report), COPLAY_ERR_EMPTY_SUITE);
    EXPECT_EQ(report, nullptr);
    fs::remove_all(dir);
}
