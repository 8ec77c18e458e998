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

#ifndef COPLAY_PROVIDERS_HPP
#define COPLAY_PROVIDERS_HPP

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "coplay/agent.hpp"

namespace coplay {

/// Replies from a fixed list in order; once exhausted it answers
/// "[end_task]".
class ScriptedOracleProvider : public CompletionProvider {
public:
    explicit ScriptedOracleProvider(std::vector<std::string> script);

    std::string kind() const override { return "scripted-oracle"; }
    std::string complete(const PromptBundle& prompt) override;

    std::size_t position() const { return next_; }

private:
    std::vector<std::string> script_;
    std::size_t next_ = 0;
};

/// Hex SHA-256 of the rendered prompt.
std::string prompt_hash(const PromptBundle& prompt);

struct ReplayEntry {
    std::string prompt_hash;
    std::string completion;

    friend bool operator==(const ReplayEntry&, const ReplayEntry&) = default;
};

/// One task's recorded exchanges, per user, in call order.
struct ReplayLog {
    std::string task_id;
    std::map<UserId, std::vector<ReplayEntry>> agents;

    /// {"task_id": "...", "agents": {"1": [{"prompt_sha256", "completion"}]}}
    static ReplayLog load(const std::string& path);
    void save(const std::string& path) const;
};

/// Serves completions from a recording. Each call must present the prompt
/// hash recorded at that position; divergence is a ProviderFailure.
class RecordedReplayProvider : public CompletionProvider {
public:
    explicit RecordedReplayProvider(std::vector<ReplayEntry> entries);

    std::string kind() const override { return "recorded-replay"; }
    std::string complete(const PromptBundle& prompt) override;

private:
    std::vector<ReplayEntry> entries_;
    std::size_t next_ = 0;
};

/// Thread-safe sink shared by the recording providers of one run.
class ReplayRecorder {
public:
    explicit ReplayRecorder(std::string task_id) { log_.task_id = std::move(task_id); }

    void add(UserId user, ReplayEntry entry);
    ReplayLog log() const;

private:
    mutable std::mutex mutex_;
    ReplayLog log_;
};

/// Passes calls through to `inner` and records each exchange.
class RecordingProvider : public CompletionProvider {
public:
    RecordingProvider(std::unique_ptr<CompletionProvider> inner, std::shared_ptr<ReplayRecorder> recorder,
                      UserId user);

    std::string kind() const override { return inner_->kind(); }
    std::string complete(const PromptBundle& prompt) override;

private:
    std::unique_ptr<CompletionProvider> inner_;
    std::shared_ptr<ReplayRecorder> recorder_;
    UserId user_;
};

struct RemoteEndpointConfig {
    /// Base URL of an OpenAI-compatible API, e.g. "https://host/v1".
    std::string endpoint;
    std::string model;
    /// Name of the environment variable holding the bearer token.
    std::string api_key_env = "COPLAY_API_KEY";
    std::chrono::milliseconds timeout{30000};
    int transport_retries = 1;
    double temperature = 0.0;
};

/// Chat-completions client. The credential is read from the environment at
/// construction; a missing variable is a ProviderFailure.
class RemoteEndpointProvider : public CompletionProvider {
public:
    explicit RemoteEndpointProvider(RemoteEndpointConfig config);
    ~RemoteEndpointProvider() override;

    std::string kind() const override { return "remote-endpoint"; }
    std::string complete(const PromptBundle& prompt) override;

private:
    RemoteEndpointConfig config_;
    std::string api_key_;
};

/// With probability `wrong_rate` replaces the inner reply by a plausible but
/// wrong action taken from the screen. The inner provider is consulted on
/// every call either way, so corruptions at a lower rate are a subset of
/// those at a higher rate for the same seed.
class NoisyProvider : public CompletionProvider {
public:
    NoisyProvider(std::unique_ptr<CompletionProvider> inner, double wrong_rate, std::uint64_t seed);

    std::string kind() const override { return "noisy(" + inner_->kind() + ")"; }
    std::string complete(const PromptBundle& prompt) override;

private:
    std::unique_ptr<CompletionProvider> inner_;
    double wrong_rate_;
    std::uint64_t state_;
};

/// Emits random but well-formed actions: taps and inputs on elements of the
/// current screen, back, switches to any task user, and end_task.
class RandomProvider : public CompletionProvider {
public:
    RandomProvider(std::vector<UserId> users, std::uint64_t seed);

    std::string kind() const override { return "random"; }
    std::string complete(const PromptBundle& prompt) override;

private:
    std::vector<UserId> users_;
    std::uint64_t state_;
};

/// Selectors ("id=" values, else quoted text/desc) of the elements listed in
/// serialized screen text, in screen order. `clickable_only` keeps lines
/// carrying the clickable flag.
std::vector<std::string> screen_selectors(const std::string& screen_text, bool clickable_only);

} // namespace coplay

#endif // COPLAY_PROVIDERS_HPP
