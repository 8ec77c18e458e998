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

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "coplay/providers.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>
#include <openssl/evp.h>

#include "coplay/device_farm.hpp"
#include "coplay/error.hpp"
#include "strings.hpp"

namespace coplay {

ScriptedOracleProvider::ScriptedOracleProvider(std::vector<std::string> script) : script_(std::move(script)) {}

std::string ScriptedOracleProvider::complete(const PromptBundle&)
{
    if (next_ >= script_.size()) {
        return "[end_task]";
    }
    return script_[next_++];
}

std::string prompt_hash(const PromptBundle& prompt)
{
    const auto text = prompt.render();
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(text.data(), text.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        fail(ErrorCode::ProviderFailure, "SHA-256 digest failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(length * 2);
    for (unsigned int i = 0; i < length; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0x0f]);
    }
    return out;
}

// Replay

ReplayLog ReplayLog::load(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorCode::Io, "cannot read replay file " + path);
    }
    ReplayLog log;
    try {
        const auto doc = nlohmann::json::parse(in);
        log.task_id = doc.at("task_id").get<std::string>();
        for (const auto& [key, list] : doc.at("agents").items()) {
            const UserId user{std::stoi(key)};
            auto& entries = log.agents[user];
            for (const auto& e : list) {
                entries.push_back({e.at("prompt_sha256").get<std::string>(), e.at("completion").get<std::string>()});
            }
        }
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::Parse, "replay file " + path + ": " + e.what());
    } catch (const std::invalid_argument&) {
        fail(ErrorCode::Parse, "replay file " + path + ": agent keys must be user indices");
    }
    return log;
}

void ReplayLog::save(const std::string& path) const
{
    nlohmann::json agents_json = nlohmann::json::object();
    for (const auto& [user, entries] : agents) {
        auto list = nlohmann::json::array();
        for (const auto& e : entries) {
            list.push_back({{"prompt_sha256", e.prompt_hash}, {"completion", e.completion}});
        }
        agents_json[std::to_string(user.index())] = std::move(list);
    }
    const nlohmann::json doc = {{"task_id", task_id}, {"agents", agents_json}};
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        fail(ErrorCode::Io, "cannot write replay file " + path);
    }
    out << doc.dump(2) << '\n';
}

RecordedReplayProvider::RecordedReplayProvider(std::vector<ReplayEntry> entries) : entries_(std::move(entries)) {}

std::string RecordedReplayProvider::complete(const PromptBundle& prompt)
{
    if (next_ >= entries_.size()) {
        fail(ErrorCode::ProviderFailure,
             "recording exhausted after " + std::to_string(entries_.size()) + " completions");
    }
    const auto& entry = entries_[next_];
    const auto hash = prompt_hash(prompt);
    if (hash != entry.prompt_hash) {
        fail(ErrorCode::ProviderFailure, "prompt " + std::to_string(next_) + " diverges from the recording (" +
                                             hash.substr(0, 12) + " != " + entry.prompt_hash.substr(0, 12) + ")");
    }
    ++next_;
    return entry.completion;
}

void ReplayRecorder::add(UserId user, ReplayEntry entry)
{
    std::lock_guard lock(mutex_);
    log_.agents[user].push_back(std::move(entry));
}

ReplayLog ReplayRecorder::log() const
{
    std::lock_guard lock(mutex_);
    return log_;
}

RecordingProvider::RecordingProvider(std::unique_ptr<CompletionProvider> inner,
                                     std::shared_ptr<ReplayRecorder> recorder, UserId user)
    : inner_(std::move(inner)), recorder_(std::move(recorder)), user_(user)
{
    if (!inner_ || !recorder_) {
        fail(ErrorCode::InvalidArgument, "recording provider needs an inner provider and a recorder");
    }
}

std::string RecordingProvider::complete(const PromptBundle& prompt)
{
    auto reply = inner_->complete(prompt);
    recorder_->add(user_, {prompt_hash(prompt), reply});
    return reply;
}

// Remote endpoint

namespace {

struct SplitUrl {
    std::string origin; // scheme://host[:port]
    std::string path;   // no trailing slash
};

SplitUrl split_url(const std::string& url)
{
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        fail(ErrorCode::InvalidConfig, "endpoint \"" + url + "\" needs an http:// or https:// scheme");
    }
    const auto scheme = url.substr(0, scheme_end);
    if (scheme != "http" && scheme != "https") {
        fail(ErrorCode::InvalidConfig, "unsupported endpoint scheme \"" + scheme + "\"");
    }
    const auto path_start = url.find('/', scheme_end + 3);
    SplitUrl out;
    out.origin = url.substr(0, path_start);
    out.path = path_start == std::string::npos ? std::string{} : url.substr(path_start);
    while (!out.path.empty() && out.path.back() == '/') {
        out.path.pop_back();
    }
    return out;
}

} // namespace

RemoteEndpointProvider::RemoteEndpointProvider(RemoteEndpointConfig config) : config_(std::move(config))
{
    if (config_.endpoint.empty()) {
        fail(ErrorCode::InvalidConfig, "remote endpoint URL is empty");
    }
    split_url(config_.endpoint);
    const char* key = std::getenv(config_.api_key_env.c_str());
    if (key == nullptr || *key == '\0') {
        fail(ErrorCode::ProviderFailure, "environment variable " + config_.api_key_env + " is not set");
    }
    api_key_ = key;
}

RemoteEndpointProvider::~RemoteEndpointProvider() = default;

std::string RemoteEndpointProvider::complete(const PromptBundle& prompt)
{
    const auto url = split_url(config_.endpoint);
    httplib::Client client(url.origin);
    const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
    const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(config_.timeout - seconds);
    client.set_connection_timeout(seconds.count(), micros.count());
    client.set_read_timeout(seconds.count(), micros.count());
    client.set_write_timeout(seconds.count(), micros.count());

    const nlohmann::json body = {
        {"model", config_.model},
        {"temperature", config_.temperature},
        {"messages", nlohmann::json::array({{{"role", "user"}, {"content", prompt.render()}}})},
    };
    const httplib::Headers headers = {{"Authorization", "Bearer " + api_key_}};
    const auto payload = body.dump();

    std::string transport_error;
    for (int attempt = 0; attempt <= config_.transport_retries; ++attempt) {
        auto res = client.Post(url.path + "/chat/completions", headers, payload, "application/json");
        if (!res) {
            transport_error = httplib::to_string(res.error());
            continue;
        }
        if (res->status != 200) {
            fail(ErrorCode::ProviderFailure,
                 "endpoint answered HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200));
        }
        try {
            const auto doc = nlohmann::json::parse(res->body);
            return doc.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            fail(ErrorCode::ProviderFailure, std::string("unexpected completion payload: ") + e.what());
        }
    }
    fail(ErrorCode::ProviderFailure, "transport error talking to " + url.origin + ": " + transport_error);
}

// Noisy and random providers

std::vector<std::string> screen_selectors(const std::string& screen_text, bool clickable_only)
{
    std::vector<std::string> out;
    std::istringstream lines(screen_text);
    std::string line;
    const auto quoted_after = [](const std::string& l, const std::string& key) -> std::optional<std::string> {
        const auto pos = l.find(" " + key + "=\"");
        if (pos == std::string::npos) {
            return std::nullopt;
        }
        std::string value;
        for (auto i = pos + key.size() + 3; i < l.size(); ++i) {
            if (l[i] == '\\' && i + 1 < l.size()) {
                value.push_back(l[++i] == 'n' ? '\n' : l[i]);
            } else if (l[i] == '"') {
                return value;
            } else {
                value.push_back(l[i]);
            }
        }
        return std::nullopt;
    };
    while (std::getline(lines, line)) {
        const auto fields = std::string(detail::trim(line));
        if (fields.empty()) {
            continue;
        }
        if (clickable_only && fields.find(" clickable") == std::string::npos) {
            continue;
        }
        std::optional<std::string> selector;
        if (const auto pos = fields.find(" id="); pos != std::string::npos) {
            const auto end = fields.find(' ', pos + 4);
            selector = fields.substr(pos + 4, end == std::string::npos ? std::string::npos : end - pos - 4);
        } else if (auto text = quoted_after(fields, "text")) {
            selector = std::move(text);
        } else if (auto desc = quoted_after(fields, "desc")) {
            selector = std::move(desc);
        }
        if (!selector || selector->empty() || selector->find_first_of("[]\n") != std::string::npos) {
            continue;
        }
        out.push_back(detail::lower(*selector));
    }
    return out;
}

NoisyProvider::NoisyProvider(std::unique_ptr<CompletionProvider> inner, double wrong_rate, std::uint64_t seed)
    : inner_(std::move(inner)), wrong_rate_(wrong_rate), state_(seed)
{
    if (!inner_) {
        fail(ErrorCode::InvalidArgument, "noisy provider needs an inner provider");
    }
    if (!(wrong_rate >= 0.0 && wrong_rate <= 1.0)) {
        fail(ErrorCode::InvalidArgument, "wrong-action rate must lie in [0, 1]");
    }
}

std::string NoisyProvider::complete(const PromptBundle& prompt)
{
    auto reply = inner_->complete(prompt);
    // Both draws happen on every call so that the random stream does not
    // depend on the rate.
    const double u = unit_draw(state_);
    const auto pick = next_random(state_);
    if (u >= wrong_rate_) {
        return reply;
    }
    std::string chosen;
    try {
        const auto parsed = parse_action(reply);
        if (const auto* tap = std::get_if<action::Tap>(&parsed)) {
            chosen = tap->target.selector();
        }
    } catch (const Error&) {
    }
    std::vector<std::string> candidates;
    for (auto& s : screen_selectors(prompt.screen_text, true)) {
        if (s != chosen) {
            candidates.push_back(std::move(s));
        }
    }
    if (candidates.empty()) {
        return "[back]";
    }
    return "[tap] [" + candidates[pick % candidates.size()] + "]";
}

RandomProvider::RandomProvider(std::vector<UserId> users, std::uint64_t seed) : users_(std::move(users)), state_(seed)
{
    if (users_.empty()) {
        fail(ErrorCode::InvalidArgument, "random provider needs at least one user");
    }
}

std::string RandomProvider::complete(const PromptBundle& prompt)
{
    const auto roll = bounded_draw(state_, 100);
    const auto pick = next_random(state_);
    if (roll < 55) {
        const auto selectors = screen_selectors(prompt.screen_text, true);
        if (!selectors.empty()) {
            return "[tap] [" + selectors[pick % selectors.size()] + "]";
        }
        return "[back]";
    }
    if (roll < 65) {
        const auto selectors = screen_selectors(prompt.screen_text, false);
        if (!selectors.empty()) {
            return "[input] [" + selectors[pick % selectors.size()] + "] [value " + std::to_string(pick % 97) + "]";
        }
        return "[back]";
    }
    if (roll < 75) {
        return "[back]";
    }
    if (roll < 95) {
        return "[switch] [user_" + std::to_string(users_[pick % users_.size()].index()) + "]";
    }
    return "[end_task]";
}

} // namespace coplay
