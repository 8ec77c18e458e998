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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Tolerances are exact unless stated on the line.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <tuple>
#include <set>
#include <string>
#include <vector>

#include "coplay/error.hpp"
#include "coplay/eval.hpp"
#include "coplay/runner.hpp"
#include "coplay/scenarios.hpp"
#include "coplay/task_model.hpp"
#include "coplay/trace_io.hpp"
#include "support.hpp"

using namespace coplay;
using coplay::testing::Gen;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

// Exhaustive oracle: longest subsequence of `a` that occurs in `b`.
int brute_force_lcs(const std::vector<std::string>& a, const std::vector<std::string>& b)
{
    int best = 0;
    const auto n = a.size();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::size_t j = 0;
        int len = 0;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            if ((mask & (1u << i)) == 0) {
                continue;
            }
            while (j < b.size() && b[j] != a[i]) {
                ++j;
            }
            if (j == b.size()) {
                ok = false;
            } else {
                ++j;
                ++len;
            }
        }
        if (ok) {
            best = std::max(best, len);
        }
    }
    return best;
}

Outcome oracle_suite()
{
    const auto start = std::chrono::steady_clock::now();
    const auto& scenarios = builtin_scenarios();
    std::vector<RunTrace> runs;
    std::map<std::string, GroundTruthTrace> truths;
    std::set<std::string> archetypes;
    for (const auto& s : scenarios) {
        runs.push_back(coplay::testing::run_scenario(s).trace);
        truths.emplace(s.id, s.ground_truth());
        archetypes.insert(s.archetype);
    }
    const auto report = suite_report(runs, truths);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool all_exact = true;
    std::string worst;
    for (const auto& t : report.tasks) {
        if (t.similarity.score != 1.0) {
            all_exact = false;
            worst += " " + t.task_id + "=" + std::to_string(t.similarity.score) + "(" + t.verdict + ")";
        }
    }
    const bool pass = scenarios.size() == 12 && archetypes.size() == 6 && report.success_rate == 1.0 && all_exact &&
                      seconds < 10.0;
    char buf[256];
    std::snprintf(buf, sizeof buf, "tasks=%zu archetypes=%zu success_rate=%.3f mean_similarity=%.3f runtime=%.3fs",
                  scenarios.size(), archetypes.size(), report.success_rate, report.mean_similarity, seconds);
    return {pass, buf + worst};
}

Outcome lcs_equivalence()
{
    Gen gen(20240611);
    const std::vector<std::string> alphabet = {"[tap] [a]", "[tap] [b]", "[back]", "[switch] [user_2]"};
    int pairs = 0;
    int mismatches = 0;
    for (; pairs < 500; ++pairs) {
        std::vector<std::string> a(static_cast<std::size_t>(gen.range(0, 10)));
        std::vector<std::string> b(static_cast<std::size_t>(gen.range(0, 10)));
        for (auto& x : a) {
            x = gen.pick(alphabet);
        }
        for (auto& x : b) {
            x = gen.pick(alphabet);
        }
        const int oracle = brute_force_lcs(a, b);
        const int total = static_cast<int>(a.size() + b.size());
        const double oracle_score = total == 0 ? 1.0 : 2.0 * oracle / total;
        const auto dp = action_similarity(a, b);
        if (dp.lcs_length != oracle || dp.total_length != total || dp.score != oracle_score) {
            ++mismatches;
        }
    }
    const std::vector<std::string> inferred = {"a", "b", "c", "d"};
    const std::vector<std::string> truth = {"a", "c", "d", "e"};
    const auto worked = action_similarity(inferred, truth);
    const bool pass = mismatches == 0 && pairs >= 200 && worked.score == 0.75 && worked.lcs_length == 3 &&
                      worked.total_length == 8;
    return {pass, "pairs=" + std::to_string(pairs) + " mismatches=" + std::to_string(mismatches) +
                      " worked_example=" + std::to_string(worked.score)};
}

using Fingerprint = std::tuple<std::string, std::string, std::string, std::string, bool>;

Fingerprint fingerprint(const ViewNode& n)
{
    return {n.class_name, n.resource_id.value_or(""), n.text.value_or(""), n.content_desc.value_or(""), n.clickable};
}

void content_multiset(const ViewNode& n, std::multiset<Fingerprint>& out)
{
    if (n.clickable || n.text || n.content_desc) {
        out.insert(fingerprint(n));
    }
    for (const auto& c : n.children) {
        content_multiset(c, out);
    }
}

void selectors_of(const ViewNode& n, std::vector<std::string>& out)
{
    if (n.resource_id) {
        out.push_back(n.short_resource_id());
    }
    if (n.text) {
        out.push_back(*n.text);
    }
    if (n.content_desc) {
        out.push_back(*n.content_desc);
    }
    for (const auto& c : n.children) {
        selectors_of(c, out);
    }
}

bool has_bare_single_child(const ViewNode& n)
{
    if (is_bare(n) && n.children.size() == 1) {
        return true;
    }
    return std::any_of(n.children.begin(), n.children.end(), has_bare_single_child);
}

std::string resolve_key(const ViewNode& root, const std::string& selector)
{
    try {
        ViewNode found = resolve_target(root, ElementRef(selector));
        found.children.clear();
        found.raw_attributes.clear();
        return "found:" + serialize_for_prompt(found);
    } catch (const Error& e) {
        return std::string("error:") + std::string(to_string(e.code()));
    }
}

Outcome simplification_properties()
{
    Gen gen(77);
    int corpus = 0;
    int failures = 0;
    int reductions_checked = 0;
    std::string first_failure;
    const auto check = [&](const ViewNode& raw, const std::string& name) {
        ++corpus;
        const auto filtered = filter_attributes(raw);
        const auto once = simplify(raw);
        const auto twice = simplify(once);
        std::multiset<Fingerprint> before;
        std::multiset<Fingerprint> after;
        content_multiset(filtered, before);
        content_multiset(once, after);
        std::vector<std::string> selectors;
        selectors_of(filtered, selectors);
        bool reachable = true;
        for (const auto& s : selectors) {
            if (s.find_first_of("[]") != std::string::npos || s.find_first_not_of(" ") == std::string::npos) {
                continue;
            }
            reachable = reachable && resolve_key(filtered, s) == resolve_key(once, s);
        }
        bool reduced = true;
        if (has_bare_single_child(filtered)) {
            ++reductions_checked;
            reduced = serialize_for_prompt(once).size() < serialize_for_prompt(filtered).size();
        }
        const bool ok = twice == once && before == after && reachable && reduced;
        if (!ok) {
            ++failures;
            if (first_failure.empty()) {
                first_failure = " first_failure=" + name;
            }
        }
    };
    for (int i = 0; i < 200; ++i) {
        check(coplay::testing::random_hierarchy(gen), "generated-" + std::to_string(i));
    }
    // Screens of the sim apps along every scenario's oracle flow.
    for (const auto& s : builtin_scenarios()) {
        const auto task = segment(s.task_text);
        auto world = World::create(s.app_id, coplay::testing::desk_devices(static_cast<int>(task.users.size())));
        for (const auto& [user, script] : s.truth) {
            (void)script;
            check(world.project_screen(world.device_of(user)).root, s.id + "-initial");
        }
    }
    const bool pass = corpus >= 50 && failures == 0 && reductions_checked > 0;
    return {pass, "hierarchies=" + std::to_string(corpus) + " with_single_child_bare=" +
                      std::to_string(reductions_checked) + " failures=" + std::to_string(failures) + first_failure};
}

Outcome action_grammar()
{
    Gen gen(4242);
    const std::string chars = "abcdefghijklmnopqrstuvwxyz0123456789-_ +.:";
    const std::string value_chars = "abcXYZ 019!?,.-_@#";
    const auto random_text = [&](const std::string& pool, int min_len) {
        std::string s;
        const int len = gen.range(min_len, 12);
        for (int i = 0; i < len; ++i) {
            s.push_back(pool[static_cast<std::size_t>(gen.range(0, static_cast<int>(pool.size()) - 1))]);
        }
        return s;
    };
    const auto random_selector = [&] {
        std::string s;
        while (s.find_first_not_of(' ') == std::string::npos) {
            s = random_text(chars, 1);
        }
        return s;
    };
    int trials = 0;
    int failures = 0;
    std::set<int> variants;
    for (; trials < 1000; ++trials) {
        AgentAction a = action::Back{};
        const int v = gen.range(0, 4);
        variants.insert(v);
        switch (v) {
        case 0: a = make_tap(random_selector()); break;
        case 1: {
            std::string value;
            while (value.find_first_not_of(' ') == std::string::npos) {
                value = random_text(value_chars, 1);
            }
            a = make_input(random_selector(), value);
            break;
        }
        case 2: a = action::Back{}; break;
        case 3:
            a = gen.chance(0.2) ? action::SwitchUser{std::nullopt} : action::SwitchUser{UserId{gen.range(1, 9)}};
            break;
        default: a = action::EndTask{}; break;
        }
        try {
            if (parse_action(render_action(a)) != a) {
                ++failures;
            }
        } catch (const Error&) {
            ++failures;
        }
    }
    bool literals = true;
    try {
        literals = literals && std::holds_alternative<action::Tap>(parse_action("[tap] [voice-call]"));
        literals = literals && std::holds_alternative<action::Input>(parse_action("[input] [element] [value]"));
        literals = literals && std::holds_alternative<action::SwitchUser>(parse_action("[switch] [user]"));
        literals = literals && std::holds_alternative<action::EndTask>(parse_action("[end_task]"));
    } catch (const Error&) {
        literals = false;
    }
    const bool pass = failures == 0 && variants.size() == 5 && literals;
    return {pass, "round_trips=" + std::to_string(trials) + " failures=" + std::to_string(failures) +
                      " literals=" + (literals ? "ok" : "rejected")};
}

Outcome turn_taking()
{
    const auto& scenarios = builtin_scenarios();
    int runs = 0;
    int violations = 0;
    std::size_t entries = 0;
    std::size_t handoffs = 0;
    std::string first;
    for (int i = 0; i < 100; ++i) {
        const auto& s = scenarios[static_cast<std::size_t>(i) % scenarios.size()];
        const auto task = segment(s.task_text);
        OrchestratorConfig config;
        config.seed = static_cast<std::uint64_t>(i) + 1;
        const auto users = task.users;
        const auto providers = [users](const AgentSetup& setup) -> std::unique_ptr<CompletionProvider> {
            return std::make_unique<RandomProvider>(users, setup.seed);
        };
        auto farm = DeviceFarm::desk_default();
        const auto trace = run_task(s.id, task, s.app_id, farm, providers, config);
        ++runs;
        const auto& log = trace.interleaved_log;
        entries += log.size();
        const auto global_budget = static_cast<std::size_t>(config.agent.step_budget) * users.size();
        bool ok = !log.empty() && log.front().user == task.initiator && task.initiator == UserId{1} &&
                  log.size() <= global_budget;
        UserId holder = task.initiator; // UserId{0} once nobody is live
        std::map<UserId, bool> live;
        for (auto u : users) {
            live[u] = true;
        }
        for (std::size_t k = 0; k < log.size() && ok; ++k) {
            const auto& e = log[k];
            ok = ok && (k == 0 || e.turn_index > log[k - 1].turn_index);
            ok = ok && e.user == holder && live[e.user];
            if (k > 0 && e.user != log[k - 1].user) {
                ++handoffs;
                ok = ok && (log[k - 1].outcome == kOutcomeSwitched || log[k - 1].outcome == kOutcomeEnded);
            }
            if (e.outcome == kOutcomeSwitched) {
                // detail: "control passes to User_N"
                holder = UserId{std::stoi(e.detail.substr(e.detail.rfind('_') + 1))};
            } else if (e.outcome == kOutcomeEnded) {
                live[e.user] = false;
                holder = UserId{0};
                for (int step = 1; step <= static_cast<int>(users.size()); ++step) {
                    const int idx = (e.user.index() - 1 + step) % static_cast<int>(users.size()) + 1;
                    if (live[UserId{idx}]) {
                        holder = UserId{idx};
                        break;
                    }
                }
            }
        }
        if (!ok) {
            ++violations;
            if (first.empty()) {
                first = " first_violation=run" + std::to_string(i);
            }
        }
    }
    return {violations == 0 && runs == 100,
            "runs=" + std::to_string(runs) + " seeds=1..100 log_entries=" + std::to_string(entries) +
                " handoffs=" + std::to_string(handoffs) + " violations=" + std::to_string(violations) + first};
}

Outcome timing_failure()
{
    const auto* s = find_scenario("voice-call-accept");
    OrchestratorConfig normal;
    const auto ok_run = coplay::testing::run_scenario(*s, normal).trace;
    OrchestratorConfig slow;
    slow.clock_delta = SimDuration{120000};
    const auto slow_a = coplay::testing::run_scenario(*s, slow).trace;
    const auto slow_b = coplay::testing::run_scenario(*s, slow).trace;
    const bool pass = ok_run.verdict.success && !slow_a.verdict.success &&
                      slow_a.verdict.kind == FailureKind::TimingExpired && trace_to_json(slow_a) == trace_to_json(slow_b);
    return {pass, "default_delta=" + ok_run.verdict.label() + " inflated_delta(120000ms)=" + slow_a.verdict.label() +
                      " deterministic=" + (trace_to_json(slow_a) == trace_to_json(slow_b) ? "yes" : "no")};
}

Outcome crash_pipeline()
{
    const auto* s = find_scenario("voice-call-accept");
    OrchestratorConfig config;
    config.world.faults = FaultTable::from_json_text(
        R"({"faults": [{"app": "voice-call", "state": "ringing", "action": "[tap] [accept]"}]})");
    std::vector<RunTrace> runs;
    bool all_crash = true;
    for (int i = 0; i < 5; ++i) {
        config.seed = static_cast<std::uint64_t>(i);
        runs.push_back(coplay::testing::run_scenario(*s, config).trace);
        all_crash = all_crash && runs.back().verdict.kind == FailureKind::CrashDetected;
    }
    const auto scan = scan_bugs(runs);
    const bool pass = all_crash && scan.crashes.size() == 1 && scan.crashes.front().count == 5;
    return {pass, "runs=5 crash_verdicts=" + std::string(all_crash ? "5" : "<5") +
                      " findings=" + std::to_string(scan.crashes.size()) +
                      (scan.crashes.empty() ? "" : " count=" + std::to_string(scan.crashes.front().count) + " signature=(" +
                                                       scan.crashes.front().app_id + ", " + scan.crashes.front().state +
                                                       ", " + scan.crashes.front().action + ")")};
}

Outcome noisy_provider()
{
    const std::vector<double> rates = {0.0, 0.2, 0.5};
    std::vector<double> success;
    std::vector<double> similarity;
    for (double p : rates) {
        std::vector<RunTrace> runs;
        std::map<std::string, GroundTruthTrace> truths;
        for (const auto& s : builtin_scenarios()) {
            const auto scripts = s.truth;
            const auto providers = [scripts, p](const AgentSetup& setup) -> std::unique_ptr<CompletionProvider> {
                const auto it = scripts.find(setup.user);
                auto oracle = std::make_unique<ScriptedOracleProvider>(it == scripts.end() ? std::vector<std::string>{}
                                                                                         : it->second);
                return std::make_unique<NoisyProvider>(std::move(oracle), p, setup.seed);
            };
            OrchestratorConfig config;
            config.seed = 7;
            runs.push_back(coplay::testing::run_scenario(s, config, providers).trace);
            truths.emplace(s.id, s.ground_truth());
        }
        const auto report = suite_report(runs, truths);
        success.push_back(report.success_rate);
        similarity.push_back(report.mean_similarity);
    }
    const bool pass = success[0] >= success[1] && success[1] >= success[2] && similarity[0] == 1.0;
    char buf[256];
    std::snprintf(buf, sizeof buf, "success_rate p0=%.3f p0.2=%.3f p0.5=%.3f mean_similarity p0=%.3f p0.2=%.3f p0.5=%.3f",
                  success[0], success[1], success[2], similarity[0], similarity[1], similarity[2]);
    return {pass, buf};
}

Outcome reproducibility()
{
    const auto suite = coplay::testing::temp_dir("repro-suite");
    export_builtin_suite(suite.string());
    int files = 0;
    int differing = 0;
    for (const auto kind : {ProviderKind::ScriptedOracle, ProviderKind::Random}) {
        std::vector<std::vector<std::string>> contents;
        for (int round = 0; round < 2; ++round) {
            RunConfig config;
            config.provider = kind;
            config.seed = 99;
            config.truth_dir = (suite / "truth").string();
            config.output_dir = coplay::testing::temp_dir("repro-out").string();
            const auto summary = cmd_run((suite / "suite.tasks").string(), "auto", config);
            std::vector<std::string> texts;
            for (const auto& f : summary.trace_files) {
                texts.push_back(read_text_file(f));
            }
            contents.push_back(std::move(texts));
        }
        files += static_cast<int>(contents[0].size());
        if (contents[0].size() != contents[1].size()) {
            ++differing;
            continue;
        }
        for (std::size_t i = 0; i < contents[0].size(); ++i) {
            differing += contents[0][i] == contents[1][i] ? 0 : 1;
        }
    }
    return {differing == 0 && files == 24,
            "trace_files=" + std::to_string(files) + " differing=" + std::to_string(differing) +
                " providers=scripted-oracle,random"};
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"oracle end-to-end suite", oracle_suite},
        {"LCS oracle equivalence", lcs_equivalence},
        {"simplification properties", simplification_properties},
        {"action grammar", action_grammar},
        {"turn-taking safety and initiation", turn_taking},
        {"timing failure class", timing_failure},
        {"crash pipeline", crash_pipeline},
        {"noisy-provider sanity", noisy_provider},
        {"reproducibility", reproducibility},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome outcome;
        try {
            outcome = criteria[i].second();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        failed += outcome.pass ? 0 : 1;
        std::printf("%s [%zu] %s: %s\n", outcome.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    outcome.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
    return failed == 0 ? 0 : 1;
}
