#pragma once

// Analysis report: one topology run through all three decision routes, with
// cross-route agreement and a stable JSON rendering (schema
// "netctrl-report/1"). Timings can be dropped for byte-deterministic output.

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "netctrl/oracle.hpp"
#include "netctrl/structural.hpp"
#include "netctrl/topology.hpp"

namespace netctrl {

struct AnalysisOptions {
    int rank_cap = 20;
    int oracle_trials = 5;
    std::uint64_t seed = 0;
    bool include_timings = true;
};

struct AnalysisReport {
    CommunicationTopology topology;
    ComponentPartition components;
    TheoremDecision theorem;
    std::optional<CertificateDecision> certificate;  // absent when sigma > rank_cap
    std::optional<OracleResult> oracle;              // absent when trials == 0
    AnalysisOptions options;
    bool agreement = true;
    std::map<std::string, double> timings_ms;
};

/// Runs the theorem route always, the certificate route when sigma fits under
/// the rank cap, and the oracle when trials > 0. agreement holds when every
/// route that reached a definite verdict says the same thing.
inline AnalysisReport run_analysis(const CommunicationTopology& topo, const AnalysisOptions& options = {}) {
    using clock = std::chrono::steady_clock;
    auto ms_since = [](clock::time_point start) {
        return std::chrono::duration<double, std::milli>(clock::now() - start).count();
    };

    AnalysisReport report;
    report.topology = topo;
    report.options = options;

    auto t0 = clock::now();
    report.theorem = theorem_decision(topo);
    report.components = report.theorem.components;
    report.timings_ms["theorem"] = ms_since(t0);

    const LinearParameterization param = build_parameterization(topo);
    if (topo.sigma() <= options.rank_cap) {
        t0 = clock::now();
        report.certificate = certificate_decision(param, options.rank_cap);
        report.timings_ms["certificate"] = ms_since(t0);
    }
    if (options.oracle_trials > 0) {
        t0 = clock::now();
        OracleConfig config;
        config.trials = options.oracle_trials;
        config.seed = options.seed;
        report.oracle = oracle_decide(topo, config);
        report.timings_ms["oracle"] = ms_since(t0);
    }

    std::vector<bool> verdicts;
    verdicts.push_back(report.theorem.decision == Decision::StructurallyControllable);
    if (report.certificate && report.certificate->decision != Decision::Inconclusive)
        verdicts.push_back(report.certificate->decision == Decision::StructurallyControllable);
    if (report.oracle) verdicts.push_back(report.oracle->controllable);
    report.agreement =
        std::all_of(verdicts.begin(), verdicts.end(), [&](bool v) { return v == verdicts.front(); });
    return report;
}

inline std::string decision_name(Decision d) {
    switch (d) {
        case Decision::StructurallyControllable: return "structurally_controllable";
        case Decision::NotStructurallyControllable: return "not_structurally_controllable";
        case Decision::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

inline nlohmann::ordered_json to_json(const AnalysisReport& report) {
    nlohmann::ordered_json j;
    j["schema"] = "netctrl-report/1";

    auto& topology = j["topology"];
    topology["nodes"] = report.topology.node_count;
    topology["leaders"] = report.topology.leaders;
    topology["followers"] = report.topology.follower_count();
    topology["sigma"] = report.topology.sigma();
    topology["components"] = report.components.components;

    j["theorem"]["decision"] = decision_name(report.theorem.decision);

    auto& certificate = j["certificate"];
    if (report.certificate) {
        const CertificateDecision& c = *report.certificate;
        certificate["status"] = "computed";
        certificate["decision"] = decision_name(c.decision);
        certificate["min_rank"]["value"] = c.min_rank.value;
        certificate["min_rank"]["witness"] = c.min_rank.witness;
        certificate["min_rank"]["exhaustive"] = c.min_rank.exhaustive;
        certificate["transfer_tree"]["spanning"] = c.transfer_tree.spanning;
        certificate["transfer_tree"]["parent"] =
            std::vector<int>(c.transfer_tree.parent.begin() + 1, c.transfer_tree.parent.end());
        certificate["transfer_tree"]["unreachable"] = c.transfer_tree.unreachable;
    } else {
        certificate["status"] = "inconclusive";
        certificate["decision"] = decision_name(Decision::Inconclusive);
        certificate["sigma"] = report.topology.sigma();
        certificate["rank_cap"] = report.options.rank_cap;
    }

    auto& oracle = j["oracle"];
    if (report.oracle) {
        const OracleResult& o = *report.oracle;
        oracle["status"] = "computed";
        oracle["controllable"] = o.controllable;
        oracle["trials_run"] = o.trials_run;
        oracle["rank_achieved"] = o.rank_achieved;
        if (o.witness) {
            std::vector<std::string> weights;
            for (const auto& w : o.witness->values) weights.push_back(w.str());
            oracle["witness"] = weights;
        } else {
            oracle["witness"] = nullptr;
        }
    } else {
        oracle["status"] = "skipped";
    }

    j["agreement"] = report.agreement;
    if (report.options.include_timings) j["timings_ms"] = report.timings_ms;
    return j;
}

}  // namespace netctrl
