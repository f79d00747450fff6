#pragma once

// Command-line front end. run_cli is the whole program as a function of
// (args, out, err), so tests drive it in-process.
//
// Exit codes: 0 success/agreement, 1 input error, 2 steering infeasible,
// 3 cross-route disagreement.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "netctrl/dot.hpp"
#include "netctrl/dynamics.hpp"
#include "netctrl/report.hpp"

namespace netctrl {

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open input file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_output(const std::string& path, const std::string& content, std::ostream& fallback) {
    if (path.empty()) {
        fallback << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file '" + path + "'");
    out << content;
}

inline std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) out.push_back(item);
    if (!text.empty() && text.back() == sep) out.push_back("");
    return out;
}

/// Parses "3", "-2", "0.5" or "2/3" into an exact rational.
inline Rational parse_rational(const std::string& token) {
    const auto fail = [&] { throw std::invalid_argument("cannot parse number '" + token + "'"); };
    if (token.empty()) fail();
    if (auto slash = token.find('/'); slash != std::string::npos) {
        const std::string num = token.substr(0, slash);
        const std::string den = token.substr(slash + 1);
        if (num.empty() || den.empty()) fail();
        try {
            const Rational d{BigInt(den)};
            if (d == 0) throw std::invalid_argument("zero denominator in '" + token + "'");
            return Rational(BigInt(num)) / d;
        } catch (const std::runtime_error&) {
            fail();
        }
    }
    std::string digits = token;
    BigInt scale = 1;
    if (auto dot = token.find('.'); dot != std::string::npos) {
        const std::string frac = token.substr(dot + 1);
        digits = token.substr(0, dot) + frac;
        if (digits.empty() || digits == "-" || digits == "+") fail();
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    }
    try {
        return Rational(BigInt(digits)) / Rational(scale);
    } catch (const std::runtime_error&) {
        fail();
    }
    return {};
}

inline std::vector<double> parse_double_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    for (const std::string& token : split(text, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(token, &used));
            if (used != token.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
            throw std::invalid_argument("cannot parse " + what + " entry '" + token + "'");
        }
    }
    return out;
}

/// Either an explicit comma list of exact numbers or "random:<seed>", which
/// draws integer weights in [1, 10].
inline WeightAssignment parse_weights(const std::string& text, int sigma) {
    constexpr const char* prefix = "random:";
    if (text.rfind(prefix, 0) == 0) {
        OracleConfig config;
        config.min_weight = 1;
        config.max_weight = 10;
        try {
            config.seed = std::stoull(text.substr(std::string(prefix).size()));
        } catch (const std::exception&) {
            throw std::invalid_argument("cannot parse seed in '" + text + "'");
        }
        return draw_weights(sigma, config, 1);
    }
    std::vector<Rational> values;
    for (const std::string& token : split(text, ',')) values.push_back(parse_rational(token));
    if (static_cast<int>(values.size()) != sigma)
        throw std::invalid_argument("expected " + std::to_string(sigma) + " weights, got " +
                                    std::to_string(values.size()));
    return WeightAssignment(std::move(values));
}

inline Eigen::VectorXd to_vector(const std::vector<double>& values) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) v(static_cast<Eigen::Index>(i)) = values[i];
    return v;
}

}  // namespace detail

/// Full CLI in library form. args excludes the program name.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"netctrl: structural controllability of leader-follower consensus networks"};
    app.require_subcommand(1);

    std::string input_path;
    std::string out_path;

    auto* analyze = app.add_subcommand("analyze", "Decide structural controllability by all routes");
    AnalysisOptions options;
    bool no_timings = false;
    analyze->add_option("--input", input_path, "topology file")->required();
    analyze->add_option("--rank-cap", options.rank_cap, "largest sigma for the exhaustive certificate");
    analyze->add_option("--oracle-trials", options.oracle_trials, "random weight trials (0 disables)");
    analyze->add_option("--seed", options.seed, "oracle seed");
    analyze->add_option("--out", out_path, "write the JSON report here instead of stdout");
    analyze->add_flag("--no-timings", no_timings, "omit timings for byte-deterministic output");

    auto* export_cmd = app.add_subcommand("export", "Render a graph view as Graphviz DOT");
    std::string what;
    export_cmd->add_option("--input", input_path, "topology file")->required();
    export_cmd->add_option("--what", what, "topology|flow|transfer|line|quotient")
        ->required()
        ->check(CLI::IsMember({"topology", "flow", "transfer", "line", "quotient"}));
    export_cmd->add_option("--out", out_path, "write DOT here instead of stdout");

    auto* simulate_cmd = app.add_subcommand("simulate", "Integrate the network, optionally steering to a target");
    std::string weights_text;
    std::string x0_text;
    std::string target_text;
    std::string replay_path;
    double t_f = 10.0;
    double dt = 0.0;
    simulate_cmd->add_option("--input", input_path, "topology file")->required();
    simulate_cmd->add_option("--weights", weights_text, "comma list of edge weights, or random:<seed>")->required();
    simulate_cmd->add_option("--x0", x0_text, "comma list, full initial state (one entry per node)")->required();
    simulate_cmd->add_option("--target", target_text, "follower target; switches to steering mode");
    simulate_cmd->add_option("--tf", t_f, "time horizon in seconds");
    simulate_cmd->add_option("--dt", dt, "integration step (default tf/1000)");
    simulate_cmd->add_option("--out", out_path, "write the CSV here instead of stdout");
    simulate_cmd->add_option("--replay-out", replay_path, "also write the steering replay trajectory CSV here");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        const CommunicationTopology topo = parse_topology(detail::read_file(input_path));

        if (*analyze) {
            options.include_timings = !no_timings;
            const AnalysisReport report = run_analysis(topo, options);
            detail::write_output(out_path, to_json(report).dump(2) + "\n", out);
            return report.agreement ? 0 : 3;
        }

        if (*export_cmd) {
            const LinearParameterization param = build_parameterization(topo);
            std::string dot;
            if (what == "topology") {
                dot = dot_topology(topo);
            } else if (what == "flow") {
                dot = dot_flow(flow_graph(param));
            } else if (what == "transfer") {
                dot = dot_transfer(transfer_matrix(param));
            } else if (what == "line") {
                dot = dot_line(line_graph(flow_graph(param)));
            } else {
                dot = dot_quotient(quotient_graph(line_graph(flow_graph(param)), param.sigma()));
            }
            detail::write_output(out_path, dot, out);
            return 0;
        }

        const WeightAssignment w = detail::parse_weights(weights_text, topo.sigma());
        const std::vector<double> x0_list = detail::parse_double_list(x0_text, "--x0");
        if (static_cast<int>(x0_list.size()) != topo.node_count)
            throw std::invalid_argument("--x0 needs " + std::to_string(topo.node_count) + " entries");
        const Eigen::VectorXd x0 = detail::to_vector(x0_list);
        if (dt <= 0) dt = t_f / 1000.0;

        if (target_text.empty()) {
            const Trajectory traj = simulate(topo, w, x0, t_f, dt);
            detail::write_output(out_path, to_csv(traj), out);
            return 0;
        }

        const std::vector<double> target_list = detail::parse_double_list(target_text, "--target");
        const int n = topo.follower_count();
        if (static_cast<int>(target_list.size()) != n)
            throw std::invalid_argument("--target needs " + std::to_string(n) + " entries (followers only)");
        Eigen::VectorXd x0_followers(n);
        const std::vector<int> followers = topo.followers();
        for (int i = 0; i < n; ++i) x0_followers(i) = x0(followers[static_cast<std::size_t>(i)] - 1);

        const SteeringOutcome outcome =
            steer(topo, w, x0_followers, detail::to_vector(target_list), t_f, dt);
        if (const auto* infeasible = std::get_if<SteeringInfeasible>(&outcome)) {
            err << "steering infeasible: Gramian rank " << infeasible->gramian_rank << " of "
                << infeasible->dimension << "\n";
            return 2;
        }
        const SteeringPlan& plan = std::get<SteeringPlan>(outcome);
        detail::write_output(out_path, to_csv(plan), out);
        if (!replay_path.empty()) {
            const auto [a, b] = follower_system(topo, w);
            detail::write_output(replay_path, to_csv(simulate_followers(a, b, x0_followers, plan.control)),
                                 out);
        }
        const double norm = plan.target.norm();
        err << "steering error " << plan.predicted_error << " (relative "
            << (norm > 0 ? plan.predicted_error / norm : plan.predicted_error) << ")\n";
        return 0;
    } catch (const TopologyError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace netctrl
