#pragma once

// Consensus network dynamics: fixed-step RK4 simulation of the aggregated
// model (followers run the consensus law, leaders integrate an external
// velocity command) and minimum-energy steering of the follower subsystem
//
//   x_F' = A x_F + B u,   A = -L_ff,   u = leader positions,
//
// where the open-loop input comes from the controllability Gramian of the
// zero-order-hold discretization on the integration grid. Everything here is
// demonstrative floating point; rank verdicts live in the exact routes.

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "netctrl/parameterization.hpp"
#include "netctrl/topology.hpp"

namespace netctrl {

struct Trajectory {
    std::vector<double> times;             // strictly increasing, starts at 0
    std::vector<Eigen::VectorXd> states;   // one state per time, constant dimension
};

/// Piecewise-constant vector signal on a uniform grid: samples[k] holds on
/// [k dt, (k+1) dt); lookups past the horizon return the last sample.
struct ControlSignal {
    double dt = 0;
    std::vector<Eigen::VectorXd> samples;

    int steps() const { return static_cast<int>(samples.size()); }
    double horizon() const { return dt * steps(); }

    const Eigen::VectorXd& at(double t) const {
        if (samples.empty()) throw std::logic_error("empty control signal");
        const int k = std::clamp(static_cast<int>(std::floor(t / dt)), 0, steps() - 1);
        return samples[static_cast<std::size_t>(k)];
    }
};

struct SteeringPlan {
    double horizon = 0;        // t_f
    ControlSignal control;     // leader command on the uniform grid over [0, t_f]
    Eigen::VectorXd target;    // desired follower state x_f
    double predicted_error = 0;  // replay miss ||x(t_f) - x_f||_2
};

struct SteeringInfeasible {
    int gramian_rank = 0;  // deficient rank found
    int dimension = 0;     // follower count n

    bool operator==(const SteeringInfeasible&) const = default;
};

using SteeringOutcome = std::variant<SteeringPlan, SteeringInfeasible>;

using LeaderSignal = std::function<Eigen::VectorXd(double)>;

inline LeaderSignal zero_signal(int dimension) {
    return [dimension](double) { return Eigen::VectorXd::Zero(dimension).eval(); };
}

namespace detail {

inline void check_weights(const CommunicationTopology& topo, const WeightAssignment& w) {
    if (w.size() != topo.sigma())
        throw std::invalid_argument("weight count does not match edge count");
    for (const auto& v : w.values)
        if (v <= 0) throw std::invalid_argument("simulation weights must be strictly positive");
}

/// Number of uniform steps covering [0, t_f] with step <= dt (up to rounding).
inline int step_count(double t_f, double dt) {
    if (!(dt > 0) || !(t_f >= dt))
        throw std::invalid_argument("need dt > 0 and t_f >= dt");
    return std::max(1, static_cast<int>(std::ceil(t_f / dt - 1e-9)));
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace detail

/// N x N matrix of the aggregated model: consensus rows for followers, zero
/// rows for leaders (their motion comes from the external command).
inline Eigen::MatrixXd aggregated_matrix(const CommunicationTopology& topo, const WeightAssignment& w) {
    detail::check_weights(topo, w);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(topo.node_count, topo.node_count);
    for (int k = 0; k < topo.sigma(); ++k) {
        const auto [a, b] = topo.edges[static_cast<std::size_t>(k)];
        const double wk = detail::to_double(w.values[static_cast<std::size_t>(k)]);
        if (!topo.is_leader(a)) {
            m(a - 1, b - 1) += wk;
            m(a - 1, a - 1) -= wk;
        }
        if (!topo.is_leader(b)) {
            m(b - 1, a - 1) += wk;
            m(b - 1, b - 1) -= wk;
        }
    }
    return m;
}

/// N x l selector feeding the external command into the leader rows,
/// leaders in ascending id order.
inline Eigen::MatrixXd leader_selector(const CommunicationTopology& topo) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(topo.node_count, topo.leader_count());
    for (int j = 0; j < topo.leader_count(); ++j) s(topo.leaders[static_cast<std::size_t>(j)] - 1, j) = 1.0;
    return s;
}

/// Follower subsystem pair (A, B) in double precision, follower columns in
/// ascending node-id order; agrees with assemble_matrices entrywise.
inline std::pair<Eigen::MatrixXd, Eigen::MatrixXd> follower_system(const CommunicationTopology& topo,
                                                                    const WeightAssignment& w) {
    detail::check_weights(topo, w);
    const LinearParameterization param = build_parameterization(topo);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(param.n, param.n);
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(param.n, param.m);
    for (int k = 0; k < topo.sigma(); ++k) {
        const auto [x, y] = topo.edges[static_cast<std::size_t>(k)];
        const double wk = detail::to_double(w.values[static_cast<std::size_t>(k)]);
        for (const auto& [v, other] : {std::pair{x, y}, std::pair{y, x}}) {
            const int i = param.follower_column(v);
            if (i == 0) continue;
            a(i - 1, i - 1) -= wk;
            if (const int j = param.follower_column(other); j != 0) {
                a(i - 1, j - 1) += wk;
            } else {
                b(i - 1, param.leader_column(other) - 1) += wk;
            }
        }
    }
    return {std::move(a), std::move(b)};
}

namespace detail {

template <typename Input>
Trajectory integrate_rk4(const Eigen::MatrixXd& m, const Eigen::MatrixXd& s, Eigen::VectorXd x,
                         const Input& input, int steps, double h) {
    Trajectory traj;
    traj.times.reserve(static_cast<std::size_t>(steps) + 1);
    traj.states.reserve(static_cast<std::size_t>(steps) + 1);
    traj.times.push_back(0.0);
    traj.states.push_back(x);
    for (int k = 0; k < steps; ++k) {
        const double t = h * k;
        const Eigen::VectorXd u0 = input(k, t);
        const Eigen::VectorXd u1 = input(k, t + h / 2);
        const Eigen::VectorXd u2 = input(k, t + h);
        const Eigen::VectorXd k1 = m * x + s * u0;
        const Eigen::VectorXd k2 = m * (x + h / 2 * k1) + s * u1;
        const Eigen::VectorXd k3 = m * (x + h / 2 * k2) + s * u1;
        const Eigen::VectorXd k4 = m * (x + h * k3) + s * u2;
        x += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
        if (!x.allFinite())
            throw std::runtime_error("state became non-finite at t = " + std::to_string(t + h));
        traj.times.push_back(h * (k + 1));
        traj.states.push_back(x);
    }
    return traj;
}

}  // namespace detail

/// Integrates the aggregated model over [0, t_f] with fixed-step RK4. The
/// requested dt is rounded down to the nearest uniform grid covering t_f,
/// never coarsened. u_star supplies the leaders' velocity command.
inline Trajectory simulate(const CommunicationTopology& topo, const WeightAssignment& w,
                           const LeaderSignal& u_star, const Eigen::VectorXd& x0, double t_f, double dt) {
    if (x0.size() != topo.node_count)
        throw std::invalid_argument("initial state dimension does not match node count");
    const int steps = detail::step_count(t_f, dt);
    const double h = t_f / steps;
    const Eigen::MatrixXd m = aggregated_matrix(topo, w);
    const Eigen::MatrixXd s = leader_selector(topo);
    return detail::integrate_rk4(m, s, x0, [&](int, double t) { return u_star(t); }, steps, h);
}

/// Aggregated simulation with stationary leaders (u_star = 0).
inline Trajectory simulate(const CommunicationTopology& topo, const WeightAssignment& w,
                           const Eigen::VectorXd& x0, double t_f, double dt) {
    return simulate(topo, w, zero_signal(topo.leader_count()), x0, t_f, dt);
}

/// Replays the follower subsystem x' = A x + B u under a piecewise-constant
/// input, holding each sample across the whole RK4 step so the integration
/// grid and the control grid coincide.
inline Trajectory simulate_followers(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                     const Eigen::VectorXd& x0, const ControlSignal& u) {
    if (u.samples.empty()) throw std::invalid_argument("empty control signal");
    return detail::integrate_rk4(
        a, b, x0, [&](int k, double) -> const Eigen::VectorXd& { return u.samples[static_cast<std::size_t>(k)]; },
        u.steps(), u.dt);
}

/// Minimum-energy steering of the followers from x0 to x_f over [0, t_f]:
/// discretize (A, B) by zero-order hold on the grid, invert the discrete
/// controllability Gramian W = sum A_d^j B_d B_d' A_d'^j, and read off the
/// classical input u_k = B_d' (A_d')^{K-1-k} W^{-1} (x_f - A_d^K x0).
/// A singular Gramian (eigenvalues at or below the relative tolerance
/// n * 1e-12 of the largest) reports SteeringInfeasible with its rank.
inline SteeringOutcome steer(const CommunicationTopology& topo, const WeightAssignment& w,
                             const Eigen::VectorXd& x0_followers, const Eigen::VectorXd& x_f,
                             double t_f, double dt) {
    const int n = topo.follower_count();
    const int l = topo.leader_count();
    if (x0_followers.size() != n || x_f.size() != n)
        throw std::invalid_argument("steering states must have follower dimension");
    const int steps = detail::step_count(t_f, dt);
    const double h = t_f / steps;
    const auto [a, b] = follower_system(topo, w);

    Eigen::MatrixXd augmented = Eigen::MatrixXd::Zero(n + l, n + l);
    augmented.topLeftCorner(n, n) = a * h;
    augmented.topRightCorner(n, l) = b * h;
    const Eigen::MatrixXd phi = augmented.exp();
    const Eigen::MatrixXd ad = phi.topLeftCorner(n, n);
    const Eigen::MatrixXd bd = phi.topRightCorner(n, l);

    Eigen::MatrixXd gramian = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd reach = bd;  // A_d^j B_d
    Eigen::MatrixXd ad_pow = Eigen::MatrixXd::Identity(n, n);
    for (int j = 0; j < steps; ++j) {
        gramian += reach * reach.transpose();
        reach = ad * reach;
        ad_pow = ad * ad_pow;
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigen(gramian);
    const Eigen::VectorXd lambda = eigen.eigenvalues();
    const double lambda_max = lambda.size() > 0 ? lambda.maxCoeff() : 0.0;
    const double tol = lambda_max * 1e-12 * n;
    int rank = 0;
    for (int i = 0; i < lambda.size(); ++i)
        if (lambda(i) > tol && lambda(i) > 0) ++rank;
    if (rank < n) return SteeringInfeasible{rank, n};

    const Eigen::VectorXd defect = x_f - ad_pow * x0_followers;
    const Eigen::VectorXd eta =
        eigen.eigenvectors() * lambda.cwiseInverse().asDiagonal() * eigen.eigenvectors().transpose() * defect;

    SteeringPlan plan;
    plan.horizon = t_f;
    plan.target = x_f;
    plan.control.dt = h;
    plan.control.samples.assign(static_cast<std::size_t>(steps), Eigen::VectorXd::Zero(l));
    Eigen::VectorXd back = eta;  // (A_d')^j eta
    for (int k = steps - 1; k >= 0; --k) {
        plan.control.samples[static_cast<std::size_t>(k)] = bd.transpose() * back;
        back = ad.transpose() * back;
    }

    const Trajectory replay = simulate_followers(a, b, x0_followers, plan.control);
    plan.predicted_error = (replay.states.back() - x_f).norm();
    return plan;
}

/// CSV with header "t,x1,...,xN", one row per step, full-precision floats.
inline std::string to_csv(const Trajectory& traj) {
    std::ostringstream out;
    out.precision(17);
    out << "t";
    const int dim = traj.states.empty() ? 0 : static_cast<int>(traj.states.front().size());
    for (int i = 1; i <= dim; ++i) out << ",x" << i;
    out << "\n";
    for (std::size_t row = 0; row < traj.times.size(); ++row) {
        out << traj.times[row];
        for (int i = 0; i < dim; ++i) out << "," << traj.states[row](i);
        out << "\n";
    }
    return out.str();
}

/// CSV with header "t,u1,...,ul", one row per control sample.
inline std::string to_csv(const SteeringPlan& plan) {
    std::ostringstream out;
    out.precision(17);
    out << "t";
    const int dim = plan.control.samples.empty() ? 0 : static_cast<int>(plan.control.samples.front().size());
    for (int i = 1; i <= dim; ++i) out << ",u" << i;
    out << "\n";
    for (int k = 0; k < plan.control.steps(); ++k) {
        out << k * plan.control.dt;
        for (int i = 0; i < dim; ++i) out << "," << plan.control.samples[static_cast<std::size_t>(k)](i);
        out << "\n";
    }
    return out.str();
}

}  // namespace netctrl
