#pragma once

// Linear parameterization of the follower subsystem: A(w) = sum_k c_k w_k r_k1
// and B(w) = sum_k c_k w_k r_k2, one triple (c_k, r_k1, r_k2) per edge weight.
// The triples capture how a single weight symbol shows up in several entries
// of (A, B) at once, which is what the structural analysis needs.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "netctrl/matrix.hpp"
#include "netctrl/topology.hpp"

namespace netctrl {

struct ParameterTriple {
    std::vector<int> c;   // column pattern, length n
    std::vector<int> r1;  // row pattern over followers, length n
    std::vector<int> r2;  // row pattern over leaders, length m

    bool operator==(const ParameterTriple&) const = default;

    bool has_input() const {
        return std::any_of(r2.begin(), r2.end(), [](int v) { return v != 0; });
    }
};

struct LinearParameterization {
    int n = 0;  // follower count
    int m = 0;  // leader count
    std::vector<ParameterTriple> triples;
    std::vector<int> follower_ids;  // column -> node id, ascending
    std::vector<int> leader_ids;    // column -> node id, ascending

    bool operator==(const LinearParameterization&) const = default;

    int sigma() const { return static_cast<int>(triples.size()); }

    /// 1-based follower column of a node id, or 0 when the node is no follower.
    int follower_column(int node_id) const {
        auto it = std::lower_bound(follower_ids.begin(), follower_ids.end(), node_id);
        if (it == follower_ids.end() || *it != node_id) return 0;
        return static_cast<int>(it - follower_ids.begin()) + 1;
    }

    int leader_column(int node_id) const {
        auto it = std::lower_bound(leader_ids.begin(), leader_ids.end(), node_id);
        if (it == leader_ids.end() || *it != node_id) return 0;
        return static_cast<int>(it - leader_ids.begin()) + 1;
    }
};

/// Derives the parameterization from a topology. Triples follow the weight
/// order. A follower-follower edge with columns i < j gets c^(i) = -1,
/// c^(j) = +1, r1^(i) = +1, r1^(j) = -1; a leader edge with follower column i
/// and leader column p gets c^(i) = +1, r1^(i) = -1, r2^(p) = +1.
inline LinearParameterization build_parameterization(const CommunicationTopology& topo) {
    LinearParameterization param;
    param.follower_ids = topo.followers();
    param.leader_ids = topo.leaders;
    param.n = static_cast<int>(param.follower_ids.size());
    param.m = static_cast<int>(param.leader_ids.size());

    for (const auto& [a, b] : topo.edges) {
        ParameterTriple t;
        t.c.assign(param.n, 0);
        t.r1.assign(param.n, 0);
        t.r2.assign(param.m, 0);
        const bool a_leads = topo.is_leader(a);
        const bool b_leads = topo.is_leader(b);
        if (!a_leads && !b_leads) {
            int i = param.follower_column(a);
            int j = param.follower_column(b);
            if (i > j) std::swap(i, j);
            t.c[i - 1] = -1;
            t.c[j - 1] = 1;
            t.r1[i - 1] = 1;
            t.r1[j - 1] = -1;
        } else {
            const int follower = a_leads ? b : a;
            const int leader = a_leads ? a : b;
            const int i = param.follower_column(follower);
            const int p = param.leader_column(leader);
            t.c[i - 1] = 1;
            t.r1[i - 1] = -1;
            t.r2[p - 1] = 1;
        }
        param.triples.push_back(std::move(t));
    }
    return param;
}

struct WeightAssignment {
    explicit WeightAssignment(std::vector<Rational> v) : values(std::move(v)) {
        for (const auto& w : values)
            if (w == 0) throw std::invalid_argument("edge weights must be nonzero");
    }

    std::vector<Rational> values;

    bool operator==(const WeightAssignment&) const = default;

    int size() const { return static_cast<int>(values.size()); }
};

/// Evaluates (A, B) at a concrete weight vector, in exact arithmetic.
inline std::pair<Matrix<Rational>, Matrix<Rational>> assemble_matrices(const LinearParameterization& param,
                                                                       const WeightAssignment& w) {
    if (w.size() != param.sigma())
        throw std::invalid_argument("weight count " + std::to_string(w.size()) + " does not match sigma = " +
                                    std::to_string(param.sigma()));
    Matrix<Rational> a(param.n, param.n);
    Matrix<Rational> b(param.n, param.m);
    for (int k = 0; k < param.sigma(); ++k) {
        const ParameterTriple& t = param.triples[k];
        const Rational& wk = w.values[k];
        for (int i = 0; i < param.n; ++i) {
            if (t.c[i] == 0) continue;
            const Rational scaled = wk * t.c[i];
            for (int j = 0; j < param.n; ++j)
                if (t.r1[j] != 0) a(i, j) += scaled * t.r1[j];
            for (int p = 0; p < param.m; ++p)
                if (t.r2[p] != 0) b(i, p) += scaled * t.r2[p];
        }
    }
    return {std::move(a), std::move(b)};
}

struct FlowEdge {
    int from = 0;
    int to = 0;
    int weight_id = 0;

    auto operator<=>(const FlowEdge&) const = default;
};

/// Digraph on n+m vertices with one edge per structurally nonzero term of
/// [A | B]; parallel edges are kept apart by weight id. Vertices n+1..n+m are
/// the inputs.
struct FlowGraph {
    int vertex_count = 0;
    int input_begin = 1;  // first input vertex, = n + 1
    std::vector<FlowEdge> edges;

    bool operator==(const FlowGraph&) const = default;

    std::vector<int> input_vertices() const {
        std::vector<int> out;
        for (int v = input_begin; v <= vertex_count; ++v) out.push_back(v);
        return out;
    }
};

inline FlowGraph flow_graph(const LinearParameterization& param) {
    FlowGraph fg;
    fg.vertex_count = param.n + param.m;
    fg.input_begin = param.n + 1;
    for (int k = 0; k < param.sigma(); ++k) {
        const ParameterTriple& t = param.triples[k];
        for (int i = 0; i < param.n; ++i) {
            if (t.c[i] == 0) continue;
            for (int j = 0; j < param.n; ++j)
                if (t.r1[j] != 0) fg.edges.push_back({j + 1, i + 1, k + 1});
            for (int p = 0; p < param.m; ++p)
                if (t.r2[p] != 0) fg.edges.push_back({param.n + p + 1, i + 1, k + 1});
        }
    }
    std::sort(fg.edges.begin(), fg.edges.end());
    return fg;
}

}  // namespace netctrl
