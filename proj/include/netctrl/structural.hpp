#pragma once

// Structural controllability analysis: the transfer matrix/graph of a linear
// parameterization, line/quotient graph constructions, spanning-forest
// reachability certificates, and the min-rank condition
//
//   min over s of (rank C_s + rank R_{q-s}) = n
//
// which together with a spanning tree of the transfer graph rooted at the
// input node decides structural controllability.

#include <algorithm>
#include <cstdint>
#include <queue>
#include <set>
#include <stdexcept>
#include <vector>

#include "netctrl/parameterization.hpp"
#include "netctrl/topology.hpp"

namespace netctrl {

// ---------------------------------------------------------------------------
// Transfer matrix and generic digraphs
// ---------------------------------------------------------------------------

/// The sigma x (sigma+1) matrix with entries r_i1 . c_j; the last column holds
/// the input coupling of each weight (the nonzero entry of r_i2, if any).
struct TransferMatrix {
    int sigma = 0;
    Matrix<int> entries;

    bool operator==(const TransferMatrix&) const = default;
};

inline TransferMatrix transfer_matrix(const LinearParameterization& param) {
    const int sigma = param.sigma();
    TransferMatrix tm;
    tm.sigma = sigma;
    tm.entries = Matrix<int>(sigma, sigma + 1);
    for (int i = 0; i < sigma; ++i) {
        const auto& ri = param.triples[i].r1;
        for (int j = 0; j < sigma; ++j) {
            const auto& cj = param.triples[j].c;
            int dot = 0;
            for (int t = 0; t < param.n; ++t) dot += ri[t] * cj[t];
            tm.entries(i, j) = dot;
        }
        for (int v : param.triples[i].r2) {
            if (v != 0) {
                tm.entries(i, sigma) = v;
                break;
            }
        }
    }
    return tm;
}

/// Plain digraph with 1-based vertices and a sorted, duplicate-free edge list.
struct Digraph {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges;  // (from, to)

    bool operator==(const Digraph&) const = default;
};

/// Transfer graph on vertices 1..sigma+1: an edge j -> i whenever T(i,j) != 0.
/// Vertex sigma+1 is the input node.
inline Digraph transfer_graph(const TransferMatrix& tm) {
    Digraph g;
    g.vertex_count = tm.sigma + 1;
    for (int j = 1; j <= tm.sigma + 1; ++j)
        for (int i = 1; i <= tm.sigma; ++i)
            if (tm.entries(i - 1, j - 1) != 0) g.edges.push_back({j, i});
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

/// Collapses the flow graph's parallel weight-labelled edges into a digraph.
inline Digraph to_digraph(const FlowGraph& fg) {
    Digraph g;
    g.vertex_count = fg.vertex_count;
    for (const auto& e : fg.edges) g.edges.push_back({e.from, e.to});
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
    return g;
}

// ---------------------------------------------------------------------------
// Reachability / spanning forests
// ---------------------------------------------------------------------------

/// Multi-source BFS witness: spanning is true when every non-root vertex is
/// reachable from some root. parent[v] is the BFS parent of a reached vertex
/// and 0 for roots and unreachable vertices.
struct ReachabilityForest {
    bool spanning = false;
    std::vector<int> unreachable;
    std::vector<int> parent;  // indexed 1..vertex_count; entry 0 unused

    bool operator==(const ReachabilityForest&) const = default;
};

inline ReachabilityForest has_spanning_forest_rooted_at(const Digraph& g, const std::vector<int>& roots) {
    if (roots.empty()) throw std::invalid_argument("spanning forest needs at least one root");
    for (int r : roots)
        if (r < 1 || r > g.vertex_count) throw std::invalid_argument("root vertex out of range");

    std::vector<std::vector<int>> adj(g.vertex_count + 1);
    for (const auto& [from, to] : g.edges) adj[from].push_back(to);

    ReachabilityForest out;
    out.parent.assign(g.vertex_count + 1, 0);
    std::vector<bool> reached(g.vertex_count + 1, false);
    std::queue<int> queue;
    std::vector<int> sorted_roots = roots;
    std::sort(sorted_roots.begin(), sorted_roots.end());
    for (int r : sorted_roots) {
        if (!reached[r]) {
            reached[r] = true;
            queue.push(r);
        }
    }
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop();
        for (int w : adj[v]) {
            if (!reached[w]) {
                reached[w] = true;
                out.parent[w] = v;
                queue.push(w);
            }
        }
    }
    for (int v = 1; v <= g.vertex_count; ++v)
        if (!reached[v]) out.unreachable.push_back(v);
    out.spanning = out.unreachable.empty();
    return out;
}

/// True when all of gamma_1..gamma_sigma are reachable from gamma_{sigma+1}.
inline ReachabilityForest transfer_tree_from_input(const Digraph& transfer) {
    return has_spanning_forest_rooted_at(transfer, {transfer.vertex_count});
}

struct IrreducibilityResult {
    bool irreducible = false;
    std::vector<int> unreachable_followers;  // node ids

    bool operator==(const IrreducibilityResult&) const = default;
};

/// (A, B) is irreducible iff the flow graph has a spanning forest rooted at
/// the input vertices. The unreachable followers are exactly the rows a
/// permutation can isolate into an input-disconnected block.
inline IrreducibilityResult is_irreducible(const LinearParameterization& param) {
    IrreducibilityResult out;
    if (param.m == 0) {
        out.irreducible = false;
        out.unreachable_followers = param.follower_ids;
        return out;
    }
    const FlowGraph fg = flow_graph(param);
    const ReachabilityForest forest = has_spanning_forest_rooted_at(to_digraph(fg), fg.input_vertices());
    out.irreducible = forest.spanning;
    for (int v : forest.unreachable)
        out.unreachable_followers.push_back(param.follower_ids.empty() ? v : param.follower_ids[v - 1]);
    return out;
}

// ---------------------------------------------------------------------------
// Line graph and quotient graph
// ---------------------------------------------------------------------------

/// One vertex per directed flow-graph edge; an edge joins two vertices when
/// the head of the first flow edge is the tail of the second. Parallel flow
/// edges with different weight ids stay distinct vertices.
struct LineGraph {
    std::vector<FlowEdge> vertices;
    std::vector<std::pair<int, int>> edges;  // 0-based indices into vertices

    bool operator==(const LineGraph&) const = default;
};

inline LineGraph line_graph(const FlowGraph& fg) {
    LineGraph lg;
    lg.vertices = fg.edges;
    const int count = static_cast<int>(lg.vertices.size());
    for (int u = 0; u < count; ++u)
        for (int v = 0; v < count; ++v)
            if (lg.vertices[u].to == lg.vertices[v].from) lg.edges.push_back({u, v});
    return lg;
}

/// Collapses line-graph vertices by weight id: an edge k -> k' whenever some
/// vertex of the flow graph has an ingoing edge with weight k and an outgoing
/// edge with weight k'. Isomorphic (under k -> gamma_k) to the transfer graph
/// with the input node removed.
inline Digraph quotient_graph(const LineGraph& lg, int sigma) {
    for (const auto& v : lg.vertices)
        if (v.weight_id < 1 || v.weight_id > sigma)
            throw std::invalid_argument("line-graph weight id outside 1..sigma");
    std::set<std::pair<int, int>> edges;
    for (const auto& [u, v] : lg.edges)
        edges.insert({lg.vertices[u].weight_id, lg.vertices[v].weight_id});
    Digraph g;
    g.vertex_count = sigma;
    g.edges.assign(edges.begin(), edges.end());
    return g;
}

// ---------------------------------------------------------------------------
// Subset slices and the min-rank condition
// ---------------------------------------------------------------------------

/// C_s (columns c_i, ascending i in s), R_s (rows [r_i1 r_i2]), and the
/// ordered weight symbols of s standing in for the diagonal of W_s.
struct SubsetSlices {
    Matrix<BigInt> c;             // n x |s|
    Matrix<BigInt> r;             // |s| x (n + m)
    std::vector<int> weight_ids;  // ascending
};

inline SubsetSlices slice_subset(const LinearParameterization& param, std::vector<int> s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (int k : s)
        if (k < 1 || k > param.sigma()) throw std::out_of_range("subset index outside 1..sigma");

    SubsetSlices out;
    out.weight_ids = s;
    const int f = static_cast<int>(s.size());
    out.c = Matrix<BigInt>(param.n, f);
    out.r = Matrix<BigInt>(f, param.n + param.m);
    for (int col = 0; col < f; ++col) {
        const ParameterTriple& t = param.triples[s[col] - 1];
        for (int i = 0; i < param.n; ++i) out.c(i, col) = t.c[i];
        for (int j = 0; j < param.n; ++j) out.r(col, j) = t.r1[j];
        for (int p = 0; p < param.m; ++p) out.r(col, param.n + p) = t.r2[p];
    }
    return out;
}

struct MinRankResult {
    int value = 0;
    std::vector<int> witness;  // subset attaining the value, ascending weight ids
    bool exhaustive = false;

    bool operator==(const MinRankResult&) const = default;
};

namespace detail {

inline std::vector<int> mask_to_subset(std::uint64_t mask, int sigma) {
    std::vector<int> s;
    for (int k = 0; k < sigma; ++k)
        if (mask >> k & 1) s.push_back(k + 1);
    return s;
}

inline int rank_of_subset_split(const LinearParameterization& param, std::uint64_t mask) {
    const int sigma = param.sigma();
    std::vector<int> inside;
    std::vector<int> outside;
    for (int k = 0; k < sigma; ++k) (mask >> k & 1 ? inside : outside).push_back(k + 1);
    const int rank_c = rank(slice_subset(param, inside).c);
    const int rank_r = rank(slice_subset(param, outside).r);
    return rank_c + rank_r;
}

}  // namespace detail

/// Minimizes rank C_s + rank R_{q-s} over subsets s. All 2^sigma subsets are
/// enumerated when sigma <= cap; otherwise only the empty set, the full set,
/// singletons and co-singletons are tried and the result is an upper bound
/// flagged exhaustive = false. The witness is the first minimizer in
/// ascending bitmask order.
inline MinRankResult min_rank_condition(const LinearParameterization& param, int cap = 20) {
    const int sigma = param.sigma();
    MinRankResult out;
    out.exhaustive = sigma <= cap;

    std::vector<std::uint64_t> masks;
    if (out.exhaustive) {
        masks.resize(std::size_t{1} << sigma);
        for (std::size_t i = 0; i < masks.size(); ++i) masks[i] = i;
    } else {
        const std::uint64_t full = (std::uint64_t{1} << sigma) - 1;
        std::set<std::uint64_t> forced{0, full};
        for (int k = 0; k < sigma; ++k) {
            forced.insert(std::uint64_t{1} << k);
            forced.insert(full ^ (std::uint64_t{1} << k));
        }
        masks.assign(forced.begin(), forced.end());
    }

    bool first = true;
    for (std::uint64_t mask : masks) {
        const int value = detail::rank_of_subset_split(param, mask);
        if (first || value < out.value) {
            out.value = value;
            out.witness = detail::mask_to_subset(mask, sigma);
            first = false;
            if (value == 0) break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Verdicts
// ---------------------------------------------------------------------------

enum class Decision {
    StructurallyControllable,
    NotStructurallyControllable,
    Inconclusive,  // certificate route only, when a truncated min-rank search proves nothing
};

enum class Route { TheoremShortcut, Certificate, Oracle };

struct TheoremDecision {
    Decision decision = Decision::Inconclusive;
    ComponentPartition components;

    bool operator==(const TheoremDecision&) const = default;
};

/// Graph-connectivity shortcut: with a single leader the verdict is
/// connectivity of the topology, with multiple leaders it is leader-follower
/// connectivity (a leader in every component).
inline TheoremDecision theorem_decision(const CommunicationTopology& topo) {
    TheoremDecision out;
    out.components = connected_components(topo);
    const bool ok = topo.leader_count() == 1 ? out.components.components.size() == 1
                                             : is_leader_follower_connected(topo);
    out.decision = ok ? Decision::StructurallyControllable : Decision::NotStructurallyControllable;
    return out;
}

struct CertificateDecision {
    Decision decision = Decision::Inconclusive;
    MinRankResult min_rank;
    ReachabilityForest transfer_tree;  // rooted at the input node gamma_{sigma+1}

    bool operator==(const CertificateDecision&) const = default;
};

/// Certificate route: structurally controllable iff the exhaustive min-rank
/// value equals n and the transfer graph has a spanning tree rooted at the
/// input node. A truncated search can still conclude "no" when its upper
/// bound falls below n; otherwise it reports Inconclusive.
inline CertificateDecision certificate_decision(const LinearParameterization& param, int cap = 20) {
    CertificateDecision out;
    out.transfer_tree = transfer_tree_from_input(transfer_graph(transfer_matrix(param)));
    out.min_rank = min_rank_condition(param, cap);
    if (!out.transfer_tree.spanning) {
        out.decision = Decision::NotStructurallyControllable;
    } else if (out.min_rank.exhaustive) {
        out.decision = out.min_rank.value == param.n ? Decision::StructurallyControllable
                                                     : Decision::NotStructurallyControllable;
    } else if (out.min_rank.value < param.n) {
        out.decision = Decision::NotStructurallyControllable;
    } else {
        out.decision = Decision::Inconclusive;
    }
    return out;
}

/// Irreducibility implies a spanning tree of the transfer graph rooted at the
/// input node; holds for every instance, so this is a property-test hook.
inline bool check_lemma2(const LinearParameterization& param) {
    if (!is_irreducible(param).irreducible) return true;
    return transfer_tree_from_input(transfer_graph(transfer_matrix(param))).spanning;
}

}  // namespace netctrl
