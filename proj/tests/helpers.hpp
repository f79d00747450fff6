#pragma once

// Shared fixtures and deterministic generators for the test suites.

#include <cstdint>
#include <utility>
#include <vector>

#include "netctrl/topology.hpp"

namespace testutil {

/// Star on four nodes: center 1, leader 4; weight order {1,4}, {1,2}, {1,3}.
inline netctrl::CommunicationTopology star4() {
    return netctrl::make_topology(4, {4}, {{1, 4}, {1, 2}, {1, 3}});
}

inline std::string star4_text() {
    return "nodes 4\nleaders 4\nedge 1 4\nedge 1 2\nedge 1 3\n";
}

/// Two components {1,2,5} and {3,4}; the single leader 5 cannot reach {3,4}.
inline netctrl::CommunicationTopology disconnected5() {
    return netctrl::make_topology(5, {5}, {{1, 2}, {3, 4}, {1, 5}});
}

/// Path 1 - 2 - 3 with leader 3; weight order {1,2}, {2,3}.
inline netctrl::CommunicationTopology path3() {
    return netctrl::make_topology(3, {3}, {{1, 2}, {2, 3}});
}

/// splitmix64, kept local so tests do not depend on library internals.
struct Rng {
    std::uint64_t state = 0;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

/// Random topology: l distinct leaders, each non-leader-leader pair kept with
/// probability p, edge order lexicographic.
inline netctrl::CommunicationTopology random_topology(Rng& rng, int nodes, int leaders_wanted, double p) {
    std::vector<int> ids(static_cast<std::size_t>(nodes));
    for (int v = 0; v < nodes; ++v) ids[static_cast<std::size_t>(v)] = v + 1;
    for (int v = nodes - 1; v > 0; --v)
        std::swap(ids[static_cast<std::size_t>(v)], ids[rng.below(static_cast<std::uint64_t>(v) + 1)]);
    std::vector<int> leaders(ids.begin(), ids.begin() + leaders_wanted);

    netctrl::CommunicationTopology probe;
    probe.node_count = nodes;
    probe.leaders = leaders;
    std::sort(probe.leaders.begin(), probe.leaders.end());

    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= nodes; ++i)
        for (int j = i + 1; j <= nodes; ++j) {
            if (probe.is_leader(i) && probe.is_leader(j)) continue;
            if (rng.unit() < p) edges.push_back({i, j});
        }
    return netctrl::make_topology(nodes, probe.leaders, edges);
}

/// Leader-follower-connected forest with exactly nodes - leaders edges: every
/// follower is assigned to a leader's tree and attached to a random earlier
/// member of that tree.
inline netctrl::CommunicationTopology random_forest_topology(Rng& rng, int nodes, int leaders_wanted) {
    std::vector<int> leaders;
    for (int v = nodes - leaders_wanted + 1; v <= nodes; ++v) leaders.push_back(v);
    std::vector<std::vector<int>> groups(static_cast<std::size_t>(leaders_wanted));
    for (int g = 0; g < leaders_wanted; ++g) groups[static_cast<std::size_t>(g)].push_back(leaders[static_cast<std::size_t>(g)]);
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v <= nodes - leaders_wanted; ++v) {
        auto& group = groups[rng.below(static_cast<std::uint64_t>(leaders_wanted))];
        const int anchor = group[rng.below(group.size())];
        edges.push_back({v, anchor});
        group.push_back(v);
    }
    return netctrl::make_topology(nodes, leaders, edges);
}

}  // namespace testutil
