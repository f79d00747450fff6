#pragma once

// Communication topologies for leader-follower consensus networks: an
// undirected weighted graph with a distinguished leader subset. Weight symbol
// k (1-based) is attached to the k-th edge of the edge list, so the edge order
// of the input fixes the bijection between edges and weight symbols.

#include <algorithm>
#include <cstdint>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace netctrl {

enum class TopologyErrorKind {
    Syntax,
    SelfLoop,
    DuplicateEdge,
    LeaderLeaderEdge,
    IndexOutOfRange,
    ZeroLeaders,
    AllLeaders,
    DuplicateLeader,
};

class TopologyError : public std::runtime_error {
public:
    TopologyError(TopologyErrorKind kind, int line, const std::string& message)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
          kind_(kind),
          line_(line) {}

    TopologyErrorKind kind() const { return kind_; }
    /// 1-based input line the error points at; 0 when not tied to a line.
    int line() const { return line_; }

private:
    TopologyErrorKind kind_;
    int line_;
};

struct CommunicationTopology {
    int node_count = 0;
    std::vector<int> leaders;                // ascending node ids, 1-based
    std::vector<std::pair<int, int>> edges;  // (lo, hi) pairs; edge at index k-1 carries weight symbol k

    bool operator==(const CommunicationTopology&) const = default;

    int sigma() const { return static_cast<int>(edges.size()); }
    int leader_count() const { return static_cast<int>(leaders.size()); }
    int follower_count() const { return node_count - leader_count(); }

    bool is_leader(int id) const {
        return std::binary_search(leaders.begin(), leaders.end(), id);
    }

    std::vector<int> followers() const {
        std::vector<int> out;
        out.reserve(follower_count());
        for (int v = 1; v <= node_count; ++v)
            if (!is_leader(v)) out.push_back(v);
        return out;
    }
};

namespace detail {

struct LineTagged {
    std::pair<int, int> edge;
    int line;
};

inline CommunicationTopology validate_topology(int node_count, std::vector<int> leaders, int leaders_line,
                                               const std::vector<LineTagged>& edges) {
    if (node_count < 1)
        throw TopologyError(TopologyErrorKind::Syntax, 0, "node count must be a positive integer");
    if (leaders.empty())
        throw TopologyError(TopologyErrorKind::ZeroLeaders, leaders_line, "at least one leader is required");
    for (int id : leaders) {
        if (id < 1 || id > node_count)
            throw TopologyError(TopologyErrorKind::IndexOutOfRange, leaders_line,
                                "leader id " + std::to_string(id) + " outside 1.." + std::to_string(node_count));
    }
    std::sort(leaders.begin(), leaders.end());
    if (std::adjacent_find(leaders.begin(), leaders.end()) != leaders.end())
        throw TopologyError(TopologyErrorKind::DuplicateLeader, leaders_line, "duplicate leader id");
    if (static_cast<int>(leaders.size()) >= node_count)
        throw TopologyError(TopologyErrorKind::AllLeaders, leaders_line,
                            "every node is a leader; at least one follower is required");

    CommunicationTopology topo;
    topo.node_count = node_count;
    topo.leaders = std::move(leaders);

    std::set<std::pair<int, int>> seen;
    for (const auto& [raw, line] : edges) {
        auto [i, j] = raw;
        if (i < 1 || i > node_count || j < 1 || j > node_count)
            throw TopologyError(TopologyErrorKind::IndexOutOfRange, line,
                                "edge endpoint outside 1.." + std::to_string(node_count));
        if (i == j)
            throw TopologyError(TopologyErrorKind::SelfLoop, line,
                                "self-loop at node " + std::to_string(i));
        std::pair<int, int> e{std::min(i, j), std::max(i, j)};
        if (!seen.insert(e).second)
            throw TopologyError(TopologyErrorKind::DuplicateEdge, line,
                                "duplicate edge {" + std::to_string(e.first) + "," + std::to_string(e.second) + "}");
        if (topo.is_leader(e.first) && topo.is_leader(e.second))
            throw TopologyError(TopologyErrorKind::LeaderLeaderEdge, line,
                                "edge between leaders " + std::to_string(e.first) + " and " + std::to_string(e.second));
        topo.edges.push_back(e);
    }
    return topo;
}

}  // namespace detail

/// Builds a validated topology from in-memory parts. Edge order is preserved
/// and determines the weight-symbol numbering.
inline CommunicationTopology make_topology(int node_count, std::vector<int> leaders,
                                           const std::vector<std::pair<int, int>>& edges) {
    std::vector<detail::LineTagged> tagged;
    tagged.reserve(edges.size());
    for (const auto& e : edges) tagged.push_back({e, 0});
    return detail::validate_topology(node_count, std::move(leaders), 0, tagged);
}

/// Parses the line-oriented topology format:
///
///   nodes <N>
///   leaders <id> [<id> ...]
///   edge <i> <j>
///
/// '#' starts a comment, blank lines are ignored. Throws TopologyError with
/// the offending line number on syntax or validation failures.
inline CommunicationTopology parse_topology(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;

    bool have_nodes = false;
    int node_count = 0;
    bool have_leaders = false;
    int leaders_line = 0;
    std::vector<int> leaders;
    std::vector<detail::LineTagged> edges;

    auto parse_int = [&](const std::string& tok, int line) {
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(tok, &used);
        } catch (const std::exception&) {
            throw TopologyError(TopologyErrorKind::Syntax, line, "expected an integer, got '" + tok + "'");
        }
        if (used != tok.size())
            throw TopologyError(TopologyErrorKind::Syntax, line, "expected an integer, got '" + tok + "'");
        return value;
    };

    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream tokens(raw);
        std::vector<std::string> tok;
        for (std::string t; tokens >> t;) tok.push_back(t);
        if (tok.empty()) continue;

        if (tok[0] == "nodes") {
            if (have_nodes)
                throw TopologyError(TopologyErrorKind::Syntax, line_no, "duplicate 'nodes' line");
            if (tok.size() != 2)
                throw TopologyError(TopologyErrorKind::Syntax, line_no, "usage: nodes <N>");
            node_count = parse_int(tok[1], line_no);
            if (node_count < 1)
                throw TopologyError(TopologyErrorKind::Syntax, line_no, "node count must be a positive integer");
            have_nodes = true;
        } else if (tok[0] == "leaders") {
            if (have_leaders)
                throw TopologyError(TopologyErrorKind::Syntax, line_no, "duplicate 'leaders' line");
            for (std::size_t i = 1; i < tok.size(); ++i) leaders.push_back(parse_int(tok[i], line_no));
            have_leaders = true;
            leaders_line = line_no;
        } else if (tok[0] == "edge") {
            if (tok.size() != 3)
                throw TopologyError(TopologyErrorKind::Syntax, line_no, "usage: edge <i> <j>");
            edges.push_back({{parse_int(tok[1], line_no), parse_int(tok[2], line_no)}, line_no});
        } else {
            throw TopologyError(TopologyErrorKind::Syntax, line_no, "unknown directive '" + tok[0] + "'");
        }
    }

    if (!have_nodes)
        throw TopologyError(TopologyErrorKind::Syntax, 0, "missing 'nodes' line");
    if (!have_leaders)
        throw TopologyError(TopologyErrorKind::ZeroLeaders, 0, "missing 'leaders' line");
    return detail::validate_topology(node_count, std::move(leaders), leaders_line, edges);
}

/// Canonical text form; parse_topology(render_topology(t)) == t.
inline std::string render_topology(const CommunicationTopology& topo) {
    std::ostringstream out;
    out << "nodes " << topo.node_count << "\n";
    out << "leaders";
    for (int id : topo.leaders) out << " " << id;
    out << "\n";
    for (const auto& [a, b] : topo.edges) out << "edge " << a << " " << b << "\n";
    return out.str();
}

struct ComponentPartition {
    std::vector<std::vector<int>> components;  // sorted by smallest member, members ascending

    bool operator==(const ComponentPartition&) const = default;
};

/// Connected components of the undirected topology (BFS, deterministic order).
inline ComponentPartition connected_components(const CommunicationTopology& topo) {
    std::vector<std::vector<int>> adj(topo.node_count + 1);
    for (const auto& [a, b] : topo.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    ComponentPartition out;
    std::vector<bool> visited(topo.node_count + 1, false);
    for (int start = 1; start <= topo.node_count; ++start) {
        if (visited[start]) continue;
        std::vector<int> comp;
        std::queue<int> queue;
        queue.push(start);
        visited[start] = true;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop();
            comp.push_back(v);
            for (int w : adj[v]) {
                if (!visited[w]) {
                    visited[w] = true;
                    queue.push(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.components.push_back(std::move(comp));
    }
    return out;
}

inline bool is_connected(const CommunicationTopology& topo) {
    return connected_components(topo).components.size() == 1;
}

/// True iff every connected component contains at least one leader.
inline bool is_leader_follower_connected(const CommunicationTopology& topo) {
    for (const auto& comp : connected_components(topo).components) {
        bool has_leader = false;
        for (int v : comp) {
            if (topo.is_leader(v)) {
                has_leader = true;
                break;
            }
        }
        if (!has_leader) return false;
    }
    return true;
}

}  // namespace netctrl
