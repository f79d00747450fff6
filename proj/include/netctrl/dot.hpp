#pragma once

// Graphviz DOT renderings of every graph view. Output is byte-stable:
// vertices in id order, edges in sorted order, two-space indent, one
// statement per line.

#include <sstream>
#include <string>

#include "netctrl/parameterization.hpp"
#include "netctrl/structural.hpp"
#include "netctrl/topology.hpp"

namespace netctrl {

/// Undirected topology; leader vertices are boxes, edge k is labelled w<k>.
inline std::string dot_topology(const CommunicationTopology& topo) {
    std::ostringstream out;
    out << "graph topology {\n";
    for (int v = 1; v <= topo.node_count; ++v) {
        out << "  n" << v;
        if (topo.is_leader(v)) out << " [shape=box]";
        out << ";\n";
    }
    for (int k = 0; k < topo.sigma(); ++k) {
        const auto& [a, b] = topo.edges[static_cast<std::size_t>(k)];
        out << "  n" << a << " -- n" << b << " [label=\"w" << k + 1 << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

/// Flow graph; vertices v1..v(n+m) with inputs as boxes, edge labels w<k>.
inline std::string dot_flow(const FlowGraph& fg) {
    std::ostringstream out;
    out << "digraph flow {\n";
    for (int v = 1; v <= fg.vertex_count; ++v) {
        out << "  v" << v;
        if (v >= fg.input_begin) out << " [shape=box]";
        out << ";\n";
    }
    for (const auto& e : fg.edges)
        out << "  v" << e.from << " -> v" << e.to << " [label=\"w" << e.weight_id << "\"];\n";
    out << "}\n";
    return out.str();
}

/// Transfer graph; vertices g1..g(sigma+1) with the input node as a box,
/// edges labelled with the transfer-matrix entry they come from.
inline std::string dot_transfer(const TransferMatrix& tm) {
    std::ostringstream out;
    out << "digraph transfer {\n";
    for (int v = 1; v <= tm.sigma + 1; ++v) {
        out << "  g" << v;
        if (v == tm.sigma + 1) out << " [shape=box]";
        out << ";\n";
    }
    for (int j = 1; j <= tm.sigma + 1; ++j)
        for (int i = 1; i <= tm.sigma; ++i)
            if (const int value = tm.entries(i - 1, j - 1); value != 0)
                out << "  g" << j << " -> g" << i << " [label=\"" << value << "\"];\n";
    out << "}\n";
    return out.str();
}

/// Line graph; vertex per flow edge, named e<from>_<to>_<k>.
inline std::string dot_line(const LineGraph& lg) {
    auto name = [](const FlowEdge& e) {
        return "e" + std::to_string(e.from) + "_" + std::to_string(e.to) + "_" + std::to_string(e.weight_id);
    };
    std::ostringstream out;
    out << "digraph line {\n";
    for (const auto& v : lg.vertices) out << "  " << name(v) << ";\n";
    for (const auto& [u, v] : lg.edges)
        out << "  " << name(lg.vertices[static_cast<std::size_t>(u)]) << " -> "
            << name(lg.vertices[static_cast<std::size_t>(v)]) << ";\n";
    out << "}\n";
    return out.str();
}

/// Quotient graph; one vertex per weight class, named w1..w(sigma).
inline std::string dot_quotient(const Digraph& q) {
    std::ostringstream out;
    out << "digraph quotient {\n";
    for (int v = 1; v <= q.vertex_count; ++v) out << "  w" << v << ";\n";
    for (const auto& [from, to] : q.edges) out << "  w" << from << " -> w" << to << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace netctrl
