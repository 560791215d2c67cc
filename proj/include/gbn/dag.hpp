#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gbn {

using Vertex = int;                     // 1-based
using Edge = std::pair<Vertex, Vertex>; // (i, j) means i -> j
using VertexSet = std::vector<Vertex>;  // sorted, no duplicates

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Directed acyclic graph on vertices 1..n, normalized so that every edge
/// (i, j) has i < j.  Values are immutable after construction.
class Dag {
public:
    Dag() = default;

    /// Build from an arbitrary (acyclic) edge list on [n].  Vertices are
    /// relabeled by the stable sort (topological depth, original label) when
    /// the numeric-order convention is violated; original labels are kept in
    /// the label map.
    static Dag normalized(int n, std::vector<Edge> edges,
                          std::vector<std::string> labels = {});

    int vertex_count() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    bool has_edge(Vertex i, Vertex j) const;
    const std::vector<Vertex>& parents(Vertex v) const;
    const std::vector<Vertex>& children(Vertex v) const;
    const std::string& label(Vertex v) const;

    /// Canonical printed form: "n <count>" then edges sorted lexicographically.
    std::string print() const;

private:
    int n_ = 0;
    std::vector<Edge> edges_;                 // sorted lex, each i < j
    std::vector<std::vector<Vertex>> parents_, children_;
    std::vector<std::string> labels_;         // labels_[v-1]
    void check_vertex(Vertex v) const;
};

struct VertexPartition {
    VertexSet hidden;
    VertexSet observed;
};

struct StructureReport {
    bool is_forest = false;
    bool is_tree = false;
    bool is_rooted_directed_tree = false; // all edges away from a unique source
    bool is_downward_directed = false;    // all edges toward the unique sink
    VertexSet leaves;                     // rooted directed trees: no children
    VertexSet sources;
    VertexSet sinks;
};

Dag parse_dag(const std::string& text);
Dag induced_subgraph(const Dag& g, const VertexSet& s);
StructureReport classify(const Dag& g);
std::vector<Dag> components_after_edge_removal(const Dag& g, Edge e);

/// All vertices reachable from v by directed paths, v excluded.  Sorted.
VertexSet descendants(const Dag& g, Vertex v);

} // namespace gbn
