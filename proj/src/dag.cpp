#include "gbn/dag.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>

namespace gbn {

void Dag::check_vertex(Vertex v) const {
    if (v < 1 || v > n_)
        throw GraphError("vertex " + std::to_string(v) + " out of range [1," +
                         std::to_string(n_) + "]");
}

bool Dag::has_edge(Vertex i, Vertex j) const {
    return std::binary_search(edges_.begin(), edges_.end(), Edge{i, j});
}

const std::vector<Vertex>& Dag::parents(Vertex v) const {
    check_vertex(v);
    return parents_[v - 1];
}

const std::vector<Vertex>& Dag::children(Vertex v) const {
    check_vertex(v);
    return children_[v - 1];
}

const std::string& Dag::label(Vertex v) const {
    check_vertex(v);
    return labels_[v - 1];
}

Dag Dag::normalized(int n, std::vector<Edge> edges,
                    std::vector<std::string> labels) {
    if (n < 0) throw GraphError("negative vertex count");
    std::set<Edge> seen;
    for (auto [i, j] : edges) {
        if (i < 1 || i > n || j < 1 || j > n)
            throw GraphError("unknown vertex in edge " + std::to_string(i) +
                             " -> " + std::to_string(j));
        if (i == j) throw GraphError("self-loop at vertex " + std::to_string(i));
        if (!seen.insert({i, j}).second)
            throw GraphError("duplicate edge " + std::to_string(i) + " -> " +
                             std::to_string(j));
    }

    // Topological depth: 0 for sources, 1 + max over parents otherwise.
    std::vector<int> indeg(n + 1, 0), depth(n + 1, 0);
    std::vector<std::vector<Vertex>> ch(n + 1);
    for (auto [i, j] : edges) {
        ch[i].push_back(j);
        ++indeg[j];
    }
    std::queue<Vertex> q;
    for (Vertex v = 1; v <= n; ++v)
        if (indeg[v] == 0) q.push(v);
    int processed = 0;
    while (!q.empty()) {
        Vertex v = q.front();
        q.pop();
        ++processed;
        for (Vertex c : ch[v]) {
            depth[c] = std::max(depth[c], depth[v] + 1);
            if (--indeg[c] == 0) q.push(c);
        }
    }
    if (processed != n) throw GraphError("cycle detected");

    std::vector<Vertex> order(n);
    for (int v = 1; v <= n; ++v) order[v - 1] = v;
    // Relabel only when the numeric-order convention is violated.
    if (std::any_of(edges.begin(), edges.end(),
                    [](Edge e) { return e.first >= e.second; }))
        std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
            return std::pair{depth[a], a} < std::pair{depth[b], b};
        });
    std::vector<Vertex> newlabel(n + 1);
    for (int pos = 0; pos < n; ++pos) newlabel[order[pos]] = pos + 1;

    Dag g;
    g.n_ = n;
    for (auto [i, j] : edges) g.edges_.push_back({newlabel[i], newlabel[j]});
    std::sort(g.edges_.begin(), g.edges_.end());
    g.parents_.resize(n);
    g.children_.resize(n);
    for (auto [i, j] : g.edges_) {
        g.children_[i - 1].push_back(j);
        g.parents_[j - 1].push_back(i);
    }
    for (auto& p : g.parents_) std::sort(p.begin(), p.end());
    for (auto& c : g.children_) std::sort(c.begin(), c.end());
    g.labels_.resize(n);
    for (Vertex old = 1; old <= n; ++old) {
        const std::string lab = (labels.empty() || (size_t)old > labels.size() ||
                                 labels[old - 1].empty())
                                    ? std::to_string(old)
                                    : labels[old - 1];
        g.labels_[newlabel[old] - 1] = lab;
    }
    return g;
}

std::string Dag::print() const {
    std::ostringstream out;
    out << "n " << n_ << "\n";
    for (auto [i, j] : edges_) out << i << " -> " << j << "\n";
    return out.str();
}

Dag parse_dag(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int n = -1;
    std::vector<Edge> edges;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (n < 0) {
            if (tok != "n")
                throw GraphError("line " + std::to_string(lineno) +
                                 ": expected 'n <count>'");
            if (!(ls >> n) || n < 0)
                throw GraphError("line " + std::to_string(lineno) +
                                 ": bad vertex count");
            continue;
        }
        int i = 0, j = 0;
        std::string arrow;
        try {
            i = std::stoi(tok);
        } catch (...) {
            throw GraphError("line " + std::to_string(lineno) +
                             ": bad edge line '" + line + "'");
        }
        if (!(ls >> arrow >> j) || arrow != "->")
            throw GraphError("line " + std::to_string(lineno) +
                             ": bad edge line '" + line + "'");
        edges.push_back({i, j});
    }
    if (n < 0) throw GraphError("missing 'n <count>' header");
    return Dag::normalized(n, std::move(edges));
}

Dag induced_subgraph(const Dag& g, const VertexSet& s) {
    std::vector<int> newlabel(g.vertex_count() + 1, 0);
    int k = 0;
    for (Vertex v : s) {
        if (v < 1 || v > g.vertex_count())
            throw GraphError("induced subgraph: vertex out of range");
        newlabel[v] = ++k;
    }
    std::vector<Edge> edges;
    for (auto [i, j] : g.edges())
        if (newlabel[i] && newlabel[j]) edges.push_back({newlabel[i], newlabel[j]});
    std::vector<std::string> labels(k);
    for (Vertex v : s) labels[newlabel[v] - 1] = g.label(v);
    return Dag::normalized(k, std::move(edges), std::move(labels));
}

namespace {

// Components of the underlying undirected graph, skipping one deleted edge.
std::vector<VertexSet> undirected_components(const Dag& g,
                                             std::optional<Edge> skip) {
    int n = g.vertex_count();
    std::vector<int> comp(n + 1, 0);
    int ncomp = 0;
    for (Vertex s = 1; s <= n; ++s) {
        if (comp[s]) continue;
        comp[s] = ++ncomp;
        std::vector<Vertex> stack{s};
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            auto visit = [&](Vertex w, Edge e) {
                if (skip && *skip == e) return;
                if (!comp[w]) {
                    comp[w] = ncomp;
                    stack.push_back(w);
                }
            };
            for (Vertex c : g.children(v)) visit(c, {v, c});
            for (Vertex p : g.parents(v)) visit(p, {p, v});
        }
    }
    std::vector<VertexSet> out(ncomp);
    for (Vertex v = 1; v <= n; ++v) out[comp[v] - 1].push_back(v);
    return out;
}

} // namespace

StructureReport classify(const Dag& g) {
    StructureReport r;
    int n = g.vertex_count();
    auto comps = undirected_components(g, std::nullopt);
    // A forest has exactly n - #components edges (no undirected cycles).
    r.is_forest = (int)g.edges().size() == n - (int)comps.size();
    r.is_tree = r.is_forest && comps.size() == 1 && n >= 1;
    for (Vertex v = 1; v <= n; ++v) {
        if (g.parents(v).empty()) r.sources.push_back(v);
        if (g.children(v).empty()) r.sinks.push_back(v);
    }
    if (r.is_tree) {
        bool indeg_ok = true, outdeg_ok = true;
        for (Vertex v = 1; v <= n; ++v) {
            if (g.parents(v).size() > 1) indeg_ok = false;
            if (g.children(v).size() > 1) outdeg_ok = false;
        }
        r.is_rooted_directed_tree = indeg_ok && r.sources.size() == 1;
        r.is_downward_directed = outdeg_ok && r.sinks.size() == 1;
        if (r.is_rooted_directed_tree)
            for (Vertex v = 1; v <= n; ++v)
                if (g.children(v).empty()) r.leaves.push_back(v);
    }
    return r;
}

std::vector<Dag> components_after_edge_removal(const Dag& g, Edge e) {
    if (!g.has_edge(e.first, e.second))
        throw GraphError("edge not in graph");
    std::vector<Dag> out;
    for (const auto& comp : undirected_components(g, e)) {
        std::vector<int> newlabel(g.vertex_count() + 1, 0);
        int k = 0;
        for (Vertex v : comp) newlabel[v] = ++k;
        std::vector<Edge> edges;
        for (auto [i, j] : g.edges())
            if (Edge{i, j} != e && newlabel[i] && newlabel[j])
                edges.push_back({newlabel[i], newlabel[j]});
        std::vector<std::string> labels(k);
        for (Vertex v : comp) labels[newlabel[v] - 1] = g.label(v);
        out.push_back(Dag::normalized(k, std::move(edges), std::move(labels)));
    }
    return out;
}

VertexSet descendants(const Dag& g, Vertex v) {
    std::vector<bool> seen(g.vertex_count() + 1, false);
    std::vector<Vertex> stack{v};
    VertexSet out;
    while (!stack.empty()) {
        Vertex u = stack.back();
        stack.pop_back();
        for (Vertex c : g.children(u))
            if (!seen[c]) {
                seen[c] = true;
                out.push_back(c);
                stack.push_back(c);
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace gbn
