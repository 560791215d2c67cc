#include "gbn/hidden.hpp"

#include "gbn/markov.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>

namespace gbn {

UpstreamGrading make_upstream_grading(const Dag& g, VertexSet hidden) {
    std::sort(hidden.begin(), hidden.end());
    hidden.erase(std::unique(hidden.begin(), hidden.end()), hidden.end());
    std::vector<bool> is_h(g.vertex_count() + 1, false);
    for (Vertex v : hidden) {
        if (v < 1 || v > g.vertex_count())
            throw GraphError("hidden vertex out of range");
        is_h[v] = true;
    }
    for (auto [i, j] : g.edges())
        if (!is_h[i] && is_h[j])
            throw GraphError("hidden set is not upstream: edge " +
                             std::to_string(i) + " -> " + std::to_string(j));
    VertexSet observed;
    for (Vertex v = 1; v <= g.vertex_count(); ++v)
        if (!is_h[v]) observed.push_back(v);
    return {{std::move(hidden), std::move(observed)}};
}

namespace {

std::string monomial_str(const Monomial& m, const mpz_class& c) {
    return ModelPolynomial(m, c).str();
}

} // namespace

UpstreamDegree upstream_degree(const UpstreamGrading& grading,
                               const ModelPolynomial& p) {
    std::vector<bool> is_h;
    {
        int n = 0;
        for (Vertex v : grading.partition.hidden) n = std::max(n, v);
        for (Vertex v : grading.partition.observed) n = std::max(n, v);
        is_h.assign(n + 1, false);
        for (Vertex v : grading.partition.hidden) is_h[v] = true;
    }
    bool saw_sigma = false, saw_model = false;
    p.for_each_variable([&](const ModelVariable& v) {
        if (v.i < 1 || v.j >= (int)is_h.size())
            throw AlgebraError("variable outside the partition: " + v.str());
        if (v.kind == ModelVariable::Kind::Covariance) saw_sigma = true;
        else saw_model = true;
    });
    if (saw_sigma && saw_model)
        throw AlgebraError("mixed sigma and a/lambda variables");
    auto var_degree = [&](const ModelVariable& v) -> std::pair<int, int> {
        switch (v.kind) {
        case ModelVariable::Kind::Covariance:
            return {1, (!is_h[v.i]) + (!is_h[v.j])};
        case ModelVariable::Kind::NodeVariance:
            return is_h[v.i] ? std::pair{1, 0} : std::pair{1, 2};
        case ModelVariable::Kind::EdgeWeight:
            return is_h[v.i] && !is_h[v.j] ? std::pair{0, 1} : std::pair{0, 0};
        }
        throw AlgebraError("unreachable");
    };
    UpstreamDegree out;
    bool first = true;
    Monomial first_mono;
    mpz_class first_coeff;
    for (const auto& [mono, coeff] : p.terms()) {
        std::pair<int, int> d{0, 0};
        for (const auto& [var, exp] : mono) {
            auto [d1, d2] = var_degree(var);
            d.first += d1 * exp;
            d.second += d2 * exp;
        }
        if (first) {
            out.degree = d;
            first_mono = mono;
            first_coeff = coeff;
            first = false;
        } else if (d != out.degree) {
            out.homogeneous = false;
            out.term_a = monomial_str(first_mono, first_coeff);
            out.term_b = monomial_str(mono, coeff);
            return out;
        }
    }
    out.homogeneous = true;
    return out;
}

std::vector<TetradBinomial> hidden_tree_generators(const Dag& t) {
    StructureReport rep = classify(t);
    if (!rep.is_rooted_directed_tree)
        throw GraphError("not a rooted directed tree");
    std::vector<bool> is_leaf(t.vertex_count() + 1, false);
    for (Vertex v : rep.leaves) is_leaf[v] = true;
    std::vector<TetradBinomial> out;
    for (const TetradBinomial& b : all_vanishing_tetrads(t)) {
        bool ok = true;
        for (const auto& [i, j] : {b.plus[0], b.plus[1]})
            ok = ok && is_leaf[i] && is_leaf[j];
        if (ok) out.push_back(b);
    }
    return out;
}

bool plucker_support_check(const TetradBinomial& b) {
    auto pairing_of = [](const std::array<TetradBinomial::SigmaPair, 2>& m,
                         VertexSet& support) {
        VertexSet s{m[0].first, m[0].second, m[1].first, m[1].second};
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) return false;
        support = s;
        return true;
    };
    VertexSet s1, s2;
    return pairing_of(b.plus, s1) && pairing_of(b.minus, s2) && s1 == s2;
}

PartialPermutation PartialPermutation::make(
    int n, std::vector<std::pair<int, int>> ones) {
    if (n < 1) throw GraphError("partial permutation needs n >= 1");
    std::sort(ones.begin(), ones.end());
    std::vector<bool> row(n + 1, false), col(n + 1, false);
    for (auto [i, j] : ones) {
        if (i < 1 || i > n || j < 1 || j > n)
            throw GraphError("partial permutation entry out of range");
        if (row[i] || col[j])
            throw GraphError("partial permutation has a repeated row or column");
        row[i] = col[j] = true;
    }
    return {n, std::move(ones)};
}

PartialPermutation parse_partial_permutation(const std::string& text, int n) {
    std::vector<std::pair<int, int>> ones;
    std::string s;
    for (char c : text)
        if (!isspace((unsigned char)c)) s.push_back(c);
    size_t pos = 0;
    while (pos < s.size()) {
        if (s[pos] == ',') {
            ++pos;
            continue;
        }
        int i = 0, j = 0;
        if (s[pos] != '(' ||
            sscanf(s.c_str() + pos, "(%d,%d)", &i, &j) != 2)
            throw GraphError("bad partial permutation syntax near '" +
                             s.substr(pos) + "'");
        ones.push_back({i, j});
        pos = s.find(')', pos);
        if (pos == std::string::npos)
            throw GraphError("unterminated pair in partial permutation");
        ++pos;
    }
    return PartialPermutation::make(n, std::move(ones));
}

HiddenModel build_schubert_graph(const PartialPermutation& w) {
    int n = w.n, h = (int)w.ones.size();
    std::vector<Edge> edges;
    std::vector<std::string> labels;
    for (auto [i, j] : w.ones)
        labels.push_back("(" + std::to_string(i) + "," + std::to_string(j) + ")");
    for (int k = 1; k <= n; ++k) labels.push_back(std::to_string(k));
    for (int k = 1; k <= n; ++k) labels.push_back(std::to_string(k) + "'");
    auto row_v = [&](int k) { return h + k; };
    auto col_v = [&](int k) { return h + n + k; };
    for (int k = 1; k <= n; ++k)
        for (int l = k + 1; l <= n; ++l) {
            edges.push_back({row_v(k), row_v(l)});
            edges.push_back({col_v(k), col_v(l)});
        }
    for (int t = 0; t < h; ++t) {
        auto [i, j] = w.ones[t];
        for (int k = i; k <= n; ++k) edges.push_back({t + 1, row_v(k)});
        for (int k = j; k <= n; ++k) edges.push_back({t + 1, col_v(k)});
    }
    HiddenModel out;
    out.graph = Dag::normalized(h + 2 * n, std::move(edges), std::move(labels));
    for (int v = 1; v <= h; ++v) out.partition.hidden.push_back(v);
    for (int v = h + 1; v <= h + 2 * n; ++v) out.partition.observed.push_back(v);
    return out;
}

std::vector<ModelPolynomial> schubert_generators(const PartialPermutation& w) {
    if (w.n > 3) throw GraphError("schubert generator guard is capped at n = 3");
    HiddenModel m = build_schubert_graph(w);
    int n = w.n, h = (int)w.ones.size();
    std::vector<ModelPolynomial> out;
    std::vector<std::string> seen;
    auto subsets_of_size = [](int universe, int k) {
        std::vector<std::vector<int>> subs;
        std::vector<int> cur;
        auto rec = [&](auto&& self, int start) -> void {
            if ((int)cur.size() == k) {
                subs.push_back(cur);
                return;
            }
            for (int v = start; v <= universe; ++v) {
                cur.push_back(v);
                self(self, v + 1);
                cur.pop_back();
            }
        };
        rec(rec, 1);
        return subs;
    };
    for (unsigned cm = 0; cm < (1u << h); ++cm) {
        VertexSet C;
        for (int t = 0; t < h; ++t)
            if (cm & (1u << t)) C.push_back(t + 1);
        int k = (int)C.size() + 1;
        if (k > n) continue;
        for (const auto& A : subsets_of_size(n, k))
            for (const auto& B : subsets_of_size(n, k)) {
                VertexSet av, bv;
                for (int a : A) av.push_back(h + a);
                for (int b : B) bv.push_back(h + n + b);
                if (!d_separated(m.graph, av, bv, C)) continue;
                std::vector<std::vector<ModelPolynomial>> block(k);
                for (int r = 0; r < k; ++r)
                    for (int c = 0; c < k; ++c)
                        block[r].push_back(ModelPolynomial(
                            ModelVariable::sigma(av[r], bv[c])));
                std::vector<int> idx(k);
                for (int i = 0; i < k; ++i) idx[i] = i;
                ModelPolynomial det;
                // Leibniz by recursive cofactors via ci machinery is private;
                // inline a small cofactor expansion instead.
                auto cof = [&](auto&& self, std::vector<int> rows,
                               std::vector<int> cols) -> ModelPolynomial {
                    if (rows.size() == 1) return block[rows[0]][cols[0]];
                    ModelPolynomial sum;
                    std::vector<int> sc(cols.begin() + 1, cols.end());
                    for (size_t r = 0; r < rows.size(); ++r) {
                        std::vector<int> sr;
                        for (size_t i = 0; i < rows.size(); ++i)
                            if (i != r) sr.push_back(rows[i]);
                        ModelPolynomial c =
                            block[rows[r]][cols[0]] * self(self, sr, sc);
                        if (r % 2) sum -= c;
                        else sum += c;
                    }
                    return sum;
                };
                det = cof(cof, idx, idx);
                std::string key = det.str();
                if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
                    seen.push_back(key);
                    out.push_back(std::move(det));
                }
            }
    }
    std::sort(out.begin(), out.end(),
              [](const ModelPolynomial& a, const ModelPolynomial& b) {
                  return std::pair(a.total_degree(), a.str()) <
                         std::pair(b.total_degree(), b.str());
              });
    return out;
}

namespace {

HiddenModel doubled_tree(int internals_per_copy,
                         const std::vector<Edge>& copy_edges,
                         const std::vector<std::pair<int, int>>& wiring,
                         int leaves) {
    int h = 2 * internals_per_copy;
    std::vector<Edge> edges;
    std::vector<std::string> labels;
    for (int copy = 0; copy < 2; ++copy)
        for (int v = 1; v <= internals_per_copy; ++v)
            labels.push_back("h" + std::to_string(v) +
                             (copy ? "b" : "a"));
    for (int l = 1; l <= leaves; ++l) labels.push_back(std::to_string(l));
    for (int copy = 0; copy < 2; ++copy) {
        int off = copy * internals_per_copy;
        for (auto [i, j] : copy_edges) edges.push_back({off + i, off + j});
        for (auto [v, leaf] : wiring) edges.push_back({off + v, h + leaf});
    }
    HiddenModel out;
    out.graph = Dag::normalized(h + leaves, std::move(edges), std::move(labels));
    for (int v = 1; v <= h; ++v) out.partition.hidden.push_back(v);
    for (int v = h + 1; v <= h + leaves; ++v) out.partition.observed.push_back(v);
    // Join hypotheses: observed vertices are childless sinks, and the two
    // hidden copies are disconnected from each other.
    for (auto [i, j] : out.graph.edges()) {
        if (i > h) throw GraphError("observed-to-observed edge in doubled tree");
        if (j <= h && (i <= internals_per_copy) != (j <= internals_per_copy))
            throw GraphError("edge between hidden copies in doubled tree");
    }
    return out;
}

} // namespace

HiddenModel construct_classical_graph(ClassicalKind kind, int p, int m) {
    switch (kind) {
    case ClassicalKind::FactorAnalysis: {
        if (p < 1 || m < 1) throw GraphError("factor analysis needs p, m >= 1");
        std::vector<Edge> edges;
        std::vector<std::string> labels;
        for (int i = 1; i <= p; ++i) labels.push_back("f" + std::to_string(i));
        for (int j = 1; j <= m; ++j) labels.push_back(std::to_string(j));
        for (int i = 1; i <= p; ++i)
            for (int j = 1; j <= m; ++j) edges.push_back({i, p + j});
        HiddenModel out;
        out.graph = Dag::normalized(p + m, std::move(edges), std::move(labels));
        for (int v = 1; v <= p; ++v) out.partition.hidden.push_back(v);
        for (int v = p + 1; v <= p + m; ++v) out.partition.observed.push_back(v);
        return out;
    }
    case ClassicalKind::DoubledCaterpillar:
        // Internal path h1 -> h2 -> h3 with leaf pairs {1,2}, {3,4}, {5,6}.
        return doubled_tree(3, {{1, 2}, {2, 3}},
                            {{1, 1}, {1, 2}, {2, 3}, {2, 4}, {3, 5}, {3, 6}}, 6);
    case ClassicalKind::DoubledSnowflake:
        // Root h1 with cherry nodes h2, h3, h4 bearing the leaf pairs.
        return doubled_tree(4, {{1, 2}, {1, 3}, {1, 4}},
                            {{2, 1}, {2, 2}, {3, 3}, {3, 4}, {4, 5}, {4, 6}}, 6);
    }
    throw GraphError("unsupported classical construction");
}

ModelPolynomial observed_to_graph(const ModelPolynomial& p,
                                  const VertexPartition& partition) {
    std::map<std::pair<int, int>, ModelPolynomial> images;
    const auto& obs = partition.observed;
    return substitute_sigma(p, [&](int i, int j) -> const ModelPolynomial* {
        if (i < 1 || j > (int)obs.size()) return nullptr;
        auto key = std::pair(i, j);
        auto it = images.find(key);
        if (it == images.end())
            it = images
                     .emplace(key, ModelPolynomial(ModelVariable::sigma(
                                       obs[i - 1], obs[j - 1])))
                     .first;
        return &it->second;
    });
}

} // namespace gbn
