#include "gbn/trek.hpp"

#include <algorithm>
#include <random>

namespace gbn {

namespace {

// All descending directed paths top .. target.
void descend(const Dag& g, std::vector<Vertex>& path, Vertex target,
             std::vector<std::vector<Vertex>>& out) {
    Vertex v = path.back();
    if (v == target) {
        out.push_back(path);
        return;
    }
    for (Vertex c : g.children(v)) {
        if (c > target) continue; // numeric order: descents only pass i <= target
        path.push_back(c);
        descend(g, path, target, out);
        path.pop_back();
    }
}

std::vector<std::vector<Vertex>> paths_down(const Dag& g, Vertex top, Vertex target) {
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> path{top};
    descend(g, path, target, out);
    return out;
}

} // namespace

std::vector<Trek> enumerate_treks(const Dag& g, Vertex i, Vertex j) {
    if (i < 1 || i > g.vertex_count() || j < 1 || j > g.vertex_count())
        throw GraphError("trek endpoint out of range");
    std::vector<Trek> out;
    if (i == j) {
        out.push_back({i, {i}, {i}});
        return out;
    }
    for (Vertex top = 1; top <= std::min(i, j); ++top) {
        auto lefts = paths_down(g, top, i);
        if (lefts.empty()) continue;
        auto rights = paths_down(g, top, j);
        for (const auto& l : lefts)
            for (const auto& r : rights) {
                // Simple path: the two descents share only the top.
                bool disjoint = true;
                for (size_t x = 1; x < l.size() && disjoint; ++x)
                    for (size_t y = 1; y < r.size(); ++y)
                        if (l[x] == r[y]) {
                            disjoint = false;
                            break;
                        }
                if (disjoint) out.push_back({top, l, r});
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

ModelPolynomial trek_rule_sigma(const Dag& g, Vertex i, Vertex j) {
    ModelPolynomial sum;
    for (const Trek& t : enumerate_treks(g, i, j)) {
        Monomial m{{ModelVariable::a(t.top), 1}};
        auto add_edges = [&](const std::vector<Vertex>& path) {
            for (size_t k = 0; k + 1 < path.size(); ++k)
                m = monomial_mul(
                    m, {{ModelVariable::lambda(path[k], path[k + 1]), 1}});
        };
        add_edges(t.left);
        add_edges(t.right);
        sum += ModelPolynomial(std::move(m), 1);
    }
    return sum;
}

const ModelPolynomial& TrekRuleTable::sigma(int i, int j) const {
    if (i > j) std::swap(i, j);
    auto it = cache_.find({i, j});
    if (it == cache_.end())
        it = cache_.emplace(std::pair{i, j}, trek_rule_sigma(*g_, i, j)).first;
    return it->second;
}

ParameterAssignment sample_omega(const Dag& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(1, 9), den(1, 4), sign(0, 1);
    ParameterAssignment theta;
    for (auto e : g.edges()) {
        mpq_class l = rat(num(rng), den(rng));
        if (sign(rng)) l = -l;
        theta.lambda[e] = l;
    }
    std::uniform_int_distribution<int> pnum(1, 16);
    for (Vertex v = 1; v <= g.vertex_count(); ++v)
        theta.psi2[v] = rat(pnum(rng), 4); // positive, at most 4

    // Variance recursion in topological (= numeric) order fills in a.
    int n = g.vertex_count();
    RationalMatrix sigma(n, n);
    for (Vertex j = 1; j <= n; ++j) {
        for (Vertex k = 1; k < j; ++k) {
            mpq_class s = 0;
            for (Vertex i : g.parents(j))
                s += theta.lambda.at({i, j}) * sigma.at(k - 1, i - 1);
            sigma.at(k - 1, j - 1) = s;
            sigma.at(j - 1, k - 1) = s;
        }
        mpq_class s = theta.psi2.at(j);
        for (Vertex i : g.parents(j))
            for (Vertex k : g.parents(j))
                s += theta.lambda.at({i, j}) * theta.lambda.at({k, j}) *
                     sigma.at(i - 1, k - 1);
        sigma.at(j - 1, j - 1) = s;
        theta.a[j] = s;
    }
    return theta;
}

mpq_class evaluate(const ModelPolynomial& p, const ParameterAssignment& theta) {
    return p.evaluate([&](const ModelVariable& v) -> mpq_class {
        switch (v.kind) {
        case ModelVariable::Kind::NodeVariance: return theta.a.at(v.i);
        case ModelVariable::Kind::EdgeWeight: return theta.lambda.at({v.i, v.j});
        default:
            throw AlgebraError("sigma variable in parameter evaluation");
        }
    });
}

namespace {

// a_i must exceed the parent quadratic form; equivalently psi2 > 0.
void check_omega(const Dag& g, const ParameterAssignment& theta,
                 const RationalMatrix& sigma) {
    for (Vertex j = 1; j <= g.vertex_count(); ++j) {
        mpq_class bound = 0;
        for (Vertex i : g.parents(j))
            for (Vertex k : g.parents(j))
                bound += theta.lambda.at({i, j}) * theta.lambda.at({k, j}) *
                         sigma.at(i - 1, k - 1);
        if (!(theta.a.at(j) > bound))
            throw AlgebraError("parameter assignment outside the valid region");
    }
}

} // namespace

RationalMatrix model_covariance(const Dag& g, const ParameterAssignment& theta) {
    int n = g.vertex_count();
    RationalMatrix sigma(n, n);
    for (Vertex j = 1; j <= n; ++j) {
        for (Vertex k = 1; k < j; ++k) {
            mpq_class s = 0;
            for (Vertex i : g.parents(j))
                s += theta.lambda.at({i, j}) * sigma.at(k - 1, i - 1);
            sigma.at(k - 1, j - 1) = s;
            sigma.at(j - 1, k - 1) = s;
        }
        sigma.at(j - 1, j - 1) = theta.a.at(j);
    }
    check_omega(g, theta, sigma);
    // Exact positive-definiteness: all leading principal minors positive.
    std::vector<int> idx;
    for (int k = 0; k < n; ++k) {
        idx.push_back(k);
        if (!(sigma.minor(idx, idx) > 0))
            throw AlgebraError("model covariance not positive definite");
    }
    return sigma;
}

ParameterAssignment recover_parameters(const Dag& g, const RationalMatrix& sigma) {
    int n = g.vertex_count();
    if (sigma.rows() != n || sigma.cols() != n)
        throw MatrixError("covariance dimension mismatch");
    std::vector<int> idx;
    for (int k = 0; k < n; ++k) {
        idx.push_back(k);
        if (!(sigma.minor(idx, idx) > 0))
            throw MatrixError("covariance not positive definite");
    }
    ParameterAssignment theta;
    for (Vertex j = 1; j <= n; ++j) {
        theta.a[j] = sigma.at(j - 1, j - 1);
        const auto& pa = g.parents(j);
        if (!pa.empty()) {
            std::vector<int> rows;
            for (Vertex p : pa) rows.push_back(p - 1);
            RationalMatrix spp = sigma.submatrix(rows, rows);
            RationalMatrix spj = sigma.submatrix(rows, {j - 1});
            RationalMatrix lam = spp.inverse() * spj;
            for (size_t k = 0; k < pa.size(); ++k)
                theta.lambda[{pa[k], j}] = lam.at((int)k, 0);
        }
        mpq_class quad = 0;
        for (Vertex i : pa)
            for (Vertex k : pa)
                quad += theta.lambda.at({i, j}) * theta.lambda.at({k, j}) *
                        sigma.at(i - 1, k - 1);
        theta.psi2[j] = theta.a.at(j) - quad;
    }
    return theta;
}

} // namespace gbn
