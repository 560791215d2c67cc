#include "gbn/tetrad.hpp"

#include <algorithm>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gbn {

bool ChokeReport::contains(Vertex v) const {
    return std::any_of(points.begin(), points.end(),
                       [v](const auto& p) { return p.first == v; });
}

ChokeReport choke_points(const Dag& g, const VertexSet& I, const VertexSet& J) {
    if (I.empty() || J.empty()) throw GraphError("choke sets must be nonempty");
    struct Sides {
        std::vector<bool> all, iside, jside;
    };
    int n = g.vertex_count();
    std::vector<Sides> treks;
    std::vector<Vertex> first_traversal;
    for (Vertex i : I)
        for (Vertex j : J)
            for (const Trek& t : enumerate_treks(g, i, j)) {
                Sides s{std::vector<bool>(n + 1), std::vector<bool>(n + 1),
                        std::vector<bool>(n + 1)};
                for (Vertex v : t.left) s.all[v] = s.iside[v] = true;
                for (Vertex v : t.right) s.all[v] = s.jside[v] = true;
                if (treks.empty()) {
                    // Traversal order i .. top .. j for reporting.
                    first_traversal.assign(t.left.rbegin(), t.left.rend());
                    first_traversal.insert(first_traversal.end(),
                                           t.right.begin() + 1, t.right.end());
                }
                treks.push_back(std::move(s));
            }
    ChokeReport report;
    if (treks.empty()) {
        report.trivially_vanishing = true;
        return report;
    }
    for (Vertex c : first_traversal) {
        bool on_all = true, on_i = true, on_j = true;
        for (const Sides& s : treks) {
            on_all = on_all && s.all[c];
            on_i = on_i && s.iside[c];
            on_j = on_j && s.jside[c];
        }
        if (!on_all || (!on_i && !on_j)) continue;
        ChokeSide side = on_i && on_j ? ChokeSide::Both
                         : on_i       ? ChokeSide::ISide
                                      : ChokeSide::JSide;
        report.points.push_back({c, side});
    }
    return report;
}

bool tetrad_vanishes(const Dag& g, Vertex i, Vertex j, Vertex k, Vertex l) {
    VertexSet I{i, k}, J{j, l};
    std::sort(I.begin(), I.end());
    I.erase(std::unique(I.begin(), I.end()), I.end());
    std::sort(J.begin(), J.end());
    J.erase(std::unique(J.begin(), J.end()), J.end());
    ChokeReport r = choke_points(g, I, J);
    return r.trivially_vanishing || !r.points.empty();
}

TetradBinomial TetradBinomial::canonical(SigmaPair m1a, SigmaPair m1b,
                                         SigmaPair m2a, SigmaPair m2b) {
    auto norm = [](SigmaPair p) {
        if (p.first > p.second) std::swap(p.first, p.second);
        return p;
    };
    std::array<SigmaPair, 2> m1{norm(m1a), norm(m1b)}, m2{norm(m2a), norm(m2b)};
    std::sort(m1.begin(), m1.end());
    std::sort(m2.begin(), m2.end());
    if (m1 == m2) throw AlgebraError("tetrad binomial with equal monomials");
    auto as_monomial = [](const std::array<SigmaPair, 2>& m) {
        return monomial_mul(
            {{ModelVariable::sigma(m[0].first, m[0].second), 1}},
            {{ModelVariable::sigma(m[1].first, m[1].second), 1}});
    };
    TetradBinomial b;
    // Lead with the larger monomial in the printing order so the canonical
    // string starts with a positive term.
    if (monomial_less(as_monomial(m2), as_monomial(m1))) {
        b.plus = m1;
        b.minus = m2;
    } else {
        b.plus = m2;
        b.minus = m1;
    }
    return b;
}

ModelPolynomial TetradBinomial::poly() const {
    auto mono = [](const std::array<SigmaPair, 2>& m) {
        Monomial out{{ModelVariable::sigma(m[0].first, m[0].second), 1}};
        return monomial_mul(
            out, {{ModelVariable::sigma(m[1].first, m[1].second), 1}});
    };
    return ModelPolynomial(mono(plus), 1) - ModelPolynomial(mono(minus), 1);
}

std::string TetradBinomial::str() const { return poly().str(); }

namespace {

// The three products on the multiset {p,q,r,s} and the choke criterion for
// each pairwise difference.
void tetrads_for_quadruple(const Dag& g, const TrekRuleTable& table, int p,
                           int q, int r, int s,
                           std::vector<TetradBinomial>& out) {
    using SP = TetradBinomial::SigmaPair;
    auto nonzero = [&](int x, int y) { return !table.sigma(x, y).is_zero(); };
    struct Cand {
        SP m1a, m1b, m2a, m2b;
        int i, j, k, l; // choke test between {i,k} and {j,l}
    };
    const Cand cands[3] = {
        // (pq|rs) - (pr|qs)
        {{p, q}, {r, s}, {p, r}, {q, s}, p, q, s, r},
        // (pq|rs) - (ps|qr)
        {{p, q}, {r, s}, {p, s}, {q, r}, p, q, r, s},
        // (pr|qs) - (ps|qr)
        {{p, r}, {q, s}, {p, s}, {q, r}, p, r, q, s},
    };
    for (const Cand& c : cands) {
        if (!nonzero(c.m1a.first, c.m1a.second) ||
            !nonzero(c.m1b.first, c.m1b.second) ||
            !nonzero(c.m2a.first, c.m2a.second) ||
            !nonzero(c.m2b.first, c.m2b.second))
            continue;
        std::array<SP, 2> m1{c.m1a, c.m1b}, m2{c.m2a, c.m2b};
        std::sort(m1.begin(), m1.end());
        std::sort(m2.begin(), m2.end());
        if (m1 == m2) continue;
        if (tetrad_vanishes(g, c.i, c.j, c.k, c.l))
            out.push_back(
                TetradBinomial::canonical(c.m1a, c.m1b, c.m2a, c.m2b));
    }
}

std::vector<std::array<int, 4>> index_quadruples(int n) {
    std::vector<std::array<int, 4>> out;
    for (int p = 1; p <= n; ++p)
        for (int q = p; q <= n; ++q)
            for (int r = q; r <= n; ++r)
                for (int s = r; s <= n; ++s) out.push_back({p, q, r, s});
    return out;
}

std::vector<TetradBinomial> finalize(std::vector<TetradBinomial> raw) {
    std::sort(raw.begin(), raw.end());
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    return raw;
}

} // namespace

std::vector<TetradBinomial> all_vanishing_tetrads_serial(const Dag& g) {
    TrekRuleTable table(g);
    std::vector<TetradBinomial> raw;
    for (const auto& [p, q, r, s] : index_quadruples(g.vertex_count()))
        tetrads_for_quadruple(g, table, p, q, r, s, raw);
    return finalize(std::move(raw));
}

std::vector<TetradBinomial> all_vanishing_tetrads(const Dag& g) {
    auto quads = index_quadruples(g.vertex_count());
    std::vector<TetradBinomial> raw;
#ifdef _OPENMP
#pragma omp parallel
    {
        TrekRuleTable table(g);
        std::vector<TetradBinomial> local;
#pragma omp for schedule(dynamic, 16) nowait
        for (long idx = 0; idx < (long)quads.size(); ++idx) {
            const auto& [p, q, r, s] = quads[idx];
            tetrads_for_quadruple(g, table, p, q, r, s, local);
        }
#pragma omp critical
        raw.insert(raw.end(), local.begin(), local.end());
    }
#else
    TrekRuleTable table(g);
    for (const auto& [p, q, r, s] : quads)
        tetrads_for_quadruple(g, table, p, q, r, s, raw);
#endif
    return finalize(std::move(raw));
}

bool verify_vanishing(const Dag& g, const ModelPolynomial& p) {
    p.for_each_variable([&](const ModelVariable& v) {
        if (v.kind != ModelVariable::Kind::Covariance)
            throw AlgebraError("verify_vanishing: non-sigma variable " + v.str());
        if (v.i < 1 || v.j > g.vertex_count())
            throw AlgebraError("verify_vanishing: index out of range in " + v.str());
    });
    TrekRuleTable table(g);
    ModelPolynomial image = substitute_sigma(
        p, [&](int i, int j) { return &table.sigma(i, j); });
    return image.is_zero();
}

} // namespace gbn
