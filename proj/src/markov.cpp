#include "gbn/markov.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <deque>
#include <functional>

namespace gbn {

namespace {

void require_disjoint(const VertexSet& x, const VertexSet& y, const char* what) {
    VertexSet inter;
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(),
                          std::back_inserter(inter));
    if (!inter.empty()) throw GraphError(std::string("overlapping sets: ") + what);
}

} // namespace

CiStatement make_ci(VertexSet A, VertexSet B, VertexSet C) {
    std::sort(A.begin(), A.end());
    std::sort(B.begin(), B.end());
    std::sort(C.begin(), C.end());
    if (A.empty() || B.empty()) throw GraphError("A and B must be nonempty");
    require_disjoint(A, B, "A,B");
    require_disjoint(A, C, "A,C");
    require_disjoint(B, C, "B,C");
    if (A.front() > B.front()) std::swap(A, B);
    return {std::move(A), std::move(B), std::move(C)};
}

bool d_separated(const Dag& g, const VertexSet& A, const VertexSet& B,
                 const VertexSet& C) {
    require_disjoint(A, B, "A,B");
    require_disjoint(A, C, "A,C");
    require_disjoint(B, C, "B,C");
    int n = g.vertex_count();
    std::vector<bool> in_b(n + 1), in_c(n + 1), anc_c(n + 1);
    for (Vertex v : B) in_b[v] = true;
    for (Vertex v : C) in_c[v] = true;
    // anc_c: in C or with a descendant in C (opens colliders).
    {
        std::vector<Vertex> stack(C.begin(), C.end());
        for (Vertex v : C) anc_c[v] = true;
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex p : g.parents(v))
                if (!anc_c[p]) {
                    anc_c[p] = true;
                    stack.push_back(p);
                }
        }
    }

    // States: entered from a child (up) or from a parent (down).
    enum { Up = 0, Down = 1 };
    std::vector<std::array<bool, 2>> seen(n + 1, {false, false});
    std::deque<std::pair<Vertex, int>> queue;
    for (Vertex a : A) queue.push_back({a, Up});
    while (!queue.empty()) {
        auto [v, dir] = queue.front();
        queue.pop_front();
        if (seen[v][dir]) continue;
        seen[v][dir] = true;
        if (!in_c[v] && in_b[v]) return false; // active trail reaches B
        if (dir == Up) {
            if (in_c[v]) continue; // non-collider in C blocks
            for (Vertex p : g.parents(v)) queue.push_back({p, Up});
            for (Vertex c : g.children(v)) queue.push_back({c, Down});
        } else {
            if (!in_c[v])
                for (Vertex c : g.children(v)) queue.push_back({c, Down});
            if (anc_c[v]) // collider opened by C or a descendant in C
                for (Vertex p : g.parents(v)) queue.push_back({p, Up});
        }
    }
    return true;
}

std::vector<CiStatement> enumerate_ci_statements(const Dag& g, int amax,
                                                 int cmax) {
    if (amax < 1 || cmax < 0) throw GraphError("invalid enumeration caps");
    int n = g.vertex_count();
    // Enumerate subsets as bitmasks; n is desk scale.
    std::vector<CiStatement> out;
    std::vector<unsigned> masks;
    for (unsigned m = 1; m < (1u << n); ++m)
        if (std::popcount(m) <= amax) masks.push_back(m);
    auto to_set = [&](unsigned m) {
        VertexSet s;
        for (int v = 1; v <= n; ++v)
            if (m & (1u << (v - 1))) s.push_back(v);
        return s;
    };
    for (unsigned ma : masks)
        for (unsigned mb : masks) {
            if (ma & mb) continue;
            VertexSet A = to_set(ma), B = to_set(mb);
            if (A.front() > B.front()) continue; // canonical form only
            unsigned rest = ((1u << n) - 1) & ~(ma | mb);
            // All C subsets of the remaining vertices within the cap.
            for (unsigned mc = rest;; mc = (mc - 1) & rest) {
                if (std::popcount(mc) <= cmax) {
                    VertexSet C = to_set(mc);
                    if (d_separated(g, A, B, C)) out.push_back({A, B, C});
                }
                if (mc == 0) break;
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

ModelPolynomial symbolic_det(const std::vector<std::vector<ModelPolynomial>>& m,
                             std::vector<int> rows, std::vector<int> cols) {
    if (rows.size() == 1) return m[rows[0]][cols[0]];
    ModelPolynomial sum;
    std::vector<int> subcols(cols.begin() + 1, cols.end());
    for (size_t r = 0; r < rows.size(); ++r) {
        const ModelPolynomial& e = m[rows[r]][cols[0]];
        if (e.is_zero()) continue;
        std::vector<int> subrows;
        for (size_t i = 0; i < rows.size(); ++i)
            if (i != r) subrows.push_back(rows[i]);
        ModelPolynomial cof = e * symbolic_det(m, subrows, subcols);
        if (r % 2) sum -= cof;
        else sum += cof;
    }
    return sum;
}

void combinations(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        f(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

} // namespace

std::vector<ModelPolynomial> ci_minor_polynomials(const CiStatement& stmt) {
    VertexSet rows = stmt.A, cols = stmt.B;
    rows.insert(rows.end(), stmt.C.begin(), stmt.C.end());
    cols.insert(cols.end(), stmt.C.begin(), stmt.C.end());
    int k = (int)stmt.C.size() + 1;
    std::vector<std::vector<ModelPolynomial>> m(rows.size());
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t c = 0; c < cols.size(); ++c)
            m[r].push_back(ModelPolynomial(ModelVariable::sigma(rows[r], cols[c])));
    std::vector<ModelPolynomial> out;
    if (k > (int)rows.size() || k > (int)cols.size()) return out;
    combinations((int)rows.size(), k, [&](const std::vector<int>& rsel) {
        combinations((int)cols.size(), k, [&](const std::vector<int>& csel) {
            out.push_back(symbolic_det(m, rsel, csel));
        });
    });
    return out;
}

bool ci_rank_test(const RationalMatrix& sigma, const CiStatement& stmt) {
    std::vector<int> rows, cols;
    for (Vertex v : stmt.A) rows.push_back(v - 1);
    for (Vertex v : stmt.C) rows.push_back(v - 1);
    for (Vertex v : stmt.B) cols.push_back(v - 1);
    for (Vertex v : stmt.C) cols.push_back(v - 1);
    return sigma.submatrix(rows, cols).rank() <= (int)stmt.C.size();
}

} // namespace gbn
