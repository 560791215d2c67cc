#include "gbn/tree_toric.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace gbn {

namespace {

void require_tree(const Dag& t) {
    if (!classify(t).is_tree) throw GraphError("not a tree");
}

int edge_index(const std::vector<Edge>& edges, Edge e) {
    auto it = std::lower_bound(edges.begin(), edges.end(), e);
    return (int)(it - edges.begin());
}

} // namespace

std::string LinearSystem::coord_name(int idx) const {
    if (idx < n) return "x" + std::to_string(idx + 1);
    auto [i, j] = edge_order[idx - n];
    return "y(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

bool LinearSystem::satisfied(const std::vector<mpq_class>& v) const {
    auto dot = [&](const Row& r) {
        mpq_class s = 0;
        for (int c = 0; c < dim(); ++c)
            if (r.coeff[c]) s += r.coeff[c] * v[c];
        return s;
    };
    for (const Row& r : equalities)
        if (dot(r) != r.rhs) return false;
    for (const Row& r : inequalities)
        if (dot(r) < r.rhs) return false;
    return true;
}

TreeGenerators tree_ideal_generators(const Dag& t) {
    if (!classify(t).is_forest) throw GraphError("not a forest");
    TreeGenerators out;
    TrekRuleTable table(t);
    for (int i = 1; i <= t.vertex_count(); ++i)
        for (int j = i + 1; j <= t.vertex_count(); ++j)
            if (table.sigma(i, j).is_zero())
                out.linear.push_back(
                    ModelPolynomial(ModelVariable::sigma(i, j)));
    out.quadratic = all_vanishing_tetrads(t);
    return out;
}

LinearSystem polytope_system(const Dag& t) {
    require_tree(t);
    LinearSystem sys;
    sys.n = t.vertex_count();
    sys.edge_order = t.edges();
    int d = sys.dim();
    auto unit = [&](int idx) {
        LinearSystem::Row r;
        r.coeff.assign(d, 0);
        r.coeff[idx] = 1;
        return r;
    };
    for (int v = 0; v < sys.n; ++v) sys.inequalities.push_back(unit(v));
    for (size_t e = 0; e < sys.edge_order.size(); ++e)
        sys.inequalities.push_back(unit(sys.n + (int)e));
    LinearSystem::Row simplex;
    simplex.coeff.assign(d, 0);
    for (int v = 0; v < sys.n; ++v) simplex.coeff[v] = 1;
    simplex.rhs = 1;
    sys.equalities.push_back(simplex);
    // Per edge j -> k: x_j + sum_{i -> j} y_ij - y_jk >= 0.
    for (auto [j, k] : sys.edge_order) {
        LinearSystem::Row r;
        r.coeff.assign(d, 0);
        r.coeff[j - 1] = 1;
        for (Vertex i : t.parents(j))
            r.coeff[sys.n + edge_index(sys.edge_order, {i, j})] = 1;
        r.coeff[sys.n + edge_index(sys.edge_order, {j, k})] -= 1;
        sys.inequalities.push_back(r);
    }
    // Per vertex j: 2x_j + sum_{i -> j} y_ij - sum_{j -> k} y_jk >= 0.
    for (int j = 1; j <= sys.n; ++j) {
        LinearSystem::Row r;
        r.coeff.assign(d, 0);
        r.coeff[j - 1] = 2;
        for (Vertex i : t.parents(j))
            r.coeff[sys.n + edge_index(sys.edge_order, {i, j})] += 1;
        for (Vertex k : t.children(j))
            r.coeff[sys.n + edge_index(sys.edge_order, {j, k})] -= 1;
        sys.inequalities.push_back(r);
    }
    return sys;
}

std::vector<std::vector<int>> exponent_vectors(const Dag& t) {
    require_tree(t);
    const auto& edges = t.edges();
    int d = t.vertex_count() + (int)edges.size();
    std::vector<std::vector<int>> out;
    for (int i = 1; i <= t.vertex_count(); ++i)
        for (int j = i; j <= t.vertex_count(); ++j) {
            auto treks = enumerate_treks(t, i, j);
            if (treks.empty()) continue;
            if (treks.size() > 1)
                throw GraphError("multiple treks in a tree"); // cannot happen
            const Trek& tr = treks.front();
            std::vector<int> v(d, 0);
            v[tr.top - 1] = 1;
            auto mark = [&](const std::vector<Vertex>& path) {
                for (size_t k = 0; k + 1 < path.size(); ++k)
                    v[t.vertex_count() +
                      edge_index(edges, {path[k], path[k + 1]})] = 1;
            };
            mark(tr.left);
            mark(tr.right);
            out.push_back(std::move(v));
        }
    return out;
}

namespace {

// Canonical shape encoding of a downward directed tree rooted at its sink:
// children are the in-neighbors, encodings sorted.
std::string downward_shape(const Dag& t, Vertex v) {
    std::vector<std::string> parts;
    for (Vertex p : t.parents(v)) parts.push_back(downward_shape(t, p));
    std::sort(parts.begin(), parts.end());
    std::string out = "(";
    for (auto& p : parts) out += p;
    return out + ")";
}

mpz_class degree_component(const Dag& t, std::map<std::string, mpz_class>& memo);

mpz_class degree_forest(const Dag& f, std::map<std::string, mpz_class>& memo) {
    mpz_class prod = 1;
    // Split into components via a dummy "no edge removed" pass: reuse the
    // component machinery by classifying connectivity directly.
    std::vector<bool> seen(f.vertex_count() + 1, false);
    for (Vertex s = 1; s <= f.vertex_count(); ++s) {
        if (seen[s]) continue;
        VertexSet comp;
        std::vector<Vertex> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (Vertex c : f.children(v))
                if (!seen[c]) seen[c] = true, stack.push_back(c);
            for (Vertex p : f.parents(v))
                if (!seen[p]) seen[p] = true, stack.push_back(p);
        }
        std::sort(comp.begin(), comp.end());
        prod *= degree_component(induced_subgraph(f, comp), memo);
    }
    return prod;
}

mpz_class degree_component(const Dag& t, std::map<std::string, mpz_class>& memo) {
    auto rep = classify(t);
    if (!rep.is_downward_directed)
        throw GraphError("component not downward directed");
    if (t.vertex_count() == 1) return 1;
    std::string key = downward_shape(t, rep.sinks.front());
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    // Unique trek from the smallest leaf (source) to the sink.
    Vertex leaf = rep.sources.front();
    mpz_class sum = 0;
    Vertex v = leaf;
    while (!t.children(v).empty()) {
        Vertex w = t.children(v).front();
        mpz_class sub = 0;
        for (const Dag& comp : components_after_edge_removal(t, {v, w}))
            (sub == 0 ? sub = 1 : sub) *= degree_component(comp, memo);
        sum += sub;
        v = w;
    }
    memo[key] = sum;
    return sum;
}

} // namespace

mpz_class tree_degree(const Dag& t) {
    std::map<std::string, mpz_class> memo;
    return degree_forest(t, memo);
}

namespace {

using IntRow = std::vector<long long>;

long long row_gcd(const IntRow& r) {
    long long g = 0;
    for (long long x : r) g = std::gcd(g, x < 0 ? -x : x);
    return g ? g : 1;
}

// Reduce row against echelon rows (each with a unique pivot column), then
// normalize by the gcd.  Returns the pivot column or -1 if dependent.
int reduce_row(IntRow& row, const std::vector<IntRow>& rows,
               const std::vector<int>& pivots) {
    for (size_t k = 0; k < rows.size(); ++k) {
        int pc = pivots[k];
        if (row[pc] == 0) continue;
        long long a = rows[k][pc], b = row[pc];
        for (size_t c = 0; c < row.size(); ++c)
            row[c] = row[c] * a - rows[k][c] * b;
        long long g = row_gcd(row);
        for (auto& x : row) x /= g;
    }
    for (size_t c = 0; c + 1 < row.size(); ++c) // last entry is the rhs
        if (row[c] != 0) return (int)c;
    return -1;
}

// Solve the square system collected in rows (coeff | rhs) exactly.
std::vector<mpq_class> solve_square(std::vector<IntRow> a) {
    int d = (int)a.size();
    // Plain fraction-free elimination; entries stay tiny at this scale.
    std::vector<int> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    for (int col = 0; col < d; ++col) {
        int piv = -1;
        for (int r = col; r < d; ++r)
            if (a[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw MatrixError("singular subsystem");
        std::swap(a[piv], a[col]);
        for (int r = col + 1; r < d; ++r) {
            if (a[r][col] == 0) continue;
            long long x = a[col][col], y = a[r][col];
            for (int c = col; c <= d; ++c) a[r][c] = a[r][c] * x - a[col][c] * y;
            long long g = row_gcd(a[r]);
            for (auto& v : a[r]) v /= g;
        }
    }
    std::vector<mpq_class> sol(d);
    for (int r = d - 1; r >= 0; --r) {
        mpq_class s((long)a[r][d]);
        for (int c = r + 1; c < d; ++c) s -= (long)a[r][c] * sol[c];
        sol[r] = s / mpq_class((long)a[r][r]);
    }
    return sol;
}

struct VertexScan {
    const LinearSystem& sys;
    std::vector<IntRow> all_rows; // inequalities as (coeff | rhs)
    std::vector<IntRow> echelon;
    std::vector<int> pivots;
    std::vector<int> chosen;
    std::set<std::vector<mpq_class>> found;
    int dim;

    explicit VertexScan(const LinearSystem& s) : sys(s), dim(s.dim()) {
        for (const auto& r : sys.inequalities) {
            IntRow row(r.coeff.begin(), r.coeff.end());
            row.push_back(r.rhs);
            all_rows.push_back(std::move(row));
        }
        for (const auto& r : sys.equalities) {
            IntRow row(r.coeff.begin(), r.coeff.end());
            row.push_back(r.rhs);
            int pc = reduce_row(row, echelon, pivots);
            if (pc >= 0) {
                echelon.push_back(std::move(row));
                pivots.push_back(pc);
            }
        }
    }

    void leaf() {
        std::vector<IntRow> square;
        for (const auto& r : sys.equalities) {
            IntRow row(r.coeff.begin(), r.coeff.end());
            row.push_back(r.rhs);
            square.push_back(std::move(row));
        }
        for (int idx : chosen) square.push_back(all_rows[idx]);
        auto sol = solve_square(std::move(square));
        if (sys.satisfied(sol)) found.insert(std::move(sol));
    }

    void recurse(int start, int need) {
        if (need == 0) {
            leaf();
            return;
        }
        for (int idx = start; idx + need <= (int)all_rows.size(); ++idx) {
            IntRow row = all_rows[idx];
            int pc = reduce_row(row, echelon, pivots);
            if (pc < 0) continue; // dependent on the current tight set
            echelon.push_back(std::move(row));
            pivots.push_back(pc);
            chosen.push_back(idx);
            recurse(idx + 1, need - 1);
            echelon.pop_back();
            pivots.pop_back();
            chosen.pop_back();
        }
    }
};

int affine_dim(const std::vector<const std::vector<mpq_class>*>& pts) {
    if (pts.empty()) return -1;
    int d = (int)pts[0]->size();
    RationalMatrix diffs((int)pts.size() - 1, d);
    for (size_t r = 1; r < pts.size(); ++r)
        for (int c = 0; c < d; ++c)
            diffs.at((int)r - 1, c) = (*pts[r])[c] - (*pts[0])[c];
    return diffs.rank();
}

using PointRefs = std::vector<const std::vector<mpq_class>*>;

mpq_class ineq_value(const LinearSystem::Row& r, const std::vector<mpq_class>& v) {
    mpq_class s = -r.rhs;
    for (size_t c = 0; c < v.size(); ++c)
        if (r.coeff[c]) s += r.coeff[c] * v[c];
    return s;
}

// Pulling triangulation: cone the first point over triangulations of the
// facets it does not lie on.
void triangulate(const LinearSystem& sys, const PointRefs& pts,
                 std::vector<PointRefs>& out) {
    int d = affine_dim(pts);
    if ((int)pts.size() == d + 1) {
        out.push_back(pts);
        return;
    }
    const auto* apex = pts[0];
    std::set<PointRefs> facets;
    for (const auto& r : sys.inequalities) {
        if (ineq_value(r, *apex) == 0) continue;
        PointRefs face;
        for (const auto* p : pts)
            if (ineq_value(r, *p) == 0) face.push_back(p);
        if ((int)face.size() < d) continue;
        if (affine_dim(face) != d - 1) continue;
        facets.insert(std::move(face));
    }
    for (const auto& face : facets) {
        std::vector<PointRefs> sub;
        triangulate(sys, face, sub);
        for (auto& s : sub) {
            s.insert(s.begin(), apex);
            out.push_back(std::move(s));
        }
    }
}

} // namespace

PolytopeOracle polytope_vertex_oracle(const Dag& t, int max_n) {
    require_tree(t);
    if (max_n > 5) throw GraphError("polytope oracle guard is capped at n = 5");
    if (t.vertex_count() > max_n)
        throw GraphError("polytope oracle size guard exceeded");
    LinearSystem sys = polytope_system(t);
    VertexScan scan(sys);
    int need = sys.dim() - (int)scan.echelon.size();
    scan.recurse(0, need);

    PolytopeOracle out;
    for (auto& v : scan.found) out.vertices.push_back(v);

    // Normalized volume via pulling triangulation.  The x-coordinates sum to
    // one, so dropping x_n is a lattice-preserving chart for the affine span.
    int n = t.vertex_count();
    PointRefs pts;
    for (const auto& v : out.vertices) pts.push_back(&v);
    if (pts.empty()) throw GraphError("empty polytope");
    int d = affine_dim(pts);
    if (d == 0) {
        out.normalized_volume = 1;
        return out;
    }
    std::vector<PointRefs> simplices;
    triangulate(sys, pts, simplices);
    mpq_class total = 0;
    for (const auto& s : simplices) {
        RationalMatrix m(d, d);
        int row = 0;
        for (size_t k = 1; k < s.size(); ++k, ++row) {
            int col = 0;
            for (int c = 0; c < sys.dim(); ++c) {
                if (c == n - 1) continue; // dropped chart coordinate
                m.at(row, col++) = (*s[k])[c] - (*s[0])[c];
            }
        }
        mpq_class dv = m.det();
        total += dv < 0 ? mpq_class(-dv) : dv;
    }
    if (total.get_den() != 1)
        throw GraphError("non-integer normalized volume");
    out.normalized_volume = total.get_num();
    return out;
}

} // namespace gbn
