#pragma once

#include "gbn/dag.hpp"
#include "gbn/tetrad.hpp"

#include <gmpxx.h>

namespace gbn {

/// Linear equalities/inequalities in the coordinates x_1..x_n (vertices)
/// followed by y_e (edges, in sorted edge order).  Inequalities read
/// coeff . v >= rhs.
struct LinearSystem {
    struct Row {
        std::vector<long> coeff;
        long rhs = 0;
    };
    int n = 0;
    std::vector<Edge> edge_order;
    std::vector<Row> equalities;
    std::vector<Row> inequalities;

    int dim() const { return n + (int)edge_order.size(); }
    std::string coord_name(int idx) const;
    bool satisfied(const std::vector<mpq_class>& v) const;
};

struct TreeGenerators {
    std::vector<ModelPolynomial> linear;    // sigma variables with no trek
    std::vector<TetradBinomial> quadratic;  // vanishing tetrads
};

/// Generators of the vanishing ideal of a tree model: linear forms plus the
/// quadratic tetrad constraints.
TreeGenerators tree_ideal_generators(const Dag& t);

/// The facet system of the trek polytope of a tree: nonnegativity, the
/// x-simplex equality, one inequality per edge and one per vertex.
LinearSystem polytope_system(const Dag& t);

/// 0/1 exponent vectors of the trek monomials, one per connected vertex
/// pair (i, i) pairs included, (i, j) lexicographic order.
std::vector<std::vector<int>> exponent_vectors(const Dag& t);

/// Degree of the tree ideal for downward directed forests, by the
/// edge-removal recursion with shape memoization; multiplicative over
/// components; 1 for a single vertex.
mpz_class tree_degree(const Dag& t);

struct PolytopeOracle {
    std::vector<std::vector<mpq_class>> vertices; // sorted, deduplicated
    mpz_class normalized_volume;
};

/// Brute-force polytope oracle: vertices by exhaustive enumeration of tight
/// subsystems, normalized volume by a pulling triangulation with exact
/// determinants.  Guarded to small trees.
PolytopeOracle polytope_vertex_oracle(const Dag& t, int max_n = 5);

} // namespace gbn
