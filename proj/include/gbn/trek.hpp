#pragma once

#include "gbn/dag.hpp"
#include "gbn/poly.hpp"
#include "gbn/ratmat.hpp"

#include <cstdint>
#include <map>

namespace gbn {

/// A colliderless simple path: a descent from a common top vertex to each
/// endpoint.  Both paths start at top; the empty trek from i to i has both
/// paths equal to {i}.
struct Trek {
    Vertex top;
    std::vector<Vertex> left;  // top .. i
    std::vector<Vertex> right; // top .. j

    auto operator<=>(const Trek&) const = default;
};

/// All treks from i to j, ordered by (top, left path, right path).
std::vector<Trek> enumerate_treks(const Dag& g, Vertex i, Vertex j);

/// The trek-rule image of s(i,j): sum over treks of a_top times the product
/// of edge weights.  Zero polynomial when no trek exists.
ModelPolynomial trek_rule_sigma(const Dag& g, Vertex i, Vertex j);

/// Lazily-filled table of trek-rule images for one graph.
class TrekRuleTable {
public:
    explicit TrekRuleTable(const Dag& g) : g_(&g) {}
    const ModelPolynomial& sigma(int i, int j) const;

private:
    const Dag* g_;
    mutable std::map<std::pair<int, int>, ModelPolynomial> cache_;
};

struct ParameterAssignment {
    std::map<Vertex, mpq_class> a;     // node variances, positive
    std::map<Edge, mpq_class> lambda;  // edge weights, nonzero
    std::map<Vertex, mpq_class> psi2;  // error variances, positive

    bool operator==(const ParameterAssignment&) const = default;
};

/// Deterministic sample from the valid parameter region: small nonzero
/// rational edge weights, positive error variances, node variances from the
/// variance recursion (so validity holds by construction).
ParameterAssignment sample_omega(const Dag& g, std::uint64_t seed);

/// Exact evaluation of a polynomial in a/lambda variables at theta.
mpq_class evaluate(const ModelPolynomial& p, const ParameterAssignment& theta);

/// The symmetric model covariance matrix; exactly positive definite for any
/// valid assignment (checked via leading principal minors).
RationalMatrix model_covariance(const Dag& g, const ParameterAssignment& theta);

/// Inverse of the parametrization: a_i = sigma_ii, lambda by per-vertex
/// normal equations, psi2 back-solved from the variance recursion.
ParameterAssignment recover_parameters(const Dag& g, const RationalMatrix& sigma);

} // namespace gbn
