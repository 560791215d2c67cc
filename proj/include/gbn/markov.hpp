#pragma once

#include "gbn/dag.hpp"
#include "gbn/poly.hpp"
#include "gbn/ratmat.hpp"

namespace gbn {

/// Canonical conditional-independence triple: A, B, C pairwise disjoint,
/// A and B nonempty, min(A) < min(B).
struct CiStatement {
    VertexSet A, B, C;
    auto operator<=>(const CiStatement&) const = default;
};

CiStatement make_ci(VertexSet A, VertexSet B, VertexSet C);

/// Reachability-based d-separation with direction-of-entry states.
bool d_separated(const Dag& g, const VertexSet& A, const VertexSet& B,
                 const VertexSet& C);

/// All canonical d-separated triples with |A|, |B| <= amax and |C| <= cmax,
/// deterministically ordered.  No minimality filtering.
std::vector<CiStatement> enumerate_ci_statements(const Dag& g, int amax,
                                                 int cmax);

/// The (|C|+1)-minors of the symbolic matrix Sigma_{A u C, B u C}, rows A
/// then C ascending, columns B then C ascending, in lexicographic
/// row-set/col-set order.
std::vector<ModelPolynomial> ci_minor_polynomials(const CiStatement& stmt);

/// Exact test: rank(Sigma_{A u C, B u C}) <= |C|.
bool ci_rank_test(const RationalMatrix& sigma, const CiStatement& stmt);

} // namespace gbn
