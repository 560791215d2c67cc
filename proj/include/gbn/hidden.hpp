#pragma once

#include "gbn/dag.hpp"
#include "gbn/tetrad.hpp"

namespace gbn {

/// Hidden/observed split with the hidden part upstream: no edge from an
/// observed vertex into a hidden one.  Construction validates this.
struct UpstreamGrading {
    VertexPartition partition;
};

UpstreamGrading make_upstream_grading(const Dag& g, VertexSet hidden);

struct UpstreamDegree {
    bool homogeneous = false;
    std::pair<int, int> degree{0, 0};     // valid when homogeneous
    std::string term_a, term_b;           // witnesses otherwise
};

/// Bidegree of p under the upstream grading.  p must be purely in sigma
/// variables or purely in a/lambda variables; sigma degrees follow the
/// H/O membership table, a_h = (1,0), a_o = (1,2), lambda from hidden to
/// observed = (0,1), all other lambdas = (0,0).
UpstreamDegree upstream_degree(const UpstreamGrading& grading,
                               const ModelPolynomial& p);

/// Generators of the hidden-tree model on the leaves of a rooted directed
/// tree: every vanishing tetrad whose four indices are all leaves.
std::vector<TetradBinomial> hidden_tree_generators(const Dag& t);

/// Whether both monomials of b are perfect pairings of one common set of
/// four distinct indices (the support pattern of a three-term quadratic
/// Pluecker relation).
bool plucker_support_check(const TetradBinomial& b);

/// 0/1 matrix with at most one entry per row and per column, given by the
/// positions of its ones.
struct PartialPermutation {
    int n = 0;
    std::vector<std::pair<int, int>> ones; // sorted, 1-based

    static PartialPermutation make(int n, std::vector<std::pair<int, int>> ones);
};

/// Parse "(1,1),(2,3)" (whitespace tolerated); empty string means the zero
/// matrix.
PartialPermutation parse_partial_permutation(const std::string& text, int n);

struct HiddenModel {
    Dag graph;
    VertexPartition partition;
};

/// The determinantal-variety graph of a partial permutation: hidden
/// vertices, one per unit entry (numbered first, they are upstream), then
/// the row block [n], then the column block [n'].  Labels record the roles.
HiddenModel build_schubert_graph(const PartialPermutation& w);

/// Determinantal constraints of the hidden model of w: for every triple of
/// a hidden subset C and cross-block subsets A, B of size |C| + 1 with C
/// separating A from B, the determinant of the symbolic block Sigma_{A,B}.
/// Deduplicated, deterministically ordered.  Guarded to n <= 3.
std::vector<ModelPolynomial> schubert_generators(const PartialPermutation& w);

enum class ClassicalKind { FactorAnalysis, DoubledCaterpillar, DoubledSnowflake };

/// Classical hidden-variable constructions.  factor_analysis(p, m) is the
/// complete bipartite graph from p hidden factors to m observed variables;
/// the doubled graphs take two disjoint copies of a six-leaf tree's
/// internal vertices, each copy wired to the shared leaves.  All outputs
/// satisfy: no observed-to-observed edge, and in the doubled graphs no edge
/// between the two hidden copies (checked at construction).
HiddenModel construct_classical_graph(ClassicalKind kind, int p = 0, int m = 0);

/// Translate a sigma-polynomial written in observed coordinates 1..|O| to
/// the ambient graph's vertex numbering via the partition's observed list.
ModelPolynomial observed_to_graph(const ModelPolynomial& p,
                                  const VertexPartition& partition);

} // namespace gbn
