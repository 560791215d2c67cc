#pragma once

#include "gbn/dag.hpp"
#include "gbn/poly.hpp"
#include "gbn/trek.hpp"

#include <array>

namespace gbn {

enum class ChokeSide { ISide, JSide, Both };

struct ChokeReport {
    // Choke vertices with side tags, in trek-traversal order (i-side first).
    std::vector<std::pair<Vertex, ChokeSide>> points;
    // Set when there is no trek between I and J at all.
    bool trivially_vanishing = false;

    bool contains(Vertex v) const;
};

/// Exact choke-point set between I and J by exhaustive trek enumeration.
/// The I-side of a trek from i to j is the descent top..i (top inclusive);
/// the J-side is top..j.
ChokeReport choke_points(const Dag& g, const VertexSet& I, const VertexSet& J);

/// Whether s(i,j)s(k,l) - s(i,l)s(j,k) vanishes on the model, decided by the
/// choke criterion between {i,k} and {j,l}.  Indices may coincide.
bool tetrad_vanishes(const Dag& g, Vertex i, Vertex j, Vertex k, Vertex l);

/// Canonical vanishing quadratic binomial: plus - minus, each monomial a
/// sorted pair of sigma index pairs, with plus > minus in term order.
struct TetradBinomial {
    using SigmaPair = std::pair<int, int>; // i <= j
    std::array<SigmaPair, 2> plus, minus;

    static TetradBinomial canonical(SigmaPair m1a, SigmaPair m1b,
                                    SigmaPair m2a, SigmaPair m2b);
    ModelPolynomial poly() const;
    std::string str() const;
    auto operator<=>(const TetradBinomial&) const = default;
};

/// All vanishing tetrad binomials over index multisets of size four whose
/// four sigma factors are nonzero on the model, deduplicated up to sign and
/// deterministically ordered.  Parallel over quadruples (OpenMP).
std::vector<TetradBinomial> all_vanishing_tetrads(const Dag& g);
/// Straight-line reference implementation of the same scan.
std::vector<TetradBinomial> all_vanishing_tetrads_serial(const Dag& g);

/// Complete membership test for the vanishing ideal: substitutes the trek
/// rule into p and checks for the zero polynomial.
bool verify_vanishing(const Dag& g, const ModelPolynomial& p);

} // namespace gbn
