#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tcdark/linalg.hpp"
#include "tcdark/sector.hpp"

namespace tcdark::singlets {

// k disjoint atom pairs plus the uncovered atoms; atoms are 1-based and each
// pair is stored with its smaller atom first.
struct Matching {
    int n = 0;
    std::vector<std::pair<int, int>> pairs;
    std::vector<int> singles;

    int k() const { return static_cast<int>(pairs.size()); }
    bool crossing() const;            // two arcs interleave
    bool has_covered_single() const;  // a single sits under an arc
    std::string str() const;
};

enum class MatchingFamily { all, non_crossing_uncovered };

// All k-pair matchings of n atoms, deterministic order (smallest free atom is
// paired before it is left single, partners ascending). The restricted family
// keeps only non-crossing matchings whose singles lie outside every arc.
// Guarded at n <= 16: the unrestricted count grows factorially.
std::vector<Matching> enumerate_matchings(int n, int k, MatchingFamily fam);

// Product of two-atom singlets (smaller atom ground, larger excited, minus the
// swap) over the pairs, ground elsewhere; amplitudes are all +-1 on 2^k states
// of the weight-k sector.
QVec expand_matching(const Matching& m);

// v minus v with atoms i and j swapped.
QVec antisymmetrize(const QVec& v, int i, int j);

// Orthogonal projection onto states carrying the (i,j) pair singlet.
QVec singlet_project(const QVec& v, int i, int j);

// The same two maps materialized entrywise by independent routes, for exact
// operator-identity checks.
SparseOperator<Rational> antisymmetrizer_matrix(int n, int k, int i, int j);
SparseOperator<Rational> singlet_projector_matrix(int n, int k, int i, int j);

// Restricted family, verified on construction: expansions are dark under
// equal couplings, their exact rank equals the family size, and that size
// equals the dark dimension.
std::vector<Matching> restricted_matching_basis(int n, int k);

struct SingletDecomposition {
    std::vector<Matching> family;
    std::vector<Rational> coefficients;
    Rational residual_sq;  // exact squared distance to the family span

    bool exact() const { return residual_sq == 0; }
};

// Exact projection of a sector vector onto the span of matching expansions.
// Non-dark input is not an error: it comes back with a nonzero residual.
SingletDecomposition singlet_decompose(const QVec& v,
                                       MatchingFamily fam = MatchingFamily::non_crossing_uncovered);

// Exact squared distance to the span of all single-pair singlet products
// (every pair, every rest configuration). k = 0 has no pair to act on.
Rational pair_span_residual(const QVec& v);

}  // namespace tcdark::singlets
