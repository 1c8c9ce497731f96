#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tcdark {

// Default cap on the register size; keeps every C(n,k) addressable and the
// enumeration affordable. Callers that know better may raise it per call up
// to the width of the stored word.
inline constexpr int kMaxAtoms = 24;
inline constexpr int kHardMaxAtoms = 32;

// Configuration of n two-level atoms. Atom 1 is the leftmost character of the
// printed string, i.e. bit n-1 of the stored word, so numeric order on `bits`
// coincides with lexicographic order on the strings.
struct AtomBasisState {
    std::uint32_t bits = 0;
    int n = 0;

    AtomBasisState() = default;
    AtomBasisState(std::uint32_t bits, int n);

    int weight() const;             // number of excited atoms
    bool excited(int atom) const;   // atoms are numbered 1..n
    AtomBasisState with_cleared(int atom) const;
    AtomBasisState with_set(int atom) const;
    AtomBasisState complement() const;
    std::string str() const;

    static AtomBasisState parse(std::string_view s);

    friend auto operator<=>(const AtomBasisState&, const AtomBasisState&) = default;
};

// C(n,k); zero outside 0 <= k <= n. Exact for every n <= 34.
std::uint64_t binomial(int n, int k);

// All weight-k states of n atoms in lexicographic order. Positions are
// recovered by the combinatorial number system, so index_of needs no lookup
// table.
class SectorBasis {
public:
    SectorBasis() = default;
    SectorBasis(int n, int k, int max_n = kMaxAtoms);

    int n() const { return n_; }
    int k() const { return k_; }
    std::size_t size() const { return states_.size(); }
    const std::vector<AtomBasisState>& states() const { return states_; }
    const AtomBasisState& state(std::size_t i) const { return states_[i]; }
    std::size_t index_of(const AtomBasisState& s) const;

private:
    int n_ = 0;
    int k_ = 0;
    std::vector<AtomBasisState> states_;
};

SectorBasis enumerate_sector(int n, int k, int max_n = kMaxAtoms);

// True when j2 arises from j by relaxing exactly one excited atom.
bool emission_related(const AtomBasisState& j, const AtomBasisState& j2);

// Weight-(w+1) states one photon emission above a common parent, ascending.
struct FamilyTable {
    AtomBasisState parent;
    std::vector<AtomBasisState> members;
};

FamilyTable family(const AtomBasisState& parent);

// Minimal number of 01 <-> 10 swaps connecting two states of equal weight.
// Equals half the Hamming distance.
int transposition_distance(const AtomBasisState& a, const AtomBasisState& b);

// Ranks of all weight-(k-1) states and weight-k states relative to a chosen
// root j0 of weight k-1.
//   ancestor_rank[p] = transposition_distance(ancestors[p], j0)
//   member_rank[j]   = min ancestor rank over the parents of member j
//   rem[p]           = atoms excited in j0 but not in ancestors[p], ascending
struct RankAssignment {
    AtomBasisState j0;
    SectorBasis ancestors;   // weight k-1
    SectorBasis members;     // weight k
    std::vector<int> ancestor_rank;
    std::vector<int> member_rank;
    std::vector<std::vector<int>> rem;
};

RankAssignment rank_assignment(int n, int k, const AtomBasisState& j0);

}  // namespace tcdark
