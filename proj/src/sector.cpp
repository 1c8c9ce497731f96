#include "tcdark/sector.hpp"

#include <bit>
#include <limits>
#include <stdexcept>

namespace tcdark {

AtomBasisState::AtomBasisState(std::uint32_t b, int atoms) : bits(b), n(atoms) {
    if (n < 1 || n > kHardMaxAtoms)
        throw std::invalid_argument("AtomBasisState: atom count out of range");
    if (n < kHardMaxAtoms && (bits >> n) != 0)
        throw std::invalid_argument("AtomBasisState: bits exceed atom count");
}

int AtomBasisState::weight() const { return std::popcount(bits); }

bool AtomBasisState::excited(int atom) const {
    if (atom < 1 || atom > n) throw std::invalid_argument("AtomBasisState: atom index out of range");
    return (bits >> (n - atom)) & 1u;
}

AtomBasisState AtomBasisState::with_cleared(int atom) const {
    if (atom < 1 || atom > n) throw std::invalid_argument("AtomBasisState: atom index out of range");
    return AtomBasisState(bits & ~(std::uint32_t{1} << (n - atom)), n);
}

AtomBasisState AtomBasisState::with_set(int atom) const {
    if (atom < 1 || atom > n) throw std::invalid_argument("AtomBasisState: atom index out of range");
    return AtomBasisState(bits | (std::uint32_t{1} << (n - atom)), n);
}

AtomBasisState AtomBasisState::complement() const {
    std::uint32_t mask = (n == kHardMaxAtoms) ? ~std::uint32_t{0}
                                              : ((std::uint32_t{1} << n) - 1);
    return AtomBasisState(bits ^ mask, n);
}

std::string AtomBasisState::str() const {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int a = 1; a <= n; ++a)
        if (excited(a)) s[static_cast<std::size_t>(a - 1)] = '1';
    return s;
}

AtomBasisState AtomBasisState::parse(std::string_view s) {
    if (s.empty() || s.size() > static_cast<std::size_t>(kHardMaxAtoms))
        throw std::invalid_argument("AtomBasisState: bad string length");
    std::uint32_t bits = 0;
    for (char c : s) {
        bits <<= 1;
        if (c == '1') bits |= 1u;
        else if (c != '0') throw std::invalid_argument("AtomBasisState: invalid character");
    }
    return AtomBasisState(bits, static_cast<int>(s.size()));
}

namespace {

struct BinomialTable {
    // Row n holds C(n,0..n); n <= 34 keeps everything inside uint64.
    static constexpr int kRows = 35;
    std::uint64_t c[kRows][kRows] = {};
    BinomialTable() {
        for (int n = 0; n < kRows; ++n) {
            c[n][0] = 1;
            for (int k = 1; k <= n; ++k)
                c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
        }
    }
};

const BinomialTable& table() {
    static const BinomialTable t;
    return t;
}

}  // namespace

std::uint64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (n >= BinomialTable::kRows) throw std::invalid_argument("binomial: n too large");
    return table().c[n][k];
}

SectorBasis::SectorBasis(int n, int k, int max_n) : n_(n), k_(k) {
    if (max_n < 1 || max_n > kHardMaxAtoms)
        throw std::invalid_argument("SectorBasis: bad cap");
    if (n < 1 || n > max_n) throw std::invalid_argument("SectorBasis: n out of range");
    if (k < 0 || k > n) throw std::invalid_argument("SectorBasis: k out of range");
    states_.reserve(binomial(n, k));
    if (k == 0) {
        states_.emplace_back(0u, n);
        return;
    }
    std::uint64_t v = (std::uint64_t{1} << k) - 1;
    std::uint64_t limit = (n == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << n);
    while (v < limit) {
        states_.emplace_back(static_cast<std::uint32_t>(v), n);
        // Gosper's hack: next higher integer with the same popcount.
        std::uint64_t t = v | (v - 1);
        v = (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
    }
}

std::size_t SectorBasis::index_of(const AtomBasisState& s) const {
    if (s.n != n_) throw std::invalid_argument("SectorBasis: atom count mismatch");
    if (s.weight() != k_) throw std::invalid_argument("SectorBasis: weight mismatch");
    std::size_t rank = 0;
    int remaining = k_;
    for (int a = 1; a <= n_ && remaining > 0; ++a) {
        if (s.excited(a)) {
            rank += binomial(n_ - a, remaining);
            --remaining;
        }
    }
    return rank;
}

SectorBasis enumerate_sector(int n, int k, int max_n) { return SectorBasis(n, k, max_n); }

bool emission_related(const AtomBasisState& j, const AtomBasisState& j2) {
    if (j.n != j2.n) throw std::invalid_argument("emission_related: atom count mismatch");
    std::uint32_t diff = j.bits ^ j2.bits;
    return std::popcount(diff) == 1 && (j.bits & diff) != 0;
}

FamilyTable family(const AtomBasisState& parent) {
    FamilyTable t;
    t.parent = parent;
    // Higher atom numbers sit at lower bits, so walking atoms right to left
    // emits members in ascending numeric (= lexicographic) order.
    for (int a = parent.n; a >= 1; --a)
        if (!parent.excited(a)) t.members.push_back(parent.with_set(a));
    for (std::size_t i = 1; i < t.members.size(); ++i)
        if (!(t.members[i - 1] < t.members[i]))
            throw std::logic_error("family: members not ascending");
    return t;
}

int transposition_distance(const AtomBasisState& a, const AtomBasisState& b) {
    if (a.n != b.n) throw std::invalid_argument("transposition_distance: atom count mismatch");
    if (a.weight() != b.weight())
        throw std::invalid_argument("transposition_distance: weight mismatch");
    return std::popcount(a.bits & ~b.bits);
}

RankAssignment rank_assignment(int n, int k, const AtomBasisState& j0) {
    if (k < 1) throw std::invalid_argument("rank_assignment: k must be positive");
    if (j0.n != n) throw std::invalid_argument("rank_assignment: atom count mismatch");
    if (j0.weight() != k - 1)
        throw std::invalid_argument("rank_assignment: root must have weight k-1");
    RankAssignment r;
    r.j0 = j0;
    r.ancestors = enumerate_sector(n, k - 1);
    r.members = enumerate_sector(n, k);
    r.ancestor_rank.resize(r.ancestors.size());
    r.rem.resize(r.ancestors.size());
    for (std::size_t p = 0; p < r.ancestors.size(); ++p) {
        const AtomBasisState& anc = r.ancestors.state(p);
        r.ancestor_rank[p] = transposition_distance(anc, j0);
        for (int a = 1; a <= n; ++a)
            if (j0.excited(a) && !anc.excited(a)) r.rem[p].push_back(a);
    }
    r.member_rank.assign(r.members.size(), std::numeric_limits<int>::max());
    for (std::size_t j = 0; j < r.members.size(); ++j) {
        const AtomBasisState& m = r.members.state(j);
        for (int a = 1; a <= n; ++a) {
            if (!m.excited(a)) continue;
            std::size_t p = r.ancestors.index_of(m.with_cleared(a));
            r.member_rank[j] = std::min(r.member_rank[j], r.ancestor_rank[p]);
        }
    }
    return r;
}

}  // namespace tcdark
