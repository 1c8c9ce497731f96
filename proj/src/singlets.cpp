#include "tcdark/singlets.hpp"

#include <algorithm>
#include <stdexcept>

#include "tcdark/darkspace.hpp"

namespace tcdark::singlets {

bool Matching::crossing() const {
    for (std::size_t x = 0; x < pairs.size(); ++x)
        for (std::size_t y = x + 1; y < pairs.size(); ++y) {
            auto [a, b] = pairs[x];
            auto [c, d] = pairs[y];
            if ((a < c && c < b && b < d) || (c < a && a < d && d < b)) return true;
        }
    return false;
}

bool Matching::has_covered_single() const {
    for (int s : singles)
        for (auto [a, b] : pairs)
            if (a < s && s < b) return true;
    return false;
}

std::string Matching::str() const {
    std::string out;
    for (auto [a, b] : pairs)
        out += "(" + std::to_string(a) + "," + std::to_string(b) + ")";
    if (!singles.empty()) {
        out += "[";
        for (std::size_t i = 0; i < singles.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(singles[i]);
        }
        out += "]";
    }
    return out;
}

namespace {

void enumerate_rec(int n, int remaining_pairs, std::vector<bool>& used, Matching& work,
                   std::vector<Matching>& out) {
    int p = 0;
    for (int a = 1; a <= n; ++a)
        if (!used[static_cast<std::size_t>(a)]) {
            p = a;
            break;
        }
    if (p == 0 || remaining_pairs == 0) {
        if (remaining_pairs != 0) return;
        Matching m = work;
        std::vector<bool> covered(static_cast<std::size_t>(n) + 1, false);
        for (auto [a, b] : m.pairs) covered[static_cast<std::size_t>(a)] = covered[static_cast<std::size_t>(b)] = true;
        for (int a = 1; a <= n; ++a)
            if (!covered[static_cast<std::size_t>(a)]) m.singles.push_back(a);
        out.push_back(std::move(m));
        return;
    }
    used[static_cast<std::size_t>(p)] = true;
    for (int q = p + 1; q <= n; ++q) {
        if (used[static_cast<std::size_t>(q)]) continue;
        used[static_cast<std::size_t>(q)] = true;
        work.pairs.emplace_back(p, q);
        enumerate_rec(n, remaining_pairs - 1, used, work, out);
        work.pairs.pop_back();
        used[static_cast<std::size_t>(q)] = false;
    }
    // leave p single
    enumerate_rec(n, remaining_pairs, used, work, out);
    used[static_cast<std::size_t>(p)] = false;
}

}  // namespace

std::vector<Matching> enumerate_matchings(int n, int k, MatchingFamily fam) {
    if (n < 1 || n > 16) throw std::invalid_argument("enumerate_matchings: n out of range");
    if (k < 0) throw std::invalid_argument("enumerate_matchings: negative k");
    std::vector<Matching> out;
    if (2 * k > n) return out;
    Matching work;
    work.n = n;
    std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
    enumerate_rec(n, k, used, work, out);
    if (fam == MatchingFamily::non_crossing_uncovered) {
        std::erase_if(out, [](const Matching& m) {
            return m.crossing() || m.has_covered_single();
        });
    }
    return out;
}

QVec expand_matching(const Matching& m) {
    int n = m.n;
    int k = m.k();
    if (n < 1) throw std::invalid_argument("expand_matching: empty matching");
    if (static_cast<int>(m.pairs.size() * 2 + m.singles.size()) != n)
        throw std::invalid_argument("expand_matching: atoms not partitioned");
    SectorBasis sector(n, k);
    QVec v = zero_vector<Rational>(sector_desc(n, k));
    // One term per choice of excited end in each pair; exciting the smaller
    // atom carries the minus sign.
    for (std::uint32_t choice = 0; choice < (std::uint32_t{1} << k); ++choice) {
        AtomBasisState s(0u, n);
        int sign = 1;
        for (int t = 0; t < k; ++t) {
            auto [a, b] = m.pairs[static_cast<std::size_t>(t)];
            if ((choice >> t) & 1u) {
                s = s.with_set(a);
                sign = -sign;
            } else {
                s = s.with_set(b);
            }
        }
        v.amps[sector.index_of(s)] += sign;
    }
    return v;
}

namespace {

void check_sector_vec(const QVec& v, const char* who) {
    if (v.basis.kind != BasisKind::sector || v.amps.size() != v.basis.dim)
        throw std::invalid_argument(std::string(who) + ": need a weight-sector vector");
}

void check_atom_pair(int n, int i, int j, const char* who) {
    if (i < 1 || j < 1 || i > n || j > n || i == j)
        throw std::invalid_argument(std::string(who) + ": bad atom pair");
}

AtomBasisState swapped(const AtomBasisState& s, int i, int j) {
    bool ei = s.excited(i);
    bool ej = s.excited(j);
    if (ei == ej) return s;
    AtomBasisState t = s;
    t = ei ? t.with_cleared(i).with_set(j) : t.with_set(i).with_cleared(j);
    return t;
}

}  // namespace

QVec antisymmetrize(const QVec& v, int i, int j) {
    check_sector_vec(v, "antisymmetrize");
    check_atom_pair(v.basis.n, i, j, "antisymmetrize");
    SectorBasis sector(v.basis.n, v.basis.tag);
    QVec out = zero_vector<Rational>(v.basis);
    for (std::size_t idx = 0; idx < sector.size(); ++idx)
        out.amps[idx] = v.amps[idx] - v.amps[sector.index_of(swapped(sector.state(idx), i, j))];
    return out;
}

QVec singlet_project(const QVec& v, int i, int j) {
    check_sector_vec(v, "singlet_project");
    check_atom_pair(v.basis.n, i, j, "singlet_project");
    if (i > j) std::swap(i, j);
    SectorBasis sector(v.basis.n, v.basis.tag);
    QVec out = zero_vector<Rational>(v.basis);
    for (std::size_t idx = 0; idx < sector.size(); ++idx) {
        const AtomBasisState& s = sector.state(idx);
        if (s.excited(i) == s.excited(j)) continue;  // no singlet component
        std::size_t partner = sector.index_of(swapped(s, i, j));
        // Component along |rest> x singlet, re-expanded; the swap-symmetric
        // half of (amps[idx], amps[partner]) drops out.
        out.amps[idx] = (v.amps[idx] - v.amps[partner]) / 2;
    }
    return out;
}

SparseOperator<Rational> antisymmetrizer_matrix(int n, int k, int i, int j) {
    SectorBasis sector(n, k);
    SparseOperator<Rational> op(sector_desc(n, k), sector_desc(n, k));
    for (std::size_t c = 0; c < sector.size(); ++c) {
        QVec e = zero_vector<Rational>(sector_desc(n, k));
        e.amps[c] = 1;
        QVec col = antisymmetrize(e, i, j);
        for (std::size_t r = 0; r < col.amps.size(); ++r)
            if (col.amps[r] != 0) op.add(r, c, col.amps[r]);
    }
    op.finalize();
    return op;
}

SparseOperator<Rational> singlet_projector_matrix(int n, int k, int i, int j) {
    SectorBasis sector(n, k);
    SparseOperator<Rational> op(sector_desc(n, k), sector_desc(n, k));
    for (std::size_t c = 0; c < sector.size(); ++c) {
        QVec e = zero_vector<Rational>(sector_desc(n, k));
        e.amps[c] = 1;
        QVec col = singlet_project(e, i, j);
        for (std::size_t r = 0; r < col.amps.size(); ++r)
            if (col.amps[r] != 0) op.add(r, c, col.amps[r]);
    }
    op.finalize();
    return op;
}

std::vector<Matching> restricted_matching_basis(int n, int k) {
    std::vector<Matching> fam = enumerate_matchings(n, k, MatchingFamily::non_crossing_uncovered);
    std::int64_t expected = dark::dark_dimension(n, k);
    if (static_cast<std::int64_t>(fam.size()) != expected)
        throw std::logic_error("restricted_matching_basis: family size differs from dark dimension");
    std::vector<std::vector<Rational>> expansions;
    expansions.reserve(fam.size());
    for (const auto& m : fam) {
        QVec v = expand_matching(m);
        if (!dark::is_dark(v))
            throw std::logic_error("restricted_matching_basis: expansion not dark");
        expansions.push_back(std::move(v.amps));
    }
    if (rank_of_vectors(expansions, binomial(n, k)) != fam.size())
        throw std::logic_error("restricted_matching_basis: family not independent");
    return fam;
}

SingletDecomposition singlet_decompose(const QVec& v, MatchingFamily fam) {
    check_sector_vec(v, "singlet_decompose");
    SingletDecomposition d;
    d.family = (fam == MatchingFamily::non_crossing_uncovered)
                   ? restricted_matching_basis(v.basis.n, v.basis.tag)
                   : enumerate_matchings(v.basis.n, v.basis.tag, fam);
    std::vector<std::vector<Rational>> columns;
    columns.reserve(d.family.size());
    for (const auto& m : d.family) columns.push_back(expand_matching(m).amps);
    ExactProjection p = project_onto_span(columns, v.amps);
    d.coefficients = std::move(p.coeffs);
    d.residual_sq = std::move(p.residual_sq);
    return d;
}

Rational pair_span_residual(const QVec& v) {
    check_sector_vec(v, "pair_span_residual");
    int n = v.basis.n;
    int k = v.basis.tag;
    if (k < 1) throw std::invalid_argument("pair_span_residual: sector carries no excitation");
    SectorBasis sector(n, k);
    std::vector<std::vector<Rational>> columns;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            for (std::size_t idx = 0; idx < sector.size(); ++idx) {
                const AtomBasisState& s = sector.state(idx);
                if (s.excited(i) || !s.excited(j)) continue;  // canonical end: i ground, j excited
                std::vector<Rational> col(sector.size(), Rational(0));
                col[idx] = 1;
                col[sector.index_of(swapped(s, i, j))] = -1;
                columns.push_back(std::move(col));
            }
        }
    }
    return project_onto_span(columns, v.amps).residual_sq;
}

}  // namespace tcdark::singlets
