#include "tcdark/darkspace.hpp"

#include <stdexcept>

#include "tcdark/operators.hpp"

namespace tcdark::dark {

std::int64_t dark_dimension(int n, int k) {
    if (n < 1 || n > kMaxAtoms) throw std::invalid_argument("dark_dimension: n out of range");
    if (k < 0 || k > n) throw std::invalid_argument("dark_dimension: k out of range");
    std::int64_t d = static_cast<std::int64_t>(binomial(n, k)) -
                     static_cast<std::int64_t>(binomial(n, k - 1));
    return d > 0 ? d : 0;
}

std::int64_t transparent_dimension(int n, int k) {
    if (n < 1 || n > kMaxAtoms) throw std::invalid_argument("transparent_dimension: n out of range");
    if (k < 0 || k > n) throw std::invalid_argument("transparent_dimension: k out of range");
    std::int64_t d = static_cast<std::int64_t>(binomial(n, k)) -
                     static_cast<std::int64_t>(binomial(n, k + 1));
    return d > 0 ? d : 0;
}

namespace {

SubspaceBasis kernel_subspace(SubspaceKind kind, int n, int k,
                              const SparseOperator<Rational>& op) {
    SubspaceBasis b;
    b.kind = kind;
    b.n = n;
    b.k = k;
    b.sector = enumerate_sector(n, k);
    b.vectors = canonical_kernel_basis(op);
    return b;
}

void check_couplings(int n, std::span<const Rational> couplings, const char* who) {
    if (static_cast<int>(couplings.size()) != n)
        throw std::invalid_argument(std::string(who) + ": coupling count must equal n");
}

}  // namespace

SubspaceBasis dark_basis(int n, int k, std::span<const Rational> couplings) {
    check_couplings(n, couplings, "dark_basis");
    return kernel_subspace(SubspaceKind::dark, n, k, ops::lowering_matrix(n, k, couplings));
}

SubspaceBasis transparent_basis(int n, int k, std::span<const Rational> couplings) {
    check_couplings(n, couplings, "transparent_basis");
    return kernel_subspace(SubspaceKind::transparent, n, k,
                           ops::raising_matrix(n, k, couplings));
}

SubspaceBasis invisible_basis(int n, int k, std::span<const Rational> couplings) {
    check_couplings(n, couplings, "invisible_basis");
    // Intersection of the two kernels: stack both constraint systems.
    SparseOperator<Rational> low = ops::lowering_matrix(n, k, couplings);
    SparseOperator<Rational> high = ops::raising_matrix(n, k, couplings);
    BasisDesc stacked = generic_desc(low.rows() + high.rows());
    SparseOperator<Rational> both(low.domain(), stacked);
    for (std::size_t r = 0; r < low.rows(); ++r)
        for (const auto& e : low.row(r)) both.add(r, e.col, e.value);
    for (std::size_t r = 0; r < high.rows(); ++r)
        for (const auto& e : high.row(r)) both.add(low.rows() + r, e.col, e.value);
    both.finalize();
    return kernel_subspace(SubspaceKind::invisible, n, k, both);
}

SubspaceBasis dark_basis(int n, int k) { return dark_basis(n, k, ops::unit_couplings(n)); }
SubspaceBasis transparent_basis(int n, int k) {
    return transparent_basis(n, k, ops::unit_couplings(n));
}
SubspaceBasis invisible_basis(int n, int k) {
    return invisible_basis(n, k, ops::unit_couplings(n));
}

std::vector<Rational> witness_vector(int n, int k, const AtomBasisState& j0) {
    if (n < 1 || n > kMaxAtoms) throw std::invalid_argument("witness_vector: n out of range");
    if (k < 1 || k > n) throw std::invalid_argument("witness_vector: k out of range");
    if (2 * k > n + 1)
        throw std::invalid_argument("witness_vector: requires 2k <= n+1");
    RankAssignment ranks = rank_assignment(n, k, j0);
    std::vector<Rational> w(ranks.members.size(), Rational(0));
    for (std::size_t j = 0; j < ranks.members.size(); ++j) {
        int p = ranks.member_rank[j];
        // (-1)^p p! / prod_{i=0..p} (n-k+1-i); p <= k-1 <= n-k keeps every
        // factor positive.
        Rational num((p % 2 == 0) ? 1 : -1);
        Rational den(1);
        for (int i = 1; i <= p; ++i) num *= i;
        for (int i = 0; i <= p; ++i) den *= (n - k + 1 - i);
        w[j] = num / den;
    }
    return w;
}

namespace {

void check_sector_vec(const QVec& v, const char* who) {
    if (v.basis.kind != BasisKind::sector)
        throw std::invalid_argument(std::string(who) + ": vector must live on one weight sector");
    if (v.amps.size() != v.basis.dim)
        throw std::invalid_argument(std::string(who) + ": amplitude count mismatch");
}

bool vanishes(const QVec& v) {
    for (const auto& a : v.amps)
        if (a != 0) return false;
    return true;
}

}  // namespace

bool is_dark(const QVec& v, std::span<const Rational> couplings) {
    check_sector_vec(v, "is_dark");
    return vanishes(tcdark::apply(ops::lowering_matrix(v.basis.n, v.basis.tag, couplings), v));
}

bool is_transparent(const QVec& v, std::span<const Rational> couplings) {
    check_sector_vec(v, "is_transparent");
    return vanishes(tcdark::apply(ops::raising_matrix(v.basis.n, v.basis.tag, couplings), v));
}

bool is_invisible(const QVec& v, std::span<const Rational> couplings) {
    return is_dark(v, couplings) && is_transparent(v, couplings);
}

bool is_dark(const QVec& v) { return is_dark(v, ops::unit_couplings(v.basis.n)); }
bool is_transparent(const QVec& v) { return is_transparent(v, ops::unit_couplings(v.basis.n)); }
bool is_invisible(const QVec& v) { return is_invisible(v, ops::unit_couplings(v.basis.n)); }

bool is_dark(const CVec& v, std::span<const double> couplings, double tol) {
    if (v.basis.kind != BasisKind::sector)
        throw std::invalid_argument("is_dark: vector must live on one weight sector");
    int n = v.basis.n;
    int k = v.basis.tag;
    if (static_cast<int>(couplings.size()) != n)
        throw std::invalid_argument("is_dark: coupling count must equal n");
    if (k == 0) return true;
    SectorBasis domain(n, k);
    SectorBasis parents(n, k - 1);
    std::vector<std::complex<double>> out(parents.size(), 0.0);
    for (std::size_t c = 0; c < domain.size(); ++c) {
        if (v.amps[c] == 0.0) continue;
        const AtomBasisState& j = domain.state(c);
        for (int a = 1; a <= n; ++a)
            if (j.excited(a))
                out[parents.index_of(j.with_cleared(a))] +=
                    couplings[static_cast<std::size_t>(a - 1)] * v.amps[c];
    }
    for (const auto& x : out)
        if (std::abs(x) > tol) return false;
    return true;
}

std::vector<BigInt> integer_scaled(std::span<const Rational> v) {
    BigInt lcm_den(1);
    for (const auto& r : v) {
        if (r == 0) continue;
        BigInt d = denominator(r);
        lcm_den = lcm(lcm_den, d);
    }
    std::vector<BigInt> out;
    out.reserve(v.size());
    BigInt gcd_all(0);
    for (const auto& r : v) {
        BigInt scaled = numerator(r) * (lcm_den / denominator(r));
        gcd_all = gcd(gcd_all, scaled);
        out.push_back(std::move(scaled));
    }
    if (gcd_all == 0) return out;
    bool flip = false;
    for (const auto& x : out) {
        if (x != 0) {
            flip = x < 0;
            break;
        }
    }
    for (auto& x : out) {
        x /= gcd_all;
        if (flip) x = -x;
    }
    return out;
}

}  // namespace tcdark::dark
