#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "tcdark/darkspace.hpp"
#include "tcdark/operators.hpp"

using namespace tcdark;
using namespace tcdark::dark;

namespace {

// Floating-point nullity oracle: Gaussian elimination with partial pivoting on
// the dense lowering matrix, independent of the exact rational route.
std::size_t float_nullity(int n, int k) {
    SparseOperator<Rational> low = ops::lowering_matrix(n, k, ops::unit_couplings(n));
    std::size_t rows = low.codomain().dim, cols = low.domain().dim;
    std::vector<std::vector<double>> m(rows, std::vector<double>(cols, 0.0));
    for (std::size_t r = 0; r < rows; ++r)
        for (const auto& e : low.row(r)) m[r][e.col] = to_double(e.value);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t best = rank;
        for (std::size_t r = rank + 1; r < rows; ++r)
            if (std::fabs(m[r][c]) > std::fabs(m[best][c])) best = r;
        if (std::fabs(m[best][c]) < 1e-10) continue;
        std::swap(m[best], m[rank]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank) continue;
            double f = m[r][c] / m[rank][c];
            if (f == 0.0) continue;
            for (std::size_t cc = c; cc < cols; ++cc) m[r][cc] -= f * m[rank][cc];
        }
        ++rank;
    }
    return cols - rank;
}

}  // namespace

TEST_CASE("dimension formula against independent float elimination") {
    for (int n = 1; n <= 8; ++n)
        for (int k = 0; k <= n; ++k) {
            auto expected = dark_dimension(n, k);
            CHECK(expected == std::max<std::int64_t>(
                                  static_cast<std::int64_t>(binomial(n, k)) -
                                      static_cast<std::int64_t>(binomial(n, k - 1)),
                                  0));
            CHECK(static_cast<std::int64_t>(float_nullity(n, k)) == expected);
            CHECK(static_cast<std::int64_t>(dark_basis(n, k).dimension()) == expected);
        }
}

TEST_CASE("catalan diagonal") {
    // k = 0 would need an empty register, which the sector machinery rejects
    const std::int64_t catalan[] = {1, 1, 2, 5, 14, 42, 132};
    for (int k = 1; k <= 6; ++k) CHECK(dark_dimension(2 * k, k) == catalan[k]);
}

TEST_CASE("transparent dimension mirrors dark through the complement") {
    for (int n = 1; n <= 8; ++n)
        for (int k = 0; k <= n; ++k) {
            CHECK(transparent_dimension(n, k) == dark_dimension(n, n - k));
            CHECK(static_cast<std::int64_t>(transparent_basis(n, k).dimension()) ==
                  transparent_dimension(n, k));
        }
}

TEST_CASE("two-atom dark vector is the singlet") {
    SubspaceBasis basis = dark_basis(2, 1);
    REQUIRE(basis.dimension() == 1);
    REQUIRE(basis.sector.state(0).str() == "01");
    REQUIRE(basis.sector.state(1).str() == "10");
    CHECK(basis.vectors[0][0] == Rational(1));
    CHECK(basis.vectors[0][1] == Rational(-1));
}

TEST_CASE("unequal couplings tilt the two-atom kernel") {
    std::vector<Rational> g = {Rational(3), Rational(5)};
    SubspaceBasis basis = dark_basis(2, 1, g);
    REQUIRE(basis.dimension() == 1);
    auto scaled = integer_scaled(basis.vectors[0]);
    CHECK(scaled[0] == 3);
    CHECK(scaled[1] == -5);
    // and the artifact agrees it is dark under those couplings
    QVec v{sector_desc(2, 1), basis.vectors[0]};
    CHECK(is_dark(v, g));
    CHECK_FALSE(is_dark(v));  // not dark under equal couplings
}

TEST_CASE("membership predicates on exact vectors") {
    QVec top{sector_desc(2, 2), {Rational(1)}};
    CHECK_FALSE(is_dark(top));       // |11> emits
    CHECK(is_transparent(top));      // but cannot absorb

    QVec bottom{sector_desc(2, 0), {Rational(1)}};
    CHECK(is_dark(bottom));          // |00> cannot emit
    CHECK_FALSE(is_transparent(bottom));

    QVec singlet{sector_desc(2, 1), {Rational(1), Rational(-1)}};
    CHECK(is_dark(singlet));
    CHECK(is_transparent(singlet));
    CHECK(is_invisible(singlet));

    QVec triplet{sector_desc(2, 1), {Rational(1), Rational(1)}};
    CHECK_FALSE(is_dark(triplet));
    CHECK_FALSE(is_transparent(triplet));
    CHECK_FALSE(is_invisible(triplet));
}

TEST_CASE("every dark basis vector is annihilated exactly") {
    for (int n = 1; n <= 7; ++n)
        for (int k = 0; k <= n; ++k) {
            SubspaceBasis basis = dark_basis(n, k);
            for (const auto& vec : basis.vectors) {
                QVec v{sector_desc(n, k), vec};
                CHECK(is_dark(v));
            }
            SubspaceBasis tr = transparent_basis(n, k);
            for (const auto& vec : tr.vectors) {
                QVec v{sector_desc(n, k), vec};
                CHECK(is_transparent(v));
            }
        }
}

TEST_CASE("canonical basis shape: leading ones at exclusive states") {
    SubspaceBasis basis = dark_basis(6, 3);
    REQUIRE(basis.dimension() == 5);
    for (std::size_t i = 0; i < basis.dimension(); ++i) {
        std::size_t lead = 0;
        while (lead < basis.vectors[i].size() && basis.vectors[i][lead] == 0) ++lead;
        REQUIRE(lead < basis.vectors[i].size());
        CHECK(basis.vectors[i][lead] == Rational(1));
        for (std::size_t j = 0; j < basis.dimension(); ++j)
            if (j != i) CHECK(basis.vectors[j][lead] == Rational(0));
    }
}

TEST_CASE("witness examples") {
    // two atoms, one excitation, parent 00: both members weigh 1/2
    auto w = witness_vector(2, 1, AtomBasisState::parse("00"));
    REQUIRE(w.size() == 2);
    CHECK(w[0] == Rational(1, 2));
    CHECK(w[1] == Rational(1, 2));
}

TEST_CASE("witness images are exact indicators and stack to full rank") {
    for (int n = 2; n <= 7; ++n) {
        for (int k = 1; 2 * k <= n + 1; ++k) {
            SectorBasis parents(n, k - 1);
            SparseOperator<Rational> low = ops::lowering_matrix(n, k, ops::unit_couplings(n));
            std::vector<std::vector<Rational>> witnesses;
            for (std::size_t pi = 0; pi < parents.size(); ++pi) {
                auto w = witness_vector(n, k, parents.state(pi));
                QVec image = tcdark::apply(low, QVec{sector_desc(n, k), w});
                for (std::size_t r = 0; r < image.amps.size(); ++r)
                    CHECK(image.amps[r] == Rational(r == pi ? 1 : 0));
                witnesses.push_back(std::move(w));
            }
            CHECK(rank_of_vectors(witnesses, binomial(n, k)) == parents.size());
        }
    }
    // outside its validity range the construction must refuse
    CHECK_THROWS_AS(witness_vector(4, 3, AtomBasisState::parse("1100")), std::invalid_argument);
}

TEST_CASE("witness amplitudes follow the rank formula") {
    // n=4, k=2, j0=1000: rank-0 members get 1/3, rank-1 members -1/6
    auto w = witness_vector(4, 2, AtomBasisState::parse("1000"));
    SectorBasis sector(4, 2);
    RankAssignment ra = rank_assignment(4, 2, AtomBasisState::parse("1000"));
    for (std::size_t i = 0; i < sector.size(); ++i) {
        if (ra.member_rank[i] == 0) CHECK(w[i] == Rational(1, 3));
        else CHECK(w[i] == Rational(-1, 6));
    }
}

TEST_CASE("invisible states exist only on the balanced diagonal") {
    for (int n = 1; n <= 6; ++n)
        for (int k = 0; k <= n; ++k) {
            SubspaceBasis inv = invisible_basis(n, k);
            if (n == 2 * k) {
                CHECK(inv.dimension() == dark_basis(n, k).dimension());
            } else {
                CHECK(inv.dimension() == 0);
            }
        }
}

TEST_CASE("on the balanced diagonal invisible equals dark") {
    for (int k = 1; k <= 3; ++k) {
        int n = 2 * k;
        SubspaceBasis inv = invisible_basis(n, k);
        SubspaceBasis dk = dark_basis(n, k);
        REQUIRE(inv.dimension() == dk.dimension());
        // canonical form makes equality literal
        for (std::size_t i = 0; i < inv.dimension(); ++i)
            for (std::size_t c = 0; c < inv.vectors[i].size(); ++c)
                CHECK(inv.vectors[i][c] == dk.vectors[i][c]);
        for (const auto& vec : inv.vectors) CHECK(is_invisible(QVec{sector_desc(n, k), vec}));
    }
}

TEST_CASE("unequal couplings kill the two-atom invisible space") {
    std::vector<Rational> g = {Rational(1), Rational(2)};
    for (int k = 0; k <= 2; ++k) CHECK(invisible_basis(2, k, g).dimension() == 0);
}

TEST_CASE("float membership tracks exact membership") {
    SubspaceBasis basis = dark_basis(4, 2);
    CVec v = zero_vector<std::complex<double>>(sector_desc(4, 2));
    for (std::size_t i = 0; i < v.amps.size(); ++i)
        v.amps[i] = to_double(basis.vectors[0][i]);
    std::vector<double> g(4, 1.0);
    CHECK(is_dark(v, g));
    v.amps[0] += 1e-6;
    CHECK_FALSE(is_dark(v, g));
}

TEST_CASE("integer scaling clears denominators and fixes the sign") {
    std::vector<Rational> v = {Rational(-1, 2), Rational(1, 3), Rational(0)};
    auto scaled = integer_scaled(v);
    REQUIRE(scaled.size() == 3);
    CHECK(scaled[0] == 3);
    CHECK(scaled[1] == -2);
    CHECK(scaled[2] == 0);
}

TEST_CASE("mixed-sector input is rejected") {
    QVec v{generic_desc(3), {Rational(1), Rational(0), Rational(0)}};
    CHECK_THROWS_AS(is_dark(v), std::invalid_argument);
    CHECK_THROWS_AS(dark_basis(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(dark_basis(4, 5), std::invalid_argument);
}
