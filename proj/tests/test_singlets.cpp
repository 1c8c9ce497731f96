#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tcdark/darkspace.hpp"
#include "tcdark/singlets.hpp"

using namespace tcdark;
using namespace tcdark::singlets;

namespace {

QVec random_sector_vector(std::mt19937_64& rng, int n, int k) {
    std::uniform_int_distribution<int> num(-3, 3);
    QVec v{sector_desc(n, k), std::vector<Rational>(binomial(n, k))};
    for (auto& x : v.amps) x = Rational(num(rng));
    return v;
}

Matching make_matching(int n, std::vector<std::pair<int, int>> pairs) {
    Matching m;
    m.n = n;
    m.pairs = std::move(pairs);
    std::vector<bool> covered(static_cast<std::size_t>(n) + 1, false);
    for (auto& [i, j] : m.pairs) {
        covered[static_cast<std::size_t>(i)] = true;
        covered[static_cast<std::size_t>(j)] = true;
    }
    for (int a = 1; a <= n; ++a)
        if (!covered[static_cast<std::size_t>(a)]) m.singles.push_back(a);
    return m;
}

}  // namespace

TEST_CASE("matching predicates") {
    Matching crossing = make_matching(4, {{1, 3}, {2, 4}});
    CHECK(crossing.crossing());
    CHECK_FALSE(crossing.has_covered_single());

    Matching nested = make_matching(4, {{1, 4}, {2, 3}});
    CHECK_FALSE(nested.crossing());

    Matching covered = make_matching(3, {{1, 3}});
    CHECK(covered.has_covered_single());  // atom 2 sits under the (1,3) arc
    CHECK_FALSE(covered.crossing());

    Matching outside = make_matching(3, {{1, 2}});
    CHECK_FALSE(outside.has_covered_single());
    CHECK(outside.str() == "(1,2)[3]");
}

TEST_CASE("unrestricted enumeration counts C(n,2k)*(2k-1)!!") {
    auto dfact = [](int m) {  // (2k-1)!! with (−1)!! = 1
        std::int64_t r = 1;
        for (int x = m; x > 1; x -= 2) r *= x;
        return r;
    };
    for (int n = 1; n <= 8; ++n)
        for (int k = 0; 2 * k <= n; ++k) {
            auto fam = enumerate_matchings(n, k, MatchingFamily::all);
            std::int64_t expected =
                static_cast<std::int64_t>(binomial(n, 2 * k)) * dfact(2 * k - 1);
            CHECK(static_cast<std::int64_t>(fam.size()) == expected);
            for (const auto& m : fam) {
                CHECK(m.k() == k);
                CHECK(m.pairs.size() * 2 + m.singles.size() == static_cast<std::size_t>(n));
            }
        }
    CHECK(enumerate_matchings(3, 2, MatchingFamily::all).empty());  // 2k > n
}

TEST_CASE("spec'd small families") {
    auto all42 = enumerate_matchings(4, 2, MatchingFamily::all);
    REQUIRE(all42.size() == 3);
    CHECK(all42[0].str() == "(1,2)(3,4)");
    CHECK(all42[1].str() == "(1,3)(2,4)");
    CHECK(all42[2].str() == "(1,4)(2,3)");

    auto r42 = enumerate_matchings(4, 2, MatchingFamily::non_crossing_uncovered);
    REQUIRE(r42.size() == 2);
    CHECK(r42[0].str() == "(1,2)(3,4)");
    CHECK(r42[1].str() == "(1,4)(2,3)");

    auto r41 = enumerate_matchings(4, 1, MatchingFamily::non_crossing_uncovered);
    REQUIRE(r41.size() == 3);
    CHECK(r41[0].str() == "(1,2)[3,4]");
    CHECK(r41[1].str() == "(2,3)[1,4]");
    CHECK(r41[2].str() == "(3,4)[1,2]");
}

TEST_CASE("frozen two-pair expansions") {
    // sector order: 0011, 0101, 0110, 1001, 1010, 1100
    QVec e1 = expand_matching(make_matching(4, {{1, 3}, {2, 4}}));
    QVec e2 = expand_matching(make_matching(4, {{1, 2}, {3, 4}}));
    QVec e3 = expand_matching(make_matching(4, {{1, 4}, {2, 3}}));
    const Rational v1[] = {1, 0, -1, -1, 0, 1};
    const Rational v2[] = {0, 1, -1, -1, 1, 0};
    const Rational v3[] = {1, -1, 0, 0, -1, 1};
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(e1.amps[i] == v1[i]);
        CHECK(e2.amps[i] == v2[i]);
        CHECK(e3.amps[i] == v3[i]);
        CHECK(e3.amps[i] == e1.amps[i] - e2.amps[i]);
    }
}

TEST_CASE("expansions carry 2^k unit amplitudes and are dark") {
    for (int n = 2; n <= 7; ++n)
        for (int k = 1; 2 * k <= n; ++k)
            for (const auto& m : enumerate_matchings(n, k, MatchingFamily::all)) {
                QVec v = expand_matching(m);
                std::size_t nonzero = 0;
                for (const auto& a : v.amps) {
                    if (a == 0) continue;
                    ++nonzero;
                    CHECK((a == Rational(1) || a == Rational(-1)));
                }
                CHECK(nonzero == (std::size_t{1} << k));
                CHECK(dark::is_dark(v));
            }
}

TEST_CASE("antisymmetrizer on handmade vectors") {
    // triplet is killed, singlet is doubled
    QVec triplet{sector_desc(2, 1), {Rational(1), Rational(1)}};
    QVec killed = antisymmetrize(triplet, 1, 2);
    CHECK(killed.amps[0] == 0);
    CHECK(killed.amps[1] == 0);

    QVec singlet{sector_desc(2, 1), {Rational(1), Rational(-1)}};
    QVec doubled = antisymmetrize(singlet, 1, 2);
    CHECK(doubled.amps[0] == Rational(2));
    CHECK(doubled.amps[1] == Rational(-2));

    CHECK_THROWS_AS(antisymmetrize(singlet, 1, 1), std::invalid_argument);
}

TEST_CASE("projector fixes singlet summands and kills pair-ground products") {
    // s_{1,2} x |0>: states 0110? no: pair (1,2) singlet times atom 3,4 rest 10
    QVec v = expand_matching(make_matching(4, {{1, 2}}));  // s12 x |00> on atoms 3,4
    QVec p = singlet_project(v, 1, 2);
    for (std::size_t i = 0; i < v.amps.size(); ++i) CHECK(p.amps[i] == v.amps[i]);

    // t0: both pair atoms ground, excitation elsewhere
    QVec t0 = zero_vector<Rational>(sector_desc(4, 1));
    t0.amps[SectorBasis(4, 1).index_of(AtomBasisState::parse("0001"))] = 1;
    QVec killed = singlet_project(t0, 1, 2);
    for (const auto& a : killed.amps) CHECK(a == 0);

    CHECK_THROWS_AS(singlet_project(t0, 2, 2), std::invalid_argument);
}

TEST_CASE("projector is idempotent and An = 2P on random vectors") {
    std::mt19937_64 rng(101);
    for (int n = 2; n <= 6; ++n)
        for (int k = 1; k < n; ++k)
            for (int trial = 0; trial < 5; ++trial) {
                QVec v = random_sector_vector(rng, n, k);
                for (int i = 1; i <= n; ++i)
                    for (int j = i + 1; j <= n; ++j) {
                        QVec p = singlet_project(v, i, j);
                        QVec pp = singlet_project(p, i, j);
                        QVec an = antisymmetrize(v, i, j);
                        for (std::size_t c = 0; c < v.amps.size(); ++c) {
                            CHECK(pp.amps[c] == p.amps[c]);
                            CHECK(an.amps[c] == Rational(2) * p.amps[c]);
                        }
                    }
            }
}

TEST_CASE("materialized operators match the vector routes entrywise") {
    for (int n = 2; n <= 5; ++n)
        for (int k = 1; k < n; ++k)
            for (int i = 1; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j) {
                    SparseOperator<Rational> an = antisymmetrizer_matrix(n, k, i, j);
                    SparseOperator<Rational> pr = singlet_projector_matrix(n, k, i, j);
                    REQUIRE(an.domain().dim == pr.domain().dim);
                    for (std::size_t r = 0; r < an.codomain().dim; ++r) {
                        auto ar = an.row(r);
                        auto prr = pr.row(r);
                        REQUIRE(ar.size() == prr.size());
                        for (std::size_t c = 0; c < ar.size(); ++c) {
                            CHECK(ar[c].col == prr[c].col);
                            CHECK(ar[c].value == Rational(2) * prr[c].value);
                        }
                    }
                }
}

TEST_CASE("antisymmetrizing a dark vector keeps it dark") {
    for (int n = 3; n <= 6; ++n)
        for (int k = 1; 2 * k <= n; ++k) {
            dark::SubspaceBasis basis = dark::dark_basis(n, k);
            for (const auto& vec : basis.vectors) {
                QVec v{sector_desc(n, k), vec};
                for (int i = 1; i <= n; ++i)
                    for (int j = i + 1; j <= n; ++j) CHECK(dark::is_dark(antisymmetrize(v, i, j)));
            }
        }
}

TEST_CASE("restricted family is a verified dark basis") {
    for (int n = 1; n <= 8; ++n)
        for (int k = 0; 2 * k <= n; ++k) {
            auto fam = restricted_matching_basis(n, k);
            CHECK(static_cast<std::int64_t>(fam.size()) == dark::dark_dimension(n, k));
        }
}

TEST_CASE("decomposition reproduces spec identity (4,2)_3 = (4,2)_1 - (4,2)_2") {
    QVec e3 = expand_matching(make_matching(4, {{1, 4}, {2, 3}}));
    SingletDecomposition d = singlet_decompose(e3);
    REQUIRE(d.family.size() == 2);
    REQUIRE(d.family[0].str() == "(1,2)(3,4)");
    REQUIRE(d.family[1].str() == "(1,4)(2,3)");
    CHECK(d.exact());
    CHECK(d.coefficients[0] == Rational(0));
    CHECK(d.coefficients[1] == Rational(1));

    // expressed over expansions 1 and 2 through the first matching instead:
    QVec e1 = expand_matching(make_matching(4, {{1, 3}, {2, 4}}));
    SingletDecomposition d1 = singlet_decompose(e1);
    CHECK(d1.exact());
    CHECK(d1.coefficients[0] == Rational(1));
    CHECK(d1.coefficients[1] == Rational(1));
}

TEST_CASE("every dark vector decomposes exactly; non-dark input reports a residual") {
    for (int n = 2; n <= 7; ++n)
        for (int k = 1; 2 * k <= n; ++k) {
            dark::SubspaceBasis basis = dark::dark_basis(n, k);
            for (const auto& vec : basis.vectors) {
                SingletDecomposition d = singlet_decompose(QVec{sector_desc(n, k), vec});
                CHECK(d.exact());
                // reconstruct and compare exactly
                QVec sum = zero_vector<Rational>(sector_desc(n, k));
                for (std::size_t i = 0; i < d.family.size(); ++i) {
                    QVec e = expand_matching(d.family[i]);
                    for (std::size_t c = 0; c < sum.amps.size(); ++c)
                        sum.amps[c] += d.coefficients[i] * e.amps[c];
                }
                for (std::size_t c = 0; c < sum.amps.size(); ++c)
                    CHECK(sum.amps[c] == vec[c]);
            }
        }

    QVec dicke{sector_desc(4, 2), std::vector<Rational>(6, Rational(1))};
    SingletDecomposition d = singlet_decompose(dicke);
    CHECK_FALSE(d.exact());
    CHECK(d.residual_sq > 0);
}

TEST_CASE("pair span residual vanishes exactly on dark vectors") {
    for (int n = 2; n <= 6; ++n)
        for (int k = 1; k <= n; ++k) {
            dark::SubspaceBasis basis = dark::dark_basis(n, k);
            for (const auto& vec : basis.vectors)
                CHECK(pair_span_residual(QVec{sector_desc(n, k), vec}) == Rational(0));
        }

    QVec dicke{sector_desc(4, 2), std::vector<Rational>(6, Rational(1))};
    CHECK(pair_span_residual(dicke) > 0);

    QVec ground{sector_desc(3, 0), {Rational(1)}};
    CHECK_THROWS_AS(pair_span_residual(ground), std::invalid_argument);
}

TEST_CASE("scalar products of perfect-matching expansions are powers of two") {
    int n = 6, k = 3;
    auto fam = enumerate_matchings(n, k, MatchingFamily::all);
    for (std::size_t a = 0; a < fam.size(); ++a)
        for (std::size_t b = 0; b < fam.size(); ++b) {
            Rational d = dot(expand_matching(fam[a]).amps, expand_matching(fam[b]).amps);
            CHECK(d != 0);
            Rational mag = d < 0 ? -d : d;
            // numerator must be a power of two, denominator one
            BigInt num = boost::multiprecision::numerator(mag);
            CHECK(boost::multiprecision::denominator(mag) == 1);
            CHECK((num & (num - 1)) == 0);
        }
}
