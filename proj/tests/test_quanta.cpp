#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>

#include "tcdark/operators.hpp"
#include "tcdark/quanta.hpp"

using namespace tcdark;
using namespace tcdark::quanta;

namespace {

// Normalized state on the atomic layer of the E=k excitation block.
CVec block_state(int n, int k, std::vector<double> sector_amps) {
    ops::CompositeBasis basis = ops::CompositeBasis::rwa_sector(n, k);
    SectorBasis sector(n, k);
    double norm_sq = 0;
    for (double a : sector_amps) norm_sq += a * a;
    CVec psi = zero_vector<std::complex<double>>(basis.desc());
    for (std::size_t i = 0; i < sector.size(); ++i)
        psi.amps[basis.index_of(0, sector.state(i))] = sector_amps[i] / std::sqrt(norm_sq);
    return psi;
}

}  // namespace

TEST_CASE("amplitude type algebra is the four-element cyclic group") {
    CHECK(mul(AmpType::plus, AmpType::minus) == AmpType::minus);
    CHECK(mul(AmpType::minus, AmpType::minus) == AmpType::plus);
    CHECK(mul(AmpType::plus_i, AmpType::plus_i) == AmpType::minus);
    CHECK(mul(AmpType::plus_i, AmpType::minus_i) == AmpType::plus);
    CHECK(mul(AmpType::minus, AmpType::plus_i) == AmpType::minus_i);
    for (AmpType t : {AmpType::plus, AmpType::minus, AmpType::plus_i, AmpType::minus_i}) {
        CHECK(mul(t, AmpType::plus) == t);
        // t * (-t) = -t^2: -1 on the real axis, +1 on the imaginary one
        bool real_axis = t == AmpType::plus || t == AmpType::minus;
        CHECK(mul(t, opposite(t)) == (real_axis ? AmpType::minus : AmpType::plus));
        CHECK(mul(t, conjugate(t)) == AmpType::plus);
        CHECK(unit(t) == std::complex<double>(unit(opposite(t)) * -1.0));
    }
}

TEST_CASE("rounding to quanta: nearest multiple, ties toward zero") {
    CHECK(round_to_quanta(0.0, 0.125) == 0);
    CHECK(round_to_quanta(0.24, 0.1) == 2);
    CHECK(round_to_quanta(0.26, 0.1) == 3);
    CHECK(round_to_quanta(0.25, 0.1) == 2);   // tie 2.5 drops
    CHECK(round_to_quanta(1.0, 0.125) == 8);
    CHECK_THROWS_AS(round_to_quanta(-0.1, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(round_to_quanta(0.1, 0.0), std::invalid_argument);
}

TEST_CASE("connectedness: equal couplings yes, unequal no, single state trivially") {
    SparseOperator<double> h42 = ops::unit_sector_hamiltonian(4, 2);
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < 6; ++i) support.push_back(i);  // the weight-2 layer
    CHECK(check_connected(h42, support));

    // n=2 block with g1 != g2: the two atomic columns carry different values
    ops::ModelParams p;
    p.n = 2;
    p.couplings = {Rational(1), Rational(2)};
    p.omega_c = 0.0;
    p.omega_a = 0.0;
    SparseOperator<double> h = ops::build_rwa_hamiltonian(p, 1);
    std::vector<std::size_t> both = {0, 1};
    CHECK_FALSE(check_connected(h, both));
    std::vector<std::size_t> one = {0};
    CHECK(check_connected(h, one));
}

TEST_CASE("quantize rejects disconnected states and oversized eps") {
    ops::ModelParams p;
    p.n = 2;
    p.couplings = {Rational(1), Rational(2)};
    p.omega_c = 0.0;
    p.omega_a = 0.0;
    SparseOperator<double> h = ops::build_rwa_hamiltonian(p, 1);
    CVec psi = zero_vector<std::complex<double>>(h.domain());
    psi.amps[0] = std::sqrt(0.5);
    psi.amps[1] = -std::sqrt(0.5);
    CHECK_THROWS_AS(quantize(psi, h, 0.125), std::invalid_argument);

    SparseOperator<double> hu = ops::unit_sector_hamiltonian(2, 1);
    CVec singlet = block_state(2, 1, {1, -1});
    CHECK_THROWS_AS(quantize(singlet, hu, 4.0), std::invalid_argument);  // every entry rounds to 0
}

TEST_CASE("empty state quantizes to nothing and shifts to zero") {
    SparseOperator<double> h = ops::unit_sector_hamiltonian(2, 1);
    CVec zero = zero_vector<std::complex<double>>(h.domain());
    Quantization q = quantize(zero, h, 0.125);
    CHECK(q.quanta.empty());
    CHECK(q.nu == 0);
    CVec theta = theta_shift(q);
    for (const auto& a : theta.amps) CHECK(a == std::complex<double>(0));
    QuantizationReport rep = cancellation_pairing(q);
    CHECK(rep.total_quanta == 0);
    CHECK(rep.shift_error == 0);
    CHECK(rep.condition_q);
}

TEST_CASE("quantization bookkeeping on the two-atom singlet") {
    SparseOperator<double> h = ops::unit_sector_hamiltonian(2, 1);
    CVec singlet = block_state(2, 1, {1, -1});
    double eps = 0.125;
    Quantization q = quantize(singlet, h, eps);

    CHECK(q.epsilon == eps);
    CHECK(q.nu == 8);                       // one unit entry per column, 1/eps quanta each
    CHECK(q.quantum_size == eps / 8);
    CHECK(q.scale_c == 1.0 / (8 * eps));
    // both amplitudes split into round(sqrt(1/2)/eps) = 6 portions, nu slots each
    CHECK(q.quanta.size() == 2 * 6 * 8);
    for (std::size_t i = 0; i < q.quanta.size(); ++i) {
        CHECK(q.quanta[i].id == i);         // sequential construction order
        CHECK(q.quanta[i].b_in != q.quanta[i].b_fin);
        CHECK(q.quanta[i].size == q.quantum_size);
    }

    QuantizationReport rep = cancellation_pairing(q);
    CHECK(rep.condition_q);
    CHECK(rep.amp_error <= eps);
    CHECK(rep.passage_error <= eps);
    CHECK(rep.shift_error == 0);            // theta and c H psi both vanish exactly
    CHECK(rep.cancelled_quanta == rep.total_quanta);
    CHECK(rep.cancelled_fraction == 1.0);
}

TEST_CASE("cancelled pairs join different members of one family") {
    SparseOperator<double> h = ops::unit_sector_hamiltonian(4, 2);
    CVec dark = block_state(4, 2, {1, 0, -1, -1, 0, 1});
    ops::CompositeBasis basis = ops::CompositeBasis::rwa_sector(4, 2);
    Quantization q = quantize(dark, h, 1.0 / 16);
    QuantizationReport rep = cancellation_pairing(q);
    CHECK(rep.condition_q);
    CHECK(rep.cancelled_fraction == 1.0);   // amplitudes are exact multiples of eps
    CHECK(rep.shift_error == 0);
    REQUIRE(!rep.pairs.empty());
    for (const auto& pr : rep.pairs) {
        const AmplitudeQuantum& a = q.quanta[pr.first];
        const AmplitudeQuantum& b = q.quanta[pr.second];
        CHECK(a.id == pr.first);
        CHECK(b.id == pr.second);
        CHECK(a.b_fin == b.b_fin);
        CHECK(a.t_fin == opposite(b.t_fin));
        CHECK(a.b_in != b.b_in);            // distinct members
        // both initial states belong to the family of the shared parent
        const auto& parent = basis.element(a.b_fin).atoms;
        CHECK(emission_related(basis.element(a.b_in).atoms, parent));
        CHECK(emission_related(basis.element(b.b_in).atoms, parent));
    }
}

TEST_CASE("shift error tracks c H psi for non-dark states at linear order") {
    SparseOperator<double> h = ops::unit_sector_hamiltonian(3, 1);
    // exact thirds, deliberately unnormalized: rescaling by 1/sqrt(3) would
    // make the amplitudes irrational and bury the linear shift in rounding
    ops::CompositeBasis basis = ops::CompositeBasis::rwa_sector(3, 1);
    SectorBasis sector(3, 1);
    CVec psi = zero_vector<std::complex<double>>(basis.desc());
    for (std::size_t i = 0; i < sector.size(); ++i)
        psi.amps[basis.index_of(0, sector.state(i))] = 1.0 / 3.0;
    double prev = -1;
    for (int qpow = 3; qpow <= 8; ++qpow) {
        double eps = std::ldexp(1.0, -qpow);
        Quantization q = quantize(psi, h, eps);
        QuantizationReport rep = cancellation_pairing(q);
        CHECK(rep.condition_q);
        CHECK(rep.amp_error <= eps);
        CHECK(rep.shift_error <= 4 * eps);
        if (prev >= 0) CHECK(rep.shift_error <= 0.75 * prev);
        prev = rep.shift_error;
    }
}

TEST_CASE("quantum size is quadratically small in eps") {
    SparseOperator<double> h = ops::unit_sector_hamiltonian(3, 1);
    CVec psi = block_state(3, 1, {1, 1, -2});
    for (int qpow = 3; qpow <= 6; ++qpow) {
        double eps = std::ldexp(1.0, -qpow);
        Quantization q = quantize(psi, h, eps);
        CHECK(q.quantum_size <= eps * eps + 1e-15);
        CHECK(q.scale_c == 1.0 / (static_cast<double>(q.nu) * eps));
        double nu_eps = static_cast<double>(q.nu) * eps;
        CHECK(nu_eps >= 0.25);
        CHECK(nu_eps <= 4.0);               // nu = Theta(1/eps)
    }
}

TEST_CASE("complex amplitudes keep condition Q and reconstruct within eps") {
    SparseOperator<double> h = ops::unit_sector_hamiltonian(2, 1);
    ops::CompositeBasis basis = ops::CompositeBasis::rwa_sector(2, 1);
    CVec psi = zero_vector<std::complex<double>>(basis.desc());
    psi.amps[0] = std::complex<double>(0.6, -0.36);
    psi.amps[1] = std::complex<double>(-0.48, 0.54);
    double n = std::sqrt(std::norm(psi.amps[0]) + std::norm(psi.amps[1]));
    psi.amps[0] /= n;
    psi.amps[1] /= n;
    double eps = 1.0 / 32;
    Quantization q = quantize(psi, h, eps);
    QuantizationReport rep = cancellation_pairing(q);
    CHECK(rep.condition_q);
    CHECK(rep.amp_error <= eps);
    // in-portion counts times the quantum size rebuild each amplitude within
    // eps, real and imaginary components separately
    std::vector<std::array<std::uint64_t, 4>> counts(q.basis.dim, {0, 0, 0, 0});
    for (const auto& quantum : q.quanta)
        ++counts[quantum.b_in][static_cast<std::size_t>(quantum.t_in)];
    for (std::size_t j = 0; j < q.basis.dim; ++j) {
        double re = (static_cast<double>(counts[j][0]) - static_cast<double>(counts[j][1])) *
                    q.quantum_size;
        double im = (static_cast<double>(counts[j][2]) - static_cast<double>(counts[j][3])) *
                    q.quantum_size;
        CHECK(std::fabs(re - psi.amps[j].real()) <= eps);
        CHECK(std::fabs(im - psi.amps[j].imag()) <= eps);
    }
}

TEST_CASE("theta shift approximates the rescaled hamiltonian action") {
    SparseOperator<double> h = ops::unit_sector_hamiltonian(3, 1);
    CVec psi = block_state(3, 1, {2, 1, 1});
    double eps = 1.0 / 64;
    Quantization q = quantize(psi, h, eps);
    CVec theta = theta_shift(q);
    CVec hpsi = tcdark::apply(h, psi);
    double err = 0;
    for (std::size_t i = 0; i < theta.amps.size(); ++i)
        err += std::norm(theta.amps[i] - q.scale_c * hpsi.amps[i]);
    err = std::sqrt(err);
    QuantizationReport rep = cancellation_pairing(q);
    CHECK(rep.shift_error == doctest::Approx(err).epsilon(1e-12));
    CHECK(err <= 4 * eps);
}
