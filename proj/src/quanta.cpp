#include "tcdark/quanta.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>

namespace tcdark::quanta {

namespace {

// Exponent of i: plus = i^0, plus_i = i^1, minus = i^2, minus_i = i^3.
constexpr std::array<int, 4> kExp = {0, 2, 1, 3};
constexpr std::array<AmpType, 4> kFromExp = {AmpType::plus, AmpType::plus_i, AmpType::minus,
                                             AmpType::minus_i};

}  // namespace

AmpType mul(AmpType a, AmpType b) {
    return kFromExp[static_cast<std::size_t>(
        (kExp[static_cast<std::size_t>(a)] + kExp[static_cast<std::size_t>(b)]) % 4)];
}

AmpType opposite(AmpType a) { return mul(a, AmpType::minus); }

AmpType conjugate(AmpType a) {
    return kFromExp[static_cast<std::size_t>((4 - kExp[static_cast<std::size_t>(a)]) % 4)];
}

std::complex<double> unit(AmpType a) {
    switch (a) {
        case AmpType::plus: return {1, 0};
        case AmpType::minus: return {-1, 0};
        case AmpType::plus_i: return {0, 1};
        case AmpType::minus_i: return {0, -1};
    }
    throw std::logic_error("unit: bad amplitude type");
}

std::uint64_t round_to_quanta(double value, double eps) {
    if (value < 0 || !std::isfinite(value)) throw std::invalid_argument("round_to_quanta: bad value");
    if (!(eps > 0) || !std::isfinite(eps)) throw std::invalid_argument("round_to_quanta: bad eps");
    double x = value / eps;
    if (x > 9.0e18) throw std::invalid_argument("round_to_quanta: value too large for eps");
    double f = std::floor(x);
    double frac = x - f;
    // ties toward zero: exactly half a quantum is dropped
    return static_cast<std::uint64_t>(f) + (frac > 0.5 ? 1 : 0);
}

namespace {

bool close(double a, double b) {
    double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) <= 1e-12 * scale;
}

std::vector<double> column_values(const SparseOperator<double>& ht, std::size_t col) {
    std::vector<double> v;
    for (const auto& e : ht.row(col)) v.push_back(e.value);
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

bool check_connected(const SparseOperator<double>& h, std::span<const std::size_t> support) {
    if (h.rows() != h.cols()) throw std::invalid_argument("check_connected: operator not square");
    if (support.size() <= 1) return true;
    for (std::size_t s : support)
        if (s >= h.cols()) throw std::invalid_argument("check_connected: support index out of range");
    SparseOperator<double> ht = h.transposed();
    std::vector<double> ref = column_values(ht, support[0]);
    for (std::size_t idx = 1; idx < support.size(); ++idx) {
        std::vector<double> cur = column_values(ht, support[idx]);
        if (cur.size() != ref.size()) return false;
        for (std::size_t i = 0; i < ref.size(); ++i)
            if (!close(cur[i], ref[i])) return false;
    }
    return true;
}

bool check_connected(const SparseOperator<double>& h, const CVec& psi) {
    if (!(psi.basis == h.domain()))
        throw std::invalid_argument("check_connected: basis mismatch");
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < psi.amps.size(); ++i)
        if (psi.amps[i] != 0.0) support.push_back(i);
    return check_connected(h, support);
}

Quantization quantize(const CVec& psi, const SparseOperator<double>& h, double eps) {
    if (!(eps > 0) || !std::isfinite(eps)) throw std::invalid_argument("quantize: eps must be positive");
    if (h.rows() != h.cols()) throw std::invalid_argument("quantize: operator not square");
    if (!(psi.basis == h.domain())) throw std::invalid_argument("quantize: basis mismatch");

    Quantization q;
    q.basis = psi.basis;
    q.epsilon = eps;
    q.source = psi.amps;
    q.hamiltonian = h;

    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < psi.amps.size(); ++i)
        if (psi.amps[i] != 0.0) support.push_back(i);
    if (support.empty()) return q;

    if (!check_connected(h, support))
        throw std::invalid_argument("quantize: state is not connected under the Hamiltonian");

    SparseOperator<double> ht = h.transposed();

    // Route plan of one column: (target row, entry type) per occurrence,
    // rows ascending, real occurrences before imaginary ones.
    struct Slot {
        std::uint32_t row;
        AmpType type;
    };
    std::vector<Slot> slots;
    std::uint64_t nu = 0;
    bool first = true;
    std::vector<std::array<std::uint64_t, 2>> portions(support.size());  // re, im counts
    std::vector<std::array<AmpType, 2>> portion_type(support.size());
    for (std::size_t si = 0; si < support.size(); ++si) {
        std::size_t j = support[si];
        std::uint64_t nu_j = 0;
        std::vector<Slot> local;
        for (const auto& e : ht.row(j)) {
            std::uint64_t r = round_to_quanta(std::fabs(e.value), eps);
            AmpType t = e.value >= 0 ? AmpType::plus : AmpType::minus;
            for (std::uint64_t c = 0; c < r; ++c)
                local.push_back({static_cast<std::uint32_t>(e.col), t});
            nu_j += r;
        }
        if (first) {
            nu = nu_j;
            slots = std::move(local);
            first = false;
        } else if (nu_j != nu) {
            throw std::invalid_argument("quantize: occurrence counts differ across support");
        }
        std::complex<double> a = psi.amps[j];
        portions[si] = {round_to_quanta(std::fabs(a.real()), eps),
                        round_to_quanta(std::fabs(a.imag()), eps)};
        portion_type[si] = {a.real() >= 0 ? AmpType::plus : AmpType::minus,
                            a.imag() >= 0 ? AmpType::plus_i : AmpType::minus_i};
    }
    if (nu == 0)
        throw std::invalid_argument("quantize: eps too large, all entries round to zero");

    q.nu = nu;
    q.quantum_size = eps / static_cast<double>(nu);
    q.scale_c = 1.0 / (static_cast<double>(nu) * eps);

    std::uint64_t total = 0;
    for (const auto& p : portions) total += (p[0] + p[1]) * nu;
    if (total > 50'000'000)
        throw std::invalid_argument("quantize: quantum count exceeds materialization cap");

    q.quanta.reserve(total);
    std::uint64_t id = 0;
    for (std::size_t si = 0; si < support.size(); ++si) {
        std::size_t j = support[si];
        // Slots differ between columns only by target rows; rebuild locally.
        std::vector<Slot> local;
        for (const auto& e : ht.row(j)) {
            std::uint64_t r = round_to_quanta(std::fabs(e.value), eps);
            AmpType t = e.value >= 0 ? AmpType::plus : AmpType::minus;
            for (std::uint64_t c = 0; c < r; ++c)
                local.push_back({static_cast<std::uint32_t>(e.col), t});
        }
        for (int part = 0; part < 2; ++part) {
            AmpType t_in = portion_type[si][static_cast<std::size_t>(part)];
            for (std::uint64_t g = 0; g < portions[si][static_cast<std::size_t>(part)]; ++g)
                for (const Slot& s : local)
                    q.quanta.push_back({id++, q.quantum_size, static_cast<std::uint32_t>(j),
                                        s.row, t_in, mul(t_in, s.type)});
        }
    }
    return q;
}

CVec theta_shift(const Quantization& q) {
    CVec out = zero_vector<std::complex<double>>(q.basis);
    if (q.quanta.empty()) return out;
    std::vector<std::array<std::uint64_t, 4>> counts(q.basis.dim, {0, 0, 0, 0});
    for (const auto& quantum : q.quanta)
        ++counts[quantum.b_fin][static_cast<std::size_t>(quantum.t_fin)];
    for (std::size_t i = 0; i < q.basis.dim; ++i) {
        const auto& c = counts[i];
        double re = static_cast<double>(c[0]) - static_cast<double>(c[1]);
        double im = static_cast<double>(c[2]) - static_cast<double>(c[3]);
        out.amps[i] = q.quantum_size * std::complex<double>(re, im);
    }
    return out;
}

namespace {

// Magnitude of the type component of a complex number: how much of z moves as
// quanta of type t.
double typed_magnitude(std::complex<double> z, AmpType t) {
    switch (t) {
        case AmpType::plus: return z.real() > 0 ? z.real() : 0.0;
        case AmpType::minus: return z.real() < 0 ? -z.real() : 0.0;
        case AmpType::plus_i: return z.imag() > 0 ? z.imag() : 0.0;
        case AmpType::minus_i: return z.imag() < 0 ? -z.imag() : 0.0;
    }
    throw std::logic_error("typed_magnitude: bad amplitude type");
}

}  // namespace

QuantizationReport cancellation_pairing(const Quantization& q) {
    QuantizationReport rep;
    rep.total_quanta = q.quanta.size();

    // reconstruction of the source amplitudes
    std::vector<std::array<std::uint64_t, 4>> in_counts(q.basis.dim, {0, 0, 0, 0});
    for (const auto& quantum : q.quanta)
        ++in_counts[quantum.b_in][static_cast<std::size_t>(quantum.t_in)];
    for (std::size_t j = 0; j < q.basis.dim; ++j) {
        const auto& c = in_counts[j];
        std::complex<double> rebuilt =
            q.quantum_size *
            std::complex<double>(static_cast<double>(c[0]) - static_cast<double>(c[1]),
                                 static_cast<double>(c[2]) - static_cast<double>(c[3]));
        rep.amp_error = std::max(rep.amp_error, std::abs(rebuilt - q.source[j]));
    }

    // typed transition counts against the product expansion
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::array<std::array<std::uint64_t, 4>, 4>>
        transition;
    for (const auto& quantum : q.quanta)
        ++transition[{quantum.b_in, quantum.b_fin}][static_cast<std::size_t>(quantum.t_in)]
                    [static_cast<std::size_t>(quantum.t_fin)];

    if (q.nu > 0) {
        SparseOperator<double> ht = q.hamiltonian.transposed();
        for (std::size_t j = 0; j < q.basis.dim; ++j) {
            if (q.source[j] == 0.0) continue;
            for (const auto& e : ht.row(j)) {
                auto it = transition.find({static_cast<std::uint32_t>(j),
                                           static_cast<std::uint32_t>(e.col)});
                for (AmpType t : {AmpType::plus, AmpType::minus, AmpType::plus_i, AmpType::minus_i}) {
                    for (AmpType s : {AmpType::plus, AmpType::minus, AmpType::plus_i,
                                      AmpType::minus_i}) {
                        AmpType t_fin = mul(t, s);
                        std::uint64_t count = 0;
                        if (it != transition.end())
                            count = it->second[static_cast<std::size_t>(t)]
                                              [static_cast<std::size_t>(t_fin)];
                        double expected = q.scale_c * typed_magnitude(q.source[j], t) *
                                          typed_magnitude(std::complex<double>(e.value, 0.0), s);
                        double got = q.quantum_size * static_cast<double>(count);
                        rep.passage_error = std::max(rep.passage_error, std::fabs(got - expected));
                    }
                }
            }
        }
    }

    // condition Q: within one state transition no opposite initial types and
    // no equal initial with opposite final types
    for (const auto& [key, counts] : transition) {
        for (int t1 = 0; t1 < 4; ++t1) {
            for (int f1 = 0; f1 < 4; ++f1) {
                if (counts[static_cast<std::size_t>(t1)][static_cast<std::size_t>(f1)] == 0)
                    continue;
                AmpType ot = opposite(static_cast<AmpType>(t1));
                AmpType of = opposite(static_cast<AmpType>(f1));
                for (int f2 = 0; f2 < 4; ++f2)
                    if (counts[static_cast<std::size_t>(ot)][static_cast<std::size_t>(f2)] > 0)
                        rep.condition_q = false;
                if (counts[static_cast<std::size_t>(t1)][static_cast<std::size_t>(of)] > 0)
                    rep.condition_q = false;
            }
        }
    }

    // shift error against the rescaled Hamiltonian action
    CVec theta = theta_shift(q);
    CVec hpsi = tcdark::apply(q.hamiltonian, CVec{q.basis, q.source});
    double err_sq = 0;
    for (std::size_t i = 0; i < q.basis.dim; ++i) {
        std::complex<double> d = theta.amps[i] - q.scale_c * hpsi.amps[i];
        err_sq += std::norm(d);
    }
    rep.shift_error = std::sqrt(err_sq);

    // greedy cancellation per final state
    std::map<std::uint32_t, std::array<std::vector<std::uint64_t>, 4>> landing;
    for (const auto& quantum : q.quanta)
        landing[quantum.b_fin][static_cast<std::size_t>(quantum.t_fin)].push_back(quantum.id);
    auto pair_up = [&rep](std::vector<std::uint64_t>& a, std::vector<std::uint64_t>& b) {
        std::size_t m = std::min(a.size(), b.size());
        for (std::size_t i = 0; i < m; ++i) rep.pairs.push_back({a[i], b[i]});
        rep.cancelled_quanta += 2 * m;
    };
    for (auto& [state, by_type] : landing) {
        pair_up(by_type[static_cast<std::size_t>(AmpType::plus)],
                by_type[static_cast<std::size_t>(AmpType::minus)]);
        pair_up(by_type[static_cast<std::size_t>(AmpType::plus_i)],
                by_type[static_cast<std::size_t>(AmpType::minus_i)]);
    }
    rep.cancelled_fraction =
        rep.total_quanta == 0
            ? 0.0
            : static_cast<double>(rep.cancelled_quanta) / static_cast<double>(rep.total_quanta);
    return rep;
}

}  // namespace tcdark::quanta
