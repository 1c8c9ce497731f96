#include "tcdark/checks.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "tcdark/darkspace.hpp"
#include "tcdark/dynamics.hpp"
#include "tcdark/linalg.hpp"
#include "tcdark/operators.hpp"
#include "tcdark/quanta.hpp"
#include "tcdark/sector.hpp"
#include "tcdark/singlets.hpp"

namespace tcdark::checks {

namespace {

CheckResult pass(std::string name, std::string detail = "ok") {
    return {std::move(name), true, std::move(detail)};
}

CheckResult fail(std::string name, std::string detail) {
    return {std::move(name), false, std::move(detail)};
}

std::string at(int n, int k) { return "n=" + std::to_string(n) + " k=" + std::to_string(k); }

// Atom permutation action on a sector vector: atom a of the argument becomes
// atom perm[a-1] of the image.
std::vector<Rational> permute_vector(const SectorBasis& basis, const std::vector<Rational>& v,
                                     const std::vector<int>& perm) {
    std::vector<Rational> out(v.size(), Rational(0));
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (v[i] == 0) continue;
        const AtomBasisState& s = basis.state(i);
        AtomBasisState t(0u, s.n);
        for (int a = 1; a <= s.n; ++a)
            if (s.excited(a)) t = t.with_set(perm[static_cast<std::size_t>(a - 1)]);
        out[basis.index_of(t)] = v[i];
    }
    return out;
}

}  // namespace

CheckResult check_family_counting(int n_max) {
    const char* name = "sector.family-counting";
    for (int n = 1; n <= std::min(n_max, 10); ++n) {
        for (int k = 1; k <= n; ++k) {
            SectorBasis parents(n, k - 1);
            SectorBasis members(n, k);
            std::vector<int> appearances(members.size(), 0);
            std::uint64_t total = 0;
            for (const auto& p : parents.states()) {
                FamilyTable t = family(p);
                total += t.members.size();
                for (const auto& m : t.members) ++appearances[members.index_of(m)];
            }
            if (total != binomial(n, k - 1) * static_cast<std::uint64_t>(n - k + 1))
                return fail(name, "member total off at " + at(n, k));
            for (int a : appearances)
                if (a != k) return fail(name, "membership multiplicity off at " + at(n, k));
        }
    }
    return pass(name);
}

CheckResult check_family_intersection(int n_max) {
    const char* name = "sector.family-intersection";
    for (int n = 1; n <= std::min(n_max, 8); ++n) {
        for (int k = 1; k <= n; ++k) {
            SectorBasis parents(n, k - 1);
            std::vector<FamilyTable> tables;
            tables.reserve(parents.size());
            for (const auto& p : parents.states()) tables.push_back(family(p));
            for (std::size_t x = 0; x < tables.size(); ++x) {
                for (std::size_t y = x + 1; y < tables.size(); ++y) {
                    int common = 0;
                    for (const auto& m : tables[x].members)
                        common += std::binary_search(tables[y].members.begin(),
                                                     tables[y].members.end(), m);
                    if (common > 1)
                        return fail(name, "families share " + std::to_string(common) +
                                              " members at " + at(n, k));
                }
            }
        }
    }
    return pass(name);
}

CheckResult check_rank_counting(int n_max) {
    const char* name = "sector.rank-counting";
    for (int n = 1; n <= std::min(n_max, 8); ++n) {
        for (int k = 1; k <= n; ++k) {
            SectorBasis parents(n, k - 1);
            for (const auto& j0 : parents.states()) {
                RankAssignment r = rank_assignment(n, k, j0);
                for (std::size_t pi = 0; pi < parents.size(); ++pi) {
                    int p = r.ancestor_rank[pi];
                    if (static_cast<int>(r.rem[pi].size()) != p)
                        return fail(name, "rem size != rank at " + at(n, k));
                    FamilyTable t = family(parents.state(pi));
                    int below = 0;
                    int level = 0;
                    for (const auto& m : t.members) {
                        int mr = r.member_rank[r.members.index_of(m)];
                        if (mr == p - 1) ++below;
                        else if (mr == p) ++level;
                        else return fail(name, "member rank outside {p-1,p} at " + at(n, k));
                    }
                    if (below != p || level != n - k + 1 - p)
                        return fail(name, "rank census off at " + at(n, k) + " j0=" + j0.str() +
                                              " parent=" + parents.state(pi).str());
                }
            }
        }
    }
    return pass(name);
}

CheckResult check_transposition_metric(int n_max) {
    const char* name = "sector.transposition-metric";
    for (int n = 1; n <= std::min(n_max, 6); ++n) {
        for (int k = 0; k <= n; ++k) {
            SectorBasis basis(n, k);
            for (const auto& a : basis.states()) {
                if (transposition_distance(a, a) != 0) return fail(name, "d(a,a)!=0");
                for (const auto& b : basis.states()) {
                    int dab = transposition_distance(a, b);
                    if (dab != transposition_distance(b, a)) return fail(name, "asymmetric");
                    if ((dab == 0) != (a == b)) return fail(name, "separation fails");
                    for (const auto& c : basis.states())
                        if (dab > transposition_distance(a, c) + transposition_distance(c, b))
                            return fail(name, "triangle inequality fails at " + at(n, k));
                }
            }
        }
    }
    return pass(name);
}

CheckResult check_hermiticity(int n_max) {
    const char* name = "operators.hermiticity";
    for (int n = 1; n <= std::min(n_max, 6); ++n) {
        ops::ModelParams p = ops::ModelParams::equal_coupling(n, Rational(1), 1.0, 1.0);
        p.couplings[0] = Rational(3, 2);  // imbalance should not break symmetry
        for (int E = 0; E <= n + 1; ++E)
            if (!ops::build_rwa_hamiltonian(p, E).is_symmetric())
                return fail(name, "rwa block asymmetric at n=" + std::to_string(n));
        if (!ops::build_full_tc_hamiltonian(p, 3).is_symmetric())
            return fail(name, "full model asymmetric at n=" + std::to_string(n));
        if (!ops::build_rwa_product_hamiltonian(p, 3).is_symmetric())
            return fail(name, "product rwa asymmetric at n=" + std::to_string(n));
        if (!ops::unit_sector_hamiltonian(n, std::max(1, n / 2)).is_symmetric())
            return fail(name, "unit skeleton asymmetric at n=" + std::to_string(n));
    }
    return pass(name);
}

CheckResult check_rwa_excitation_block(int n_max) {
    const char* name = "operators.rwa-excitation-block";
    for (int n = 1; n <= std::min(n_max, 5); ++n) {
        ops::ModelParams p = ops::ModelParams::equal_coupling(n, Rational(2, 3), 0.9, 1.1);
        int m_max = 4;
        ops::CompositeBasis basis = ops::CompositeBasis::cutoff_product(n, m_max);
        SparseOperator<double> h = ops::build_rwa_product_hamiltonian(p, m_max);
        for (std::size_t r = 0; r < h.rows(); ++r) {
            const auto& er = basis.element(r);
            for (const auto& e : h.row(r)) {
                const auto& ec = basis.element(e.col);
                if (er.m + er.atoms.weight() != ec.m + ec.atoms.weight())
                    return fail(name, "entry crosses excitation blocks at n=" + std::to_string(n));
            }
        }
    }
    return pass(name);
}

CheckResult check_raising_transpose(int n_max) {
    const char* name = "operators.raising-transpose";
    for (int n = 1; n <= std::min(n_max, 10); ++n) {
        std::vector<Rational> g(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = Rational(i + 1, 2);
        for (int k = 0; k < n; ++k) {
            SparseOperator<Rational> r = ops::raising_matrix(n, k, g);
            SparseOperator<Rational> lt = ops::lowering_matrix(n, k + 1, g).transposed();
            if (!(r.nnz() == lt.nnz())) return fail(name, "nnz differs at " + at(n, k));
            for (std::size_t row = 0; row < r.rows(); ++row) {
                auto a = r.row(row);
                auto b = lt.row(row);
                if (a.size() != b.size()) return fail(name, "row shape differs at " + at(n, k));
                for (std::size_t i = 0; i < a.size(); ++i)
                    if (a[i].col != b[i].col || a[i].value != b[i].value)
                        return fail(name, "entry differs at " + at(n, k));
            }
        }
    }
    return pass(name);
}

CheckResult check_complement_symmetry(int n_max) {
    const char* name = "operators.complement-symmetry";
    for (int n = 1; n <= std::min(n_max, 8); ++n) {
        auto g = ops::unit_couplings(n);
        for (int k = 0; k < n; ++k) {
            // flipping all bits carries raising on weight k to lowering on
            // weight n-k, entry for entry
            SparseOperator<Rational> r = ops::raising_matrix(n, k, g);
            SparseOperator<Rational> l = ops::lowering_matrix(n, n - k, g);
            SectorBasis dom_r(n, k), cod_r(n, k + 1);
            SectorBasis dom_l(n, n - k), cod_l(n, n - k - 1);
            if (r.nnz() != l.nnz()) return fail(name, "nnz differs at " + at(n, k));
            for (std::size_t row = 0; row < r.rows(); ++row) {
                for (const auto& e : r.row(row)) {
                    std::size_t lrow = cod_l.index_of(cod_r.state(row).complement());
                    std::size_t lcol = dom_l.index_of(dom_r.state(e.col).complement());
                    bool found = false;
                    for (const auto& le : l.row(lrow))
                        if (le.col == lcol && le.value == e.value) found = true;
                    if (!found) return fail(name, "entry missing under complement at " + at(n, k));
                }
            }
        }
    }
    return pass(name);
}

CheckResult check_dimension_formula(int n_max) {
    const char* name = "darkspace.dimension-formula";
    for (int n = 1; n <= std::min(n_max, 12); ++n) {
        auto g = ops::unit_couplings(n);
        for (int k = 0; k <= n; ++k) {
            std::size_t dim = kernel_dimension(ops::lowering_matrix(n, k, g));
            if (static_cast<std::int64_t>(dim) != dark::dark_dimension(n, k))
                return fail(name, "kernel dimension " + std::to_string(dim) + " at " + at(n, k));
        }
    }
    return pass(name);
}

CheckResult check_witness_certificates(int n_max) {
    const char* name = "darkspace.witness-certificates";
    for (int n = 1; n <= std::min(n_max, 8); ++n) {
        auto g = ops::unit_couplings(n);
        for (int k = 1; k <= n; ++k) {
            if (2 * k > n + 1) continue;  // rank covered via complement-symmetry + smaller k
            SparseOperator<Rational> low = ops::lowering_matrix(n, k, g);
            SectorBasis parents(n, k - 1);
            for (std::size_t pj = 0; pj < parents.size(); ++pj) {
                std::vector<Rational> w = dark::witness_vector(n, k, parents.state(pj));
                QVec wv{sector_desc(n, k), std::move(w)};
                QVec image = tcdark::apply(low, wv);
                for (std::size_t r = 0; r < image.amps.size(); ++r)
                    if (image.amps[r] != Rational(r == pj ? 1 : 0))
                        return fail(name, "certificate fails at " + at(n, k) + " j0=" +
                                              parents.state(pj).str());
            }
        }
    }
    return pass(name);
}

CheckResult check_dark_subset_transparent(int n_max) {
    const char* name = "darkspace.dark-subset-transparent";
    for (int k = 1; 2 * k <= std::min(n_max, 10); ++k) {
        int n = 2 * k;
        dark::SubspaceBasis basis = dark::dark_basis(n, k);
        for (const auto& v : basis.vectors)
            if (!dark::is_transparent(QVec{sector_desc(n, k), v}))
                return fail(name, "dark vector absorbs at " + at(n, k));
    }
    return pass(name);
}

CheckResult check_permutation_invariance(int n_max, std::uint64_t seed) {
    const char* name = "darkspace.permutation-invariance";
    std::mt19937_64 rng(seed);
    for (int n = 2; n <= std::min(n_max, 8); ++n) {
        for (int k = 1; k <= n; ++k) {
            dark::SubspaceBasis basis = dark::dark_basis(n, k);
            if (basis.vectors.empty()) continue;
            std::vector<int> perm(static_cast<std::size_t>(n));
            std::iota(perm.begin(), perm.end(), 1);
            for (int rep = 0; rep < 3; ++rep) {
                std::shuffle(perm.begin(), perm.end(), rng);
                std::vector<std::vector<Rational>> stacked = basis.vectors;
                for (const auto& v : basis.vectors)
                    stacked.push_back(permute_vector(basis.sector, v, perm));
                if (rank_of_vectors(stacked, basis.sector.size()) != basis.vectors.size())
                    return fail(name, "permuted dark vector leaves the span at " + at(n, k));
            }
        }
    }
    return pass(name);
}

CheckResult check_unequal_couplings_dimension(int n_max, std::uint64_t seed) {
    const char* name = "darkspace.unequal-couplings-dimension";
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> digit(1, 9);
    std::ostringstream report;
    bool all_match = true;
    for (int n = 1; n <= std::min(n_max, 6); ++n) {
        std::vector<Rational> g(static_cast<std::size_t>(n));
        for (auto& x : g) x = Rational(digit(rng), digit(rng));
        for (int k = 0; k <= n; ++k) {
            std::size_t dim = kernel_dimension(ops::lowering_matrix(n, k, g));
            if (static_cast<std::int64_t>(dim) != dark::dark_dimension(n, k)) {
                all_match = false;
                report << " deviation at " << at(n, k) << " dim=" << dim << ";";
            }
        }
    }
    // observational: generic couplings are expected to reproduce the equal-g
    // dimension, but this is reported rather than asserted
    std::string detail = all_match ? "sampled couplings reproduce equal-g dimensions"
                                   : "observed deviations:" + report.str();
    return pass(name, detail);
}

CheckResult check_antisymmetrizer_projector(int n_max) {
    const char* name = "singlets.antisymmetrizer-projector";
    for (int n = 2; n <= std::min(n_max, 6); ++n) {
        for (int k = 0; k <= n; ++k) {
            for (int i = 1; i <= n; ++i) {
                for (int j = i + 1; j <= n; ++j) {
                    SparseOperator<Rational> an = singlets::antisymmetrizer_matrix(n, k, i, j);
                    SparseOperator<Rational> p = singlets::singlet_projector_matrix(n, k, i, j);
                    if (an.nnz() != p.nnz())
                        return fail(name, "support differs at " + at(n, k));
                    for (std::size_t r = 0; r < an.rows(); ++r) {
                        auto a = an.row(r);
                        auto b = p.row(r);
                        if (a.size() != b.size()) return fail(name, "row differs at " + at(n, k));
                        for (std::size_t t = 0; t < a.size(); ++t)
                            if (a[t].col != b[t].col || a[t].value != 2 * b[t].value)
                                return fail(name, "entry violates identity at " + at(n, k));
                    }
                }
            }
        }
    }
    return pass(name);
}

CheckResult check_matching_family_basis(int n_max) {
    const char* name = "singlets.matching-family-basis";
    for (int n = 1; n <= std::min(n_max, 10); ++n) {
        for (int k = 0; 2 * k <= n; ++k) {
            try {
                singlets::restricted_matching_basis(n, k);
            } catch (const std::exception& e) {
                return fail(name, std::string(e.what()) + " at " + at(n, k));
            }
        }
    }
    return pass(name);
}

CheckResult check_singlet_scalar_powers(int n_max) {
    const char* name = "singlets.scalar-powers-of-two";
    for (int n = 2; n <= std::min(n_max, 8); n += 2) {
        int k = n / 2;
        auto fam = singlets::enumerate_matchings(n, k, singlets::MatchingFamily::all);
        std::vector<QVec> exp;
        exp.reserve(fam.size());
        for (const auto& m : fam) exp.push_back(singlets::expand_matching(m));
        for (std::size_t x = 0; x < exp.size(); ++x) {
            for (std::size_t y = x; y < exp.size(); ++y) {
                Rational d = dot(exp[x].amps, exp[y].amps);
                if (d == 0) return fail(name, "orthogonal pair at n=" + std::to_string(n));
                BigInt num = numerator(d < 0 ? -d : d);
                if (denominator(d) != 1 || (num & (num - 1)) != 0)
                    return fail(name, "scalar product " + fraction_str(d) + " not a power of two");
            }
        }
    }
    return pass(name);
}

CheckResult check_matching_span_permutation(int n_max, std::uint64_t seed) {
    const char* name = "singlets.matching-span-permutation";
    std::mt19937_64 rng(seed);
    for (int n = 2; n <= std::min(n_max, 8); ++n) {
        for (int k = 1; 2 * k <= n; ++k) {
            auto fam = singlets::restricted_matching_basis(n, k);
            SectorBasis sector(n, k);
            std::vector<std::vector<Rational>> stacked;
            for (const auto& m : fam) stacked.push_back(singlets::expand_matching(m).amps);
            std::size_t dim = stacked.size();
            std::vector<int> perm(static_cast<std::size_t>(n));
            std::iota(perm.begin(), perm.end(), 1);
            for (int rep = 0; rep < 3; ++rep) {
                std::shuffle(perm.begin(), perm.end(), rng);
                for (std::size_t v = 0; v < dim; ++v)
                    stacked.push_back(permute_vector(sector, stacked[v], perm));
            }
            if (rank_of_vectors(stacked, sector.size()) != dim)
                return fail(name, "permutation escapes the family span at " + at(n, k));
        }
    }
    return pass(name);
}

namespace {

CVec thirds_state(bool dark_variant) {
    // weight-1 block of three atoms: support on the atomic layer of the E=1
    // excitation block
    ops::CompositeBasis basis = ops::CompositeBasis::rwa_sector(3, 1);
    CVec v = zero_vector<std::complex<double>>(basis.desc());
    v.amps[0] = 1.0 / 3.0;
    v.amps[1] = 1.0 / 3.0;
    v.amps[2] = dark_variant ? -2.0 / 3.0 : 1.0 / 3.0;
    return v;
}

}  // namespace

CheckResult check_quantization_structure() {
    const char* name = "quanta.quantization-structure";
    SparseOperator<double> h = ops::unit_sector_hamiltonian(3, 1);
    for (bool dark_variant : {false, true}) {
        CVec psi = thirds_state(dark_variant);
        for (int q = 3; q <= 6; ++q) {
            double eps = std::ldexp(1.0, -q);
            quanta::Quantization quant = quanta::quantize(psi, h, eps);
            quanta::QuantizationReport rep = quanta::cancellation_pairing(quant);
            if (!rep.condition_q) return fail(name, "condition Q violated");
            if (rep.amp_error > eps) return fail(name, "amplitude error above eps");
            if (quant.scale_c != 1.0 / (static_cast<double>(quant.nu) * eps))
                return fail(name, "c != 1/(nu eps)");
            double nu_eps = static_cast<double>(quant.nu) * eps;
            if (nu_eps < 0.25 || nu_eps > 4.0)
                return fail(name, "nu not of order 1/eps");
            if (quant.quantum_size != eps / static_cast<double>(quant.nu))
                return fail(name, "quantum size != eps/nu");
        }
    }
    return pass(name);
}

CheckResult check_shift_halving() {
    const char* name = "quanta.shift-halving";
    SparseOperator<double> h = ops::unit_sector_hamiltonian(3, 1);
    for (bool dark_variant : {false, true}) {
        CVec psi = thirds_state(dark_variant);
        double prev = -1;
        for (int q = 3; q <= 8; ++q) {
            double eps = std::ldexp(1.0, -q);
            quanta::QuantizationReport rep =
                quanta::cancellation_pairing(quanta::quantize(psi, h, eps));
            if (prev > 0) {
                double ratio = rep.shift_error / prev;
                if (ratio < 0.25 || ratio > 0.75)
                    return fail(name, "halving ratio " + std::to_string(ratio) + " outside band");
            }
            prev = rep.shift_error;
        }
    }
    return pass(name);
}

CheckResult check_conservation_laws() {
    const char* name = "dynamics.conservation-laws";
    // one RWA block run and one full-model run, Dicke-like initial states
    {
        ops::ModelParams p = ops::ModelParams::equal_coupling(3, Rational(1), 1.0, 1.0);
        SparseOperator<double> h = ops::build_rwa_hamiltonian(p, 1);
        ops::CompositeBasis basis = ops::CompositeBasis::rwa_sector(3, 1);
        CVec v0 = zero_vector<std::complex<double>>(basis.desc());
        double r = 1.0 / std::sqrt(3.0);
        v0.amps[0] = v0.amps[1] = v0.amps[2] = r;
        dyn::EvolutionConfig config;
        config.horizon = 25.0;
        config.steps = 100;
        CVec hv0 = tcdark::apply(h, v0);
        double e0 = dot(v0, hv0).real();
        bool ok = true;
        dyn::sample_evolution(h, v0, config, [&](double, const CVec& v) {
            if (std::fabs(norm(v) - 1.0) > 1e-9) ok = false;
            double exc = 0;
            for (std::size_t i = 0; i < v.amps.size(); ++i) {
                const auto& el = basis.element(i);
                exc += std::norm(v.amps[i]) * (el.m + el.atoms.weight());
            }
            if (std::fabs(exc - 1.0) > 1e-10) ok = false;
            if (std::fabs(dot(v, tcdark::apply(h, v)).real() - e0) > 1e-9) ok = false;
        });
        if (!ok) return fail(name, "rwa block run violates a conservation law");
    }
    {
        ops::ModelParams p = ops::ModelParams::equal_coupling(2, Rational(1), 1.0, 1.0);
        SparseOperator<double> h = ops::build_full_tc_hamiltonian(p, 6);
        ops::CompositeBasis basis = ops::CompositeBasis::cutoff_product(2, 6);
        CVec v0 = zero_vector<std::complex<double>>(basis.desc());
        v0.amps[basis.index_of(0, AtomBasisState(0b00, 2))] = 1.0;
        dyn::EvolutionConfig config;
        config.horizon = 25.0;
        config.steps = 100;
        CVec hv0 = tcdark::apply(h, v0);
        double e0 = dot(v0, hv0).real();
        bool ok = true;
        dyn::sample_evolution(h, v0, config, [&](double, const CVec& v) {
            if (std::fabs(norm(v) - 1.0) > 1e-9) ok = false;
            if (std::fabs(dot(v, tcdark::apply(h, v)).real() - e0) > 1e-9) ok = false;
        });
        if (!ok) return fail(name, "full model run violates a conservation law");
    }
    return pass(name);
}

CheckResult check_singlet_product_leakage() {
    const char* name = "dynamics.singlet-product-leakage";
    for (int k = 1; k <= 2; ++k) {
        int n = 2 * k;
        // first restricted matching, normalized, in the vacuum sector
        auto fam = singlets::restricted_matching_basis(n, k);
        QVec exp = singlets::expand_matching(fam.front());
        int m_max = 6;
        ops::CompositeBasis basis = ops::CompositeBasis::cutoff_product(n, m_max);
        SectorBasis sector(n, k);
        double nrm = std::sqrt(to_double(norm_sq(exp.amps)));
        CVec v0 = zero_vector<std::complex<double>>(basis.desc());
        for (std::size_t i = 0; i < sector.size(); ++i)
            if (exp.amps[i] != 0)
                v0.amps[basis.index_of(0, sector.state(i))] = to_double(exp.amps[i]) / nrm;
        ops::ModelParams p = ops::ModelParams::equal_coupling(n, Rational(1), 1.0, 1.0);
        dyn::EvolutionConfig config;
        config.horizon = 50.0;
        config.steps = 200;
        double leak1 = dyn::evolve(ops::build_full_tc_hamiltonian(p, m_max), v0, config)
                           .profile.max_leakage;
        ops::CompositeBasis basis2 = ops::CompositeBasis::cutoff_product(n, m_max + 2);
        CVec v0b = zero_vector<std::complex<double>>(basis2.desc());
        for (std::size_t i = 0; i < sector.size(); ++i)
            if (exp.amps[i] != 0)
                v0b.amps[basis2.index_of(0, sector.state(i))] = to_double(exp.amps[i]) / nrm;
        double leak2 = dyn::evolve(ops::build_full_tc_hamiltonian(p, m_max + 2), v0b, config)
                           .profile.max_leakage;
        if (std::fabs(leak1 - leak2) > 1e-6)
            return fail(name, "cutoff not converged at n=" + std::to_string(n));
        if (leak1 > 1e-8)
            return fail(name, "singlet product leaks " + std::to_string(leak1) + " at n=" +
                                  std::to_string(n));
    }
    return pass(name);
}

std::vector<CheckResult> run_all(const Options& opt,
                                 const std::function<void(const CheckResult&)>& on_result) {
    std::vector<std::function<CheckResult()>> suite = {
        [&] { return check_family_counting(opt.n_max); },
        [&] { return check_family_intersection(opt.n_max); },
        [&] { return check_rank_counting(opt.n_max); },
        [&] { return check_transposition_metric(opt.n_max); },
        [&] { return check_hermiticity(opt.n_max); },
        [&] { return check_rwa_excitation_block(opt.n_max); },
        [&] { return check_raising_transpose(opt.n_max); },
        [&] { return check_complement_symmetry(opt.n_max); },
        [&] { return check_dimension_formula(opt.n_max); },
        [&] { return check_witness_certificates(opt.n_max); },
        [&] { return check_dark_subset_transparent(opt.n_max); },
        [&] { return check_permutation_invariance(opt.n_max, opt.seed); },
        [&] { return check_unequal_couplings_dimension(opt.n_max, opt.seed); },
        [&] { return check_antisymmetrizer_projector(opt.n_max); },
        [&] { return check_matching_family_basis(opt.n_max); },
        [&] { return check_singlet_scalar_powers(opt.n_max); },
        [&] { return check_matching_span_permutation(opt.n_max, opt.seed); },
        [&] { return check_quantization_structure(); },
        [&] { return check_shift_halving(); },
    };
    if (opt.include_dynamics) {
        suite.push_back([&] { return check_conservation_laws(); });
        suite.push_back([&] { return check_singlet_product_leakage(); });
    }

    std::vector<CheckResult> results;
    results.reserve(suite.size());
    for (const auto& run : suite) {
        CheckResult r = run();
        if (on_result) on_result(r);
        results.push_back(r);
        if (opt.fail_fast && !results.back().passed) break;
    }
    return results;
}

}  // namespace tcdark::checks
