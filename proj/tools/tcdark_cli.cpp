#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "tcdark/checks.hpp"
#include "tcdark/darkspace.hpp"
#include "tcdark/dynamics.hpp"
#include "tcdark/io.hpp"
#include "tcdark/operators.hpp"
#include "tcdark/quanta.hpp"
#include "tcdark/singlets.hpp"
#include "tcdark/version.hpp"

namespace {

using tcdark::io::json;

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
    f << j.dump(2) << "\n";
}

// Exact sector amplitudes from either an explicit list or a dark basis
// vector; shared by the decompose and quanta commands.
tcdark::QVec resolve_sector_state(int n, int k, const std::string& amps,
                                  std::optional<int> dark_index) {
    tcdark::QVec v{tcdark::sector_desc(n, k), {}};
    if (!amps.empty() && dark_index)
        throw std::invalid_argument("give either --amps or --dark-index, not both");
    if (!amps.empty()) {
        v.amps = tcdark::io::parse_amplitudes(amps);
        if (v.amps.size() != v.basis.dim)
            throw std::invalid_argument("--amps needs exactly " + std::to_string(v.basis.dim) +
                                        " entries");
        return v;
    }
    if (!dark_index) throw std::invalid_argument("need --amps or --dark-index");
    tcdark::dark::SubspaceBasis basis = tcdark::dark::dark_basis(n, k);
    if (*dark_index < 0 || static_cast<std::size_t>(*dark_index) >= basis.dimension())
        throw std::invalid_argument("--dark-index out of range, dimension is " +
                                    std::to_string(basis.dimension()));
    v.amps = basis.vectors[static_cast<std::size_t>(*dark_index)];
    return v;
}

int cmd_dim(int n_max, bool exact, const std::string& out) {
    json params{{"n_max", n_max}, {"exact", exact}};
    json result = tcdark::io::run_header("dim", params);
    json table = json::array();
    for (int n = 1; n <= n_max; ++n) {
        for (int k = 0; k <= n; ++k) {
            json row{{"n", n}, {"k", k}, {"dimension", tcdark::dark::dark_dimension(n, k)}};
            if (exact) {
                std::size_t kd = tcdark::kernel_dimension(
                    tcdark::ops::lowering_matrix(n, k, tcdark::ops::unit_couplings(n)));
                row["kernel_dimension"] = kd;
                row["match"] =
                    static_cast<std::int64_t>(kd) == tcdark::dark::dark_dimension(n, k);
            }
            table.push_back(std::move(row));
        }
    }
    result["table"] = std::move(table);
    emit(result, out);
    return 0;
}

int cmd_dark_basis(int n, int k, const std::string& g_text, const std::string& kind,
                   const std::string& out) {
    auto g = tcdark::io::parse_couplings(g_text, n);
    tcdark::dark::SubspaceBasis basis = [&] {
        if (kind == "dark") return tcdark::dark::dark_basis(n, k, g);
        if (kind == "transparent") return tcdark::dark::transparent_basis(n, k, g);
        if (kind == "invisible") return tcdark::dark::invisible_basis(n, k, g);
        throw std::invalid_argument("unknown --kind: " + kind);
    }();
    json params{{"n", n}, {"k", k}, {"g", g_text}, {"kind", kind}};
    json result = tcdark::io::run_header("dark-basis", params);
    result["basis"] = tcdark::io::subspace_json(basis);
    emit(result, out);
    return 0;
}

int cmd_witness(int n, int k, const std::string& j0_text, const std::string& out) {
    tcdark::AtomBasisState j0 = tcdark::AtomBasisState::parse(j0_text);
    std::vector<tcdark::Rational> w = tcdark::dark::witness_vector(n, k, j0);
    // self-check: the witness image must be exactly e_{j0}
    tcdark::QVec wv{tcdark::sector_desc(n, k), w};
    tcdark::QVec image = tcdark::apply(
        tcdark::ops::lowering_matrix(n, k, tcdark::ops::unit_couplings(n)), wv);
    tcdark::SectorBasis parents(n, k - 1);
    bool certified = true;
    for (std::size_t r = 0; r < image.amps.size(); ++r)
        if (image.amps[r] != tcdark::Rational(r == parents.index_of(j0) ? 1 : 0))
            certified = false;

    json params{{"n", n}, {"k", k}, {"j0", j0_text}};
    json result = tcdark::io::run_header("witness", params);
    tcdark::SectorBasis sector(n, k);
    json states = json::array();
    for (const auto& s : sector.states()) states.push_back(s.str());
    result["sector_states"] = std::move(states);
    json amps = json::array();
    for (const auto& a : w) amps.push_back(tcdark::fraction_str(a));
    result["amplitudes"] = std::move(amps);
    result["certified"] = certified;
    emit(result, out);
    return certified ? 0 : 1;
}

int cmd_matchings(int n, int k, const std::string& family, const std::string& out) {
    auto fam = family == "all"
                   ? tcdark::singlets::enumerate_matchings(n, k, tcdark::singlets::MatchingFamily::all)
                   : tcdark::singlets::restricted_matching_basis(n, k);
    json params{{"n", n}, {"k", k}, {"family", family}};
    json result = tcdark::io::run_header("matchings", params);
    result["matchings"] = tcdark::io::matchings_json(n, k, fam);
    if (family != "all")
        result["matches_dark_dimension"] =
            static_cast<std::int64_t>(fam.size()) == tcdark::dark::dark_dimension(n, k);
    emit(result, out);
    return 0;
}

int cmd_singlet_decompose(int n, int k, const std::string& amps, std::optional<int> dark_index,
                          const std::string& family, const std::string& out) {
    tcdark::QVec v = resolve_sector_state(n, k, amps, dark_index);
    auto fam = family == "all" ? tcdark::singlets::MatchingFamily::all
                               : tcdark::singlets::MatchingFamily::non_crossing_uncovered;
    tcdark::singlets::SingletDecomposition d = tcdark::singlets::singlet_decompose(v, fam);
    json params{{"n", n}, {"k", k}, {"family", family}};
    if (!amps.empty()) params["amps"] = amps;
    if (dark_index) params["dark_index"] = *dark_index;
    json result = tcdark::io::run_header("singlet-decompose", params);
    result["decomposition"] = tcdark::io::decomposition_json(d);
    emit(result, out);
    return 0;
}

int cmd_quanta_check(int n, int k, const std::string& amps, std::optional<int> dark_index,
                     int pow_lo, int pow_hi, const std::string& out) {
    if (pow_lo < 1 || pow_hi < pow_lo || pow_hi > 20)
        throw std::invalid_argument("--eps-lo/--eps-hi expect 1 <= lo <= hi <= 20");
    tcdark::QVec exact = resolve_sector_state(n, k, amps, dark_index);

    // vacuum-sector semantics: amplitudes sit on the atomic layer of the E=k
    // excitation block, one photon emission below is empty
    tcdark::ops::CompositeBasis basis = tcdark::ops::CompositeBasis::rwa_sector(n, k);
    tcdark::SectorBasis sector(n, k);
    tcdark::CVec psi = tcdark::zero_vector<std::complex<double>>(basis.desc());
    for (std::size_t i = 0; i < sector.size(); ++i)
        if (exact.amps[i] != 0)
            psi.amps[basis.index_of(0, sector.state(i))] = tcdark::to_double(exact.amps[i]);
    tcdark::SparseOperator<double> h = tcdark::ops::unit_sector_hamiltonian(n, k);

    json params{{"n", n}, {"k", k}, {"eps_pows", std::to_string(pow_lo) + ":" + std::to_string(pow_hi)}};
    if (!amps.empty()) params["amps"] = amps;
    if (dark_index) params["dark_index"] = *dark_index;
    json result = tcdark::io::run_header("quanta-check", params);
    result["connected"] = tcdark::quanta::check_connected(h, psi);
    json runs = json::array();
    for (int q = pow_lo; q <= pow_hi; ++q) {
        double eps = std::ldexp(1.0, -q);
        tcdark::quanta::Quantization quant = tcdark::quanta::quantize(psi, h, eps);
        tcdark::quanta::QuantizationReport rep = tcdark::quanta::cancellation_pairing(quant);
        runs.push_back(tcdark::io::quantization_report_json(eps, quant, rep));
    }
    result["runs"] = std::move(runs);
    emit(result, out);
    return 0;
}

struct EvolveArgs {
    std::string model = "rwa";
    int n = 2;
    int excitation = -1;
    int m_max = 6;
    std::string g_text = "1";
    double omega_c = 1.0;
    double omega_a = 1.0;
    double horizon = 50.0;
    int steps = 200;
    std::string integrator = "exp";
    std::string initial = "almost-dark";
    std::string csv;
    std::string out;
};

int cmd_evolve(const EvolveArgs& a) {
    tcdark::ops::ModelParams p;
    p.n = a.n;
    p.couplings = tcdark::io::parse_couplings(a.g_text, a.n);
    p.omega_c = a.omega_c;
    p.omega_a = a.omega_a;

    tcdark::dyn::EvolutionConfig config;
    config.horizon = a.horizon;
    config.steps = a.steps;
    config.m_max = a.m_max;
    if (a.integrator == "rk4")
        config.integrator = tcdark::dyn::EvolutionConfig::Integrator::fixed_step_rk4;
    else if (a.integrator != "exp")
        throw std::invalid_argument("unknown --integrator: " + a.integrator);

    // initial state spec: dark:K:IDX | basis:BITS[:M] | dicke:K | almost-dark
    std::vector<std::string> parts;
    {
        std::string cur;
        for (char c : a.initial) {
            if (c == ':') {
                parts.push_back(cur);
                cur.clear();
            } else cur += c;
        }
        parts.push_back(cur);
    }

    int E = a.excitation;
    std::vector<std::pair<tcdark::AtomBasisState, double>> atom_amps;  // on m=0 unless basis:M
    int photon_m = 0;
    if (parts[0] == "dark" && parts.size() == 3) {
        int k = std::stoi(parts[1]);
        int idx = std::stoi(parts[2]);
        tcdark::dark::SubspaceBasis basis = tcdark::dark::dark_basis(a.n, k, p.couplings);
        if (idx < 0 || static_cast<std::size_t>(idx) >= basis.dimension())
            throw std::invalid_argument("dark index out of range");
        const auto& v = basis.vectors[static_cast<std::size_t>(idx)];
        double nrm = std::sqrt(tcdark::to_double(tcdark::norm_sq(v)));
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0)
                atom_amps.emplace_back(basis.sector.state(i), tcdark::to_double(v[i]) / nrm);
        if (E < 0) E = k;
    } else if (parts[0] == "basis" && (parts.size() == 2 || parts.size() == 3)) {
        tcdark::AtomBasisState s = tcdark::AtomBasisState::parse(parts[1]);
        if (s.n != a.n) throw std::invalid_argument("basis state length must equal n");
        photon_m = parts.size() == 3 ? std::stoi(parts[2]) : 0;
        atom_amps.emplace_back(s, 1.0);
        if (E < 0) E = s.weight() + photon_m;
    } else if (parts[0] == "dicke" && parts.size() == 2) {
        int k = std::stoi(parts[1]);
        tcdark::SectorBasis sector(a.n, k);
        double r = 1.0 / std::sqrt(static_cast<double>(sector.size()));
        for (const auto& s : sector.states()) atom_amps.emplace_back(s, r);
        if (E < 0) E = k;
    } else if (parts[0] == "almost-dark" && parts.size() == 1) {
        if (a.n != 2) throw std::invalid_argument("almost-dark initial state needs n=2");
        double r = 1.0 / std::sqrt(2.0);
        atom_amps.emplace_back(tcdark::AtomBasisState(0b11, 2), r);
        atom_amps.emplace_back(tcdark::AtomBasisState(0b00, 2), -r);
        if (E < 0) E = 2;
    } else {
        throw std::invalid_argument("unknown --initial spec: " + a.initial);
    }

    tcdark::SparseOperator<double> h;
    tcdark::CVec v0;
    if (a.model == "rwa") {
        if (parts[0] == "almost-dark")
            throw std::invalid_argument("almost-dark mixes excitation blocks; use --model tc");
        tcdark::ops::CompositeBasis basis = tcdark::ops::CompositeBasis::rwa_sector(a.n, E);
        h = tcdark::ops::build_rwa_hamiltonian(p, E);
        v0 = tcdark::zero_vector<std::complex<double>>(basis.desc());
        for (const auto& [s, amp] : atom_amps) v0.amps[basis.index_of(photon_m, s)] = amp;
    } else if (a.model == "tc" || a.model == "rwa-product") {
        tcdark::ops::CompositeBasis basis = tcdark::ops::CompositeBasis::cutoff_product(a.n, a.m_max);
        h = a.model == "tc" ? tcdark::ops::build_full_tc_hamiltonian(p, a.m_max)
                            : tcdark::ops::build_rwa_product_hamiltonian(p, a.m_max);
        v0 = tcdark::zero_vector<std::complex<double>>(basis.desc());
        for (const auto& [s, amp] : atom_amps) v0.amps[basis.index_of(photon_m, s)] = amp;
    } else {
        throw std::invalid_argument("unknown --model: " + a.model);
    }

    tcdark::dyn::EvolutionResult res = tcdark::dyn::evolve(h, v0, config);
    if (!a.csv.empty()) {
        std::ofstream f(a.csv);
        if (!f) throw std::invalid_argument("cannot open csv file: " + a.csv);
        tcdark::io::write_profile_csv(res.profile, f);
    }

    json params{{"model", a.model},     {"n", a.n},           {"E", E},
                {"m_max", a.m_max},     {"g", a.g_text},      {"omega_c", a.omega_c},
                {"omega_a", a.omega_a}, {"horizon", a.horizon}, {"steps", a.steps},
                {"integrator", a.integrator}, {"initial", a.initial}};
    json result = tcdark::io::run_header("evolve", params);
    result["profile"] = tcdark::io::profile_summary_json(res.profile);
    result["final_norm"] = tcdark::norm(res.final_state);
    emit(result, a.out);
    return 0;
}

int cmd_scan(const std::string& omega_text, const std::string& g_text, double horizon,
             int m_max, int steps, const std::string& out) {
    double g = tcdark::to_double(tcdark::parse_fraction(g_text));
    std::vector<double> omegas;
    if (omega_text.empty()) {
        for (double f : {0.5, 0.25, 0.125}) omegas.push_back(g * f);
    } else {
        for (const auto& part : tcdark::io::parse_amplitudes(omega_text))
            omegas.push_back(tcdark::to_double(part));
    }
    tcdark::dyn::EvolutionConfig config;
    config.m_max = m_max;
    config.steps = steps;
    std::vector<tcdark::dyn::ScanPoint> points =
        tcdark::dyn::almost_dark_scan(omegas, g, horizon, config);

    json params{{"omega_list", omega_text.empty() ? "g*{0.5,0.25,0.125}" : omega_text},
                {"g", g_text},
                {"horizon", horizon},
                {"m_max", m_max},
                {"steps", steps}};
    json result = tcdark::io::run_header("almost-dark-scan", params);
    result["points"] = tcdark::io::scan_json(points);
    std::vector<tcdark::dyn::ScanPoint> sorted = points;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& x, const auto& y) { return x.omega_a > y.omega_a; });
    result["monotone_nonincreasing"] = tcdark::dyn::leakage_nonincreasing(sorted);
    emit(result, out);
    return 0;
}

int cmd_verify(int n_max, std::uint64_t seed, bool skip_dynamics, const std::string& out) {
    tcdark::checks::Options opt;
    opt.n_max = n_max;
    opt.seed = seed;
    opt.include_dynamics = !skip_dynamics;
    bool any_failed = false;
    auto results = tcdark::checks::run_all(opt, [&](const tcdark::checks::CheckResult& r) {
        std::cout << (r.passed ? "[ok]   " : "[FAIL] ") << r.name << ": " << r.detail << "\n";
        if (!r.passed) any_failed = true;
    });
    if (!out.empty()) {
        json params{{"n_max", n_max}, {"seed", seed}, {"dynamics", !skip_dynamics}};
        json result = tcdark::io::run_header("verify", params);
        json list = json::array();
        for (const auto& r : results)
            list.push_back(json{{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        result["checks"] = std::move(list);
        emit(result, out);
    }
    return any_failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("structure of dark states for identical two-level atoms in a cavity "
                             "(artifact ") + tcdark::kVersion +
                 "); set TCDARK_THREADS to parallelize scans"};
    app.require_subcommand(1);

    // dim
    int dim_n_max = 8;
    bool dim_exact = false;
    std::string dim_out;
    auto* dim = app.add_subcommand("dim", "dark dimension table over all sectors");
    dim->add_option("--n-max", dim_n_max, "largest atom count")->required()->check(CLI::Range(1, 14));
    dim->add_flag("--exact", dim_exact, "also compute exact kernel dimensions");
    dim->add_option("-o,--out", dim_out, "output JSON path (default stdout)");

    // dark-basis
    int db_n = 2, db_k = 1;
    std::string db_g = "1", db_kind = "dark", db_out;
    auto* db = app.add_subcommand("dark-basis", "exact basis of a distinguished subspace");
    db->add_option("--n", db_n, "atom count")->required()->check(CLI::Range(1, 12));
    db->add_option("--k", db_k, "excited-atom count")->required()->check(CLI::Range(0, 12));
    db->add_option("--g", db_g, "couplings: one fraction or n comma-separated");
    db->add_option("--kind", db_kind, "dark | transparent | invisible");
    db->add_option("-o,--out", db_out, "output JSON path");

    // witness
    int w_n = 2, w_k = 1;
    std::string w_j0, w_out;
    auto* w = app.add_subcommand("witness", "surjectivity witness for one parent state");
    w->add_option("--n", w_n)->required()->check(CLI::Range(1, 12));
    w->add_option("--k", w_k)->required()->check(CLI::Range(1, 12));
    w->add_option("--j0", w_j0, "parent bit string of weight k-1")->required();
    w->add_option("-o,--out", w_out, "output JSON path");

    // matchings
    int m_n = 4, m_k = 2;
    std::string m_family = "restricted", m_out;
    auto* m = app.add_subcommand("matchings", "pair matchings that span the dark subspace");
    m->add_option("--n", m_n)->required()->check(CLI::Range(1, 12));
    m->add_option("--k", m_k)->required()->check(CLI::Range(0, 6));
    m->add_option("--family", m_family, "restricted | all");
    m->add_option("-o,--out", m_out, "output JSON path");

    // singlet-decompose
    int sd_n = 4, sd_k = 2;
    std::string sd_amps, sd_family = "restricted", sd_out;
    int sd_dark_index = -1;
    auto* sd = app.add_subcommand("singlet-decompose",
                                  "exact expansion of a sector vector over singlet products");
    sd->add_option("--n", sd_n)->required()->check(CLI::Range(1, 10));
    sd->add_option("--k", sd_k)->required()->check(CLI::Range(0, 5));
    sd->add_option("--amps", sd_amps, "comma-separated exact amplitudes in sector order");
    sd->add_option("--dark-index", sd_dark_index, "use this dark basis vector instead of --amps");
    sd->add_option("--family", sd_family, "restricted | all");
    sd->add_option("-o,--out", sd_out, "output JSON path");

    // quanta-check
    int q_n = 3, q_k = 1, q_lo = 3, q_hi = 8;
    std::string q_amps, q_out;
    int q_dark_index = -1;
    auto* q = app.add_subcommand("quanta-check",
                                 "amplitude-quantization error scaling on one sector state");
    q->add_option("--n", q_n)->required()->check(CLI::Range(1, 10));
    q->add_option("--k", q_k)->required()->check(CLI::Range(1, 5));
    q->add_option("--amps", q_amps, "comma-separated exact amplitudes in sector order");
    q->add_option("--dark-index", q_dark_index, "use this dark basis vector instead of --amps");
    q->add_option("--eps-lo", q_lo, "smallest power: eps = 2^-lo");
    q->add_option("--eps-hi", q_hi, "largest power: eps = 2^-hi");
    q->add_option("-o,--out", q_out, "output JSON path");

    // evolve
    EvolveArgs ev;
    auto* e = app.add_subcommand("evolve", "unitary evolution with emission profile");
    e->add_option("--model", ev.model, "rwa | tc | rwa-product");
    e->add_option("--n", ev.n)->required()->check(CLI::Range(1, 10));
    e->add_option("--E", ev.excitation, "excitation block (rwa model; default from initial)");
    e->add_option("--m-max", ev.m_max, "photon cutoff (product models)")->check(CLI::Range(0, 64));
    e->add_option("--g", ev.g_text, "couplings: one fraction or n comma-separated");
    e->add_option("--omega-c", ev.omega_c, "cavity frequency");
    e->add_option("--omega-a", ev.omega_a, "atomic frequency");
    e->add_option("--horizon", ev.horizon, "evolution time in units of 1/g");
    e->add_option("--steps", ev.steps, "profile sampling intervals")->check(CLI::Range(1, 100000));
    e->add_option("--integrator", ev.integrator, "exp | rk4");
    e->add_option("--initial", ev.initial, "dark:K:IDX | basis:BITS[:M] | dicke:K | almost-dark");
    e->add_option("--csv", ev.csv, "write profile CSV here");
    e->add_option("-o,--out", ev.out, "output JSON path");

    // almost-dark-scan
    std::string sc_omegas, sc_g = "1", sc_out;
    double sc_horizon = 50.0;
    int sc_m_max = 6, sc_steps = 200;
    auto* sc = app.add_subcommand("almost-dark-scan",
                                  "leakage of (|11>-|00>)/sqrt(2) across atomic frequencies");
    sc->add_option("--omega-list", sc_omegas, "comma-separated omega_a values (default g*{0.5,0.25,0.125})");
    sc->add_option("--g", sc_g, "coupling (fraction)");
    sc->add_option("--horizon", sc_horizon, "evolution time");
    sc->add_option("--m-max", sc_m_max, "photon cutoff")->check(CLI::Range(1, 64));
    sc->add_option("--steps", sc_steps, "profile sampling intervals")->check(CLI::Range(1, 100000));
    sc->add_option("-o,--out", sc_out, "output JSON path");

    // verify
    int v_n_max = 6;
    std::uint64_t v_seed = 12345;
    bool v_skip_dyn = false;
    std::string v_out;
    auto* v = app.add_subcommand("verify", "run the full invariant suite");
    v->add_option("--n-max", v_n_max, "scale bound for exhaustive checks")->check(CLI::Range(1, 12));
    v->add_option("--seed", v_seed, "seed for randomized property checks");
    v->add_flag("--skip-dynamics", v_skip_dyn, "skip the evolution checks");
    v->add_option("-o,--out", v_out, "also write results as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::ParseError& pe) {
        app.exit(pe);
        return 2;
    }

    try {
        if (dim->parsed()) return cmd_dim(dim_n_max, dim_exact, dim_out);
        if (db->parsed()) return cmd_dark_basis(db_n, db_k, db_g, db_kind, db_out);
        if (w->parsed()) return cmd_witness(w_n, w_k, w_j0, w_out);
        if (m->parsed()) return cmd_matchings(m_n, m_k, m_family, m_out);
        if (sd->parsed())
            return cmd_singlet_decompose(sd_n, sd_k, sd_amps,
                                         sd_dark_index >= 0 ? std::optional<int>(sd_dark_index)
                                                            : std::nullopt,
                                         sd_family, sd_out);
        if (q->parsed())
            return cmd_quanta_check(q_n, q_k, q_amps,
                                    q_dark_index >= 0 ? std::optional<int>(q_dark_index)
                                                      : std::nullopt,
                                    q_lo, q_hi, q_out);
        if (e->parsed()) return cmd_evolve(ev);
        if (sc->parsed()) return cmd_scan(sc_omegas, sc_g, sc_horizon, sc_m_max, sc_steps, sc_out);
        if (v->parsed()) return cmd_verify(v_n_max, v_seed, v_skip_dyn, v_out);
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "internal error: " << ex.what() << "\n";
        return 1;
    }
}
