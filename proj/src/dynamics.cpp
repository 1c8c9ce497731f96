#include "tcdark/dynamics.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdlib>
#include <future>
#include <stdexcept>
#include <string>

namespace tcdark::dyn {

namespace {

constexpr std::size_t kDenseLimit = 4096;

Eigen::MatrixXd to_dense(const SparseOperator<double>& h) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(h.rows()),
                                              static_cast<Eigen::Index>(h.cols()));
    for (std::size_t r = 0; r < h.rows(); ++r)
        for (const auto& e : h.row(r))
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(e.col)) = e.value;
    return m;
}

void check_input(const SparseOperator<double>& h, const CVec& v0,
                 const EvolutionConfig& config) {
    if (h.rows() != h.cols()) throw std::invalid_argument("evolve: operator not square");
    if (!(v0.basis == h.domain())) throw std::invalid_argument("evolve: basis mismatch");
    if (!(config.horizon > 0)) throw std::invalid_argument("evolve: horizon must be positive");
    if (config.steps < 1) throw std::invalid_argument("evolve: need at least one step");
    double n = norm(v0);
    if (std::fabs(n - 1.0) > 1e-8)
        throw std::invalid_argument("evolve: initial state not normalized");
}

void check_norm(const CVec& v, double t, double tol) {
    double drift = std::fabs(norm(v) - 1.0);
    if (drift > tol)
        throw std::runtime_error("evolve: norm drift " + std::to_string(drift) + " at t=" +
                                 std::to_string(t) + " exceeds tolerance");
}

void sample_spectral(const SparseOperator<double>& h, const CVec& v0,
                     const EvolutionConfig& config,
                     const std::function<void(double, const CVec&)>& on_sample) {
    if (!h.is_symmetric())
        throw std::invalid_argument("evolve: spectral propagation needs a symmetric operator");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_dense(h));
    if (es.info() != Eigen::Success)
        throw std::runtime_error("evolve: eigendecomposition failed");
    const Eigen::MatrixXd& u = es.eigenvectors();
    const Eigen::VectorXd& lam = es.eigenvalues();
    Eigen::Index dim = u.rows();

    Eigen::VectorXcd w0(dim);
    for (Eigen::Index i = 0; i < dim; ++i) w0(i) = 0;
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index r = 0; r < dim; ++r)
            w0(i) += u(r, i) * v0.amps[static_cast<std::size_t>(r)];

    CVec v = zero_vector<std::complex<double>>(v0.basis);
    for (int s = 0; s <= config.steps; ++s) {
        double t = config.horizon * static_cast<double>(s) / config.steps;
        Eigen::VectorXcd w(dim);
        for (Eigen::Index i = 0; i < dim; ++i)
            w(i) = std::exp(std::complex<double>(0, -lam(i) * t)) * w0(i);
        Eigen::VectorXcd vt = u * w;
        for (Eigen::Index r = 0; r < dim; ++r) v.amps[static_cast<std::size_t>(r)] = vt(r);
        check_norm(v, t, config.norm_tolerance);
        on_sample(t, v);
    }
}

std::vector<std::complex<double>> times_minus_i_h(const SparseOperator<double>& h,
                                                  const std::vector<std::complex<double>>& v) {
    std::vector<std::complex<double>> out(v.size(), std::complex<double>(0, 0));
    const std::complex<double> minus_i(0, -1);
    for (std::size_t r = 0; r < h.rows(); ++r) {
        std::complex<double> acc = 0;
        for (const auto& e : h.row(r)) acc += e.value * v[e.col];
        out[r] = minus_i * acc;
    }
    return out;
}

void sample_rk4(const SparseOperator<double>& h, const CVec& v0, const EvolutionConfig& config,
                const std::function<void(double, const CVec&)>& on_sample) {
    // Gershgorin bound on the spectral radius fixes a stable substep.
    double rho = 0;
    for (std::size_t r = 0; r < h.rows(); ++r) {
        double s = 0;
        for (const auto& e : h.row(r)) s += std::fabs(e.value);
        rho = std::max(rho, s);
    }
    double sample_dt = config.horizon / config.steps;
    int substeps = std::max(1, static_cast<int>(std::ceil(sample_dt * std::max(rho, 1e-12) / 0.05)));
    if (substeps > 2'000'000) throw std::invalid_argument("evolve: step budget exceeded");
    double dt = sample_dt / substeps;

    CVec v = v0;
    on_sample(0.0, v);
    for (int s = 1; s <= config.steps; ++s) {
        for (int sub = 0; sub < substeps; ++sub) {
            const auto& y = v.amps;
            auto k1 = times_minus_i_h(h, y);
            std::vector<std::complex<double>> tmp(y.size());
            for (std::size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
            auto k2 = times_minus_i_h(h, tmp);
            for (std::size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
            auto k3 = times_minus_i_h(h, tmp);
            for (std::size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + dt * k3[i];
            auto k4 = times_minus_i_h(h, tmp);
            for (std::size_t i = 0; i < y.size(); ++i)
                v.amps[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        double t = sample_dt * s;
        check_norm(v, t, config.norm_tolerance);
        on_sample(t, v);
    }
}

}  // namespace

void sample_evolution(const SparseOperator<double>& h, const CVec& v0,
                      const EvolutionConfig& config,
                      const std::function<void(double, const CVec&)>& on_sample) {
    check_input(h, v0, config);
    bool dense_ok = h.rows() <= kDenseLimit;
    if (config.integrator == EvolutionConfig::Integrator::matrix_exponential && dense_ok)
        sample_spectral(h, v0, config, on_sample);
    else
        sample_rk4(h, v0, config, on_sample);
}

EvolutionResult evolve(const SparseOperator<double>& h, const CVec& v0,
                       const EvolutionConfig& config) {
    const BasisDesc& d = h.domain();
    ops::CompositeBasis basis = [&] {
        if (d.kind == BasisKind::rwa_sector) return ops::CompositeBasis::rwa_sector(d.n, d.tag);
        if (d.kind == BasisKind::cutoff_product)
            return ops::CompositeBasis::cutoff_product(d.n, d.tag);
        throw std::invalid_argument("evolve: observables need an atom-field basis");
    }();

    EvolutionResult res;
    res.profile.times.reserve(static_cast<std::size_t>(config.steps) + 1);
    sample_evolution(h, v0, config, [&](double t, const CVec& v) {
        double photons = 0;
        double excited = 0;
        for (std::size_t i = 0; i < v.amps.size(); ++i) {
            double p = std::norm(v.amps[i]);
            if (p == 0.0) continue;
            const auto& el = basis.element(i);
            photons += p * el.m;
            excited += p * el.atoms.weight();
        }
        res.profile.times.push_back(t);
        res.profile.photon_expectation.push_back(photons);
        res.profile.atomic_excitation.push_back(excited);
        res.profile.max_leakage = std::max(res.profile.max_leakage, photons);
        res.final_state = v;
    });
    return res;
}

bool stationarity_check(const SparseOperator<double>& h, const CVec& v0, double horizon,
                        double tol, int steps) {
    EvolutionConfig config;
    config.horizon = horizon;
    config.steps = steps;
    bool stationary = true;
    sample_evolution(h, v0, config, [&](double, const CVec& v) {
        if (std::abs(dot(v0, v)) < 1.0 - tol) stationary = false;
    });
    return stationary;
}

namespace {

double scan_leakage(double omega_a, double g, double horizon, const EvolutionConfig& config,
                    int m_max) {
    ops::ModelParams p = ops::ModelParams::equal_coupling(2, Rational(g), omega_a, omega_a);
    ops::CompositeBasis basis = ops::CompositeBasis::cutoff_product(2, m_max);
    SparseOperator<double> h = ops::build_full_tc_hamiltonian(p, m_max);
    CVec v0 = zero_vector<std::complex<double>>(basis.desc());
    double r = 1.0 / std::sqrt(2.0);
    v0.amps[basis.index_of(0, AtomBasisState(0b11, 2))] = r;
    v0.amps[basis.index_of(0, AtomBasisState(0b00, 2))] = -r;
    EvolutionConfig local = config;
    local.horizon = horizon;
    return evolve(h, v0, local).profile.max_leakage;
}

int requested_threads() {
    const char* env = std::getenv("TCDARK_THREADS");
    if (!env) return 1;
    int t = std::atoi(env);
    return t > 0 ? t : 1;
}

}  // namespace

std::vector<ScanPoint> almost_dark_scan(std::span<const double> omega_list, double g,
                                        double horizon, const EvolutionConfig& config) {
    if (!(g > 0)) throw std::invalid_argument("almost_dark_scan: coupling must be positive");
    int m_max = config.m_max > 0 ? config.m_max : 6;
    auto run_point = [&](double omega) {
        double l1 = scan_leakage(omega, g, horizon, config, m_max);
        double l2 = scan_leakage(omega, g, horizon, config, m_max + 2);
        return ScanPoint{omega, l1, std::fabs(l1 - l2) <= 1e-6};
    };

    std::vector<ScanPoint> out(omega_list.size());
    int threads = requested_threads();
    if (threads <= 1) {
        for (std::size_t i = 0; i < omega_list.size(); ++i) out[i] = run_point(omega_list[i]);
        return out;
    }
    std::size_t next = 0;
    while (next < omega_list.size()) {
        std::size_t batch = std::min<std::size_t>(static_cast<std::size_t>(threads),
                                                  omega_list.size() - next);
        std::vector<std::future<ScanPoint>> futs;
        futs.reserve(batch);
        for (std::size_t b = 0; b < batch; ++b)
            futs.push_back(std::async(std::launch::async, run_point, omega_list[next + b]));
        for (std::size_t b = 0; b < batch; ++b) out[next + b] = futs[b].get();
        next += batch;
    }
    return out;
}

bool leakage_nonincreasing(std::span<const ScanPoint> points_by_decreasing_omega) {
    for (std::size_t i = 1; i < points_by_decreasing_omega.size(); ++i)
        if (points_by_decreasing_omega[i].max_leakage >
            points_by_decreasing_omega[i - 1].max_leakage + 1e-12)
            return false;
    return true;
}

}  // namespace tcdark::dyn
