#pragma once

#include <functional>
#include <vector>

#include "tcdark/linalg.hpp"
#include "tcdark/operators.hpp"

namespace tcdark::dyn {

struct EvolutionConfig {
    double horizon = 50.0;  // in units of 1/g
    int steps = 200;        // sampling intervals over the horizon
    enum class Integrator { matrix_exponential, fixed_step_rk4 } integrator =
        Integrator::matrix_exponential;
    int m_max = 0;  // photon cutoff for scans; 0 picks a default
    double norm_tolerance = 1e-9;
};

struct EmissionProfile {
    std::vector<double> times;
    std::vector<double> photon_expectation;
    std::vector<double> atomic_excitation;
    double max_leakage = 0;
};

struct EvolutionResult {
    CVec final_state;
    EmissionProfile profile;
};

// Invokes the callback at steps+1 sample times including both endpoints.
// Dense spectral propagation up to dimension 4096, fixed-step fourth-order
// integration above that or on request; norm drift beyond norm_tolerance
// aborts with a diagnostic.
void sample_evolution(const SparseOperator<double>& h, const CVec& v0,
                      const EvolutionConfig& config,
                      const std::function<void(double, const CVec&)>& on_sample);

// Evolution plus photon / atomic-excitation expectations. The operator must
// live on an atom-field basis (excitation block or photon-cutoff product) so
// the observables are defined.
EvolutionResult evolve(const SparseOperator<double>& h, const CVec& v0,
                       const EvolutionConfig& config);

// True iff |<v0|v(t)>| >= 1 - tol at every sample.
bool stationarity_check(const SparseOperator<double>& h, const CVec& v0, double horizon,
                        double tol, int steps = 200);

struct ScanPoint {
    double omega_a;
    double max_leakage;
    bool cutoff_converged;  // m_max vs m_max+2 agree within 1e-6
};

// Leakage of (|11> - |00>)/sqrt(2) x vacuum under the full two-atom model at
// zero detuning (omega_c = omega_a), one point per listed omega_a. Points run
// in parallel when TCDARK_THREADS asks for it; output order follows input.
std::vector<ScanPoint> almost_dark_scan(std::span<const double> omega_list, double g,
                                        double horizon, const EvolutionConfig& config);

bool leakage_nonincreasing(std::span<const ScanPoint> points_by_decreasing_omega);

}  // namespace tcdark::dyn
