#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace tcdark::checks {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct Options {
    int n_max = 6;         // lowers each check's own exhaustive bound, never raises it
    std::uint64_t seed = 12345;
    bool include_dynamics = true;
    bool fail_fast = false;
};

// sector
CheckResult check_family_counting(int n_max);
CheckResult check_family_intersection(int n_max);
CheckResult check_rank_counting(int n_max);
CheckResult check_transposition_metric(int n_max);

// operators
CheckResult check_hermiticity(int n_max);
CheckResult check_rwa_excitation_block(int n_max);
CheckResult check_raising_transpose(int n_max);
CheckResult check_complement_symmetry(int n_max);

// darkspace
CheckResult check_dimension_formula(int n_max);
CheckResult check_witness_certificates(int n_max);
CheckResult check_dark_subset_transparent(int n_max);
CheckResult check_permutation_invariance(int n_max, std::uint64_t seed);
CheckResult check_unequal_couplings_dimension(int n_max, std::uint64_t seed);  // reported only

// singlets
CheckResult check_antisymmetrizer_projector(int n_max);
CheckResult check_matching_family_basis(int n_max);
CheckResult check_singlet_scalar_powers(int n_max);
CheckResult check_matching_span_permutation(int n_max, std::uint64_t seed);

// quanta
CheckResult check_quantization_structure();
CheckResult check_shift_halving();

// dynamics
CheckResult check_conservation_laws();
CheckResult check_singlet_product_leakage();

// Full suite in a fixed order; on_result fires as each check finishes so a
// front end can stream progress. fail_fast stops after the first failure.
std::vector<CheckResult> run_all(const Options& opt,
                                 const std::function<void(const CheckResult&)>& on_result = {});

}  // namespace tcdark::checks
