#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "tcdark/linalg.hpp"
#include "tcdark/rational.hpp"
#include "tcdark/sector.hpp"

namespace tcdark::ops {

// One cavity mode, n two-level atoms, individual couplings. Couplings stay
// rational so kernel computations downstream remain exact; frequencies only
// ever enter floating-point Hamiltonians.
struct ModelParams {
    int n = 0;
    std::vector<Rational> couplings;
    double omega_c = 0.0;
    double omega_a = 0.0;

    void validate() const;
    static ModelParams equal_coupling(int n, const Rational& g = Rational(1),
                                      double omega_c = 0.0, double omega_a = 0.0);
};

std::vector<Rational> unit_couplings(int n);

// Basis of the atom-field space, either one excitation-number block (the
// rotating-wave interaction conserves E = m + weight) or the full product
// space with the photon ladder truncated at m_max.
//
// rwa_sector order: photon number ascending, atomic weight w = E - m
// descending, lexicographic within a layer. cutoff_product order: photon
// number ascending, atomic bits numeric within each photon number.
class CompositeBasis {
public:
    struct Element {
        int m;
        AtomBasisState atoms;
    };

    static CompositeBasis rwa_sector(int n, int E);
    static CompositeBasis cutoff_product(int n, int m_max);

    std::size_t size() const { return elements_.size(); }
    const Element& element(std::size_t i) const { return elements_[i]; }
    std::size_t index_of(int m, const AtomBasisState& atoms) const;
    const BasisDesc& desc() const { return desc_; }
    int n() const { return n_; }
    int excitation() const;  // rwa_sector only
    int photon_cutoff() const;  // cutoff_product only

private:
    CompositeBasis() = default;

    BasisDesc desc_;
    int n_ = 0;
    std::vector<Element> elements_;
    std::vector<std::size_t> layer_offset_;  // by photon number
    std::vector<SectorBasis> layer_basis_;   // rwa_sector only
};

// Collective emission map restricted to the weight-k sector: row j' of the
// result collects g_i over the members j of [j'] with j = j' + e_i. k = 0
// (and k = n for the raising direction) yield operators with zero rows.
SparseOperator<Rational> lowering_matrix(int n, int k, std::span<const Rational> couplings);
SparseOperator<Rational> raising_matrix(int n, int k, std::span<const Rational> couplings);

// Rotating-wave Hamiltonian on one excitation block E.
SparseOperator<double> build_rwa_hamiltonian(const ModelParams& p, int E);

// Full Hamiltonian with counter-rotating terms on the truncated product basis.
SparseOperator<double> build_full_tc_hamiltonian(const ModelParams& p, int m_max);

// Rotating-wave terms only, but on the same truncated product basis; useful
// for comparing the two dynamics on identical footing.
SparseOperator<double> build_rwa_product_hamiltonian(const ModelParams& p, int m_max);

// Interaction skeleton of one excitation block: every allowed transition gets
// matrix element 1 and the diagonal is dropped. This is the normal form used
// by the amplitude-quanta machinery.
SparseOperator<double> unit_sector_hamiltonian(int n, int E);

void write_matrix_market(const SparseOperator<double>& op, std::ostream& out);
void write_matrix_market(const SparseOperator<Rational>& op, std::ostream& out);

}  // namespace tcdark::ops
