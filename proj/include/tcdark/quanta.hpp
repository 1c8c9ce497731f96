#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "tcdark/linalg.hpp"

namespace tcdark::quanta {

// Sign tag carried by a quantum; multiplication is the cyclic group
// {+1, -1, +i, -i}.
enum class AmpType : std::uint8_t { plus, minus, plus_i, minus_i };

AmpType mul(AmpType a, AmpType b);
AmpType opposite(AmpType a);
AmpType conjugate(AmpType a);
std::complex<double> unit(AmpType a);

// One portion of amplitude of size quantum_size moving along a Hamiltonian
// transition. b_in != b_fin because the skeleton Hamiltonian carries no
// diagonal.
struct AmplitudeQuantum {
    std::uint64_t id;
    double size;
    std::uint32_t b_in;
    std::uint32_t b_fin;
    AmpType t_in;
    AmpType t_fin;
};

struct Quantization {
    BasisDesc basis;
    double epsilon = 0;       // requested resolution
    std::uint64_t nu = 0;     // entry occurrences per support column
    double quantum_size = 0;  // epsilon / nu
    double scale_c = 0;       // 1 / (nu * epsilon)
    std::vector<std::complex<double>> source;
    SparseOperator<double> hamiltonian;
    std::vector<AmplitudeQuantum> quanta;
};

struct CancellationPair {
    std::uint64_t first;
    std::uint64_t second;
};

struct QuantizationReport {
    double amp_error = 0;      // worst reconstruction error of a source amplitude
    double passage_error = 0;  // worst typed transition-count mismatch
    double shift_error = 0;    // || theta(psi) - c H psi ||_2
    bool condition_q = true;
    std::uint64_t total_quanta = 0;
    std::uint64_t cancelled_quanta = 0;
    double cancelled_fraction = 0;
    std::vector<CancellationPair> pairs;
};

// Necessary condition for a uniform occurrence count: the multisets of column
// entries must agree across every column holding amplitude. Columns outside
// the support may differ freely.
bool check_connected(const SparseOperator<double>& h, std::span<const std::size_t> support);
bool check_connected(const SparseOperator<double>& h, const CVec& psi);

// Nearest integer multiple, ties toward zero. value must be nonnegative.
std::uint64_t round_to_quanta(double value, double eps);

// Splits each amplitude into signed multiples of eps, each of those into nu
// portions of size eps/nu, and routes the portions along the Hamiltonian
// column of their state in lexicographic order (rows ascending, real before
// imaginary occurrence). A zero state quantizes to no quanta.
Quantization quantize(const CVec& psi, const SparseOperator<double>& h, double eps);

// Amplitude landed per state: eps' * sum of final types over incoming quanta.
CVec theta_shift(const Quantization& q);

// Greedy pairing of opposite final types per final state, plus the error
// figures of the whole construction. Meaningful convergence claims need a
// dark source; anything else still gets an honest report.
QuantizationReport cancellation_pairing(const Quantization& q);

}  // namespace tcdark::quanta
