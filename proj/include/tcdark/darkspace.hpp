#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tcdark/linalg.hpp"
#include "tcdark/sector.hpp"

namespace tcdark::dark {

enum class SubspaceKind { dark, transparent, invisible };

// Exact basis of a distinguished subspace of one atomic sector, stored in
// reduced column-echelon form (leading coefficient 1 at the earliest state a
// vector touches, that state zero in all other vectors).
struct SubspaceBasis {
    SubspaceKind kind = SubspaceKind::dark;
    int n = 0;
    int k = 0;
    SectorBasis sector;
    std::vector<std::vector<Rational>> vectors;

    std::size_t dimension() const { return vectors.size(); }
};

// max{C(n,k) - C(n,k-1), 0}; counts states annihilated by collective emission
// with equal couplings.
std::int64_t dark_dimension(int n, int k);

// max{C(n,k) - C(n,k+1), 0}; follows from the dark count via the bit
// complement, which swaps the roles of emission and absorption.
std::int64_t transparent_dimension(int n, int k);

SubspaceBasis dark_basis(int n, int k, std::span<const Rational> couplings);
SubspaceBasis transparent_basis(int n, int k, std::span<const Rational> couplings);
SubspaceBasis invisible_basis(int n, int k, std::span<const Rational> couplings);

// Equal-coupling overloads.
SubspaceBasis dark_basis(int n, int k);
SubspaceBasis transparent_basis(int n, int k);
SubspaceBasis invisible_basis(int n, int k);

// Row vector w over the weight-k sector with lowering(n,k,1) . w = e_{j0}:
// member j of weight k receives (-1)^p p! / prod_{i=0..p} (n-k+1-i) where
// p is the member's rank relative to j0. Requires weight(j0) = k-1 and
// 2k <= n+1 so that every denominator factor is positive.
std::vector<Rational> witness_vector(int n, int k, const AtomBasisState& j0);

// Exact membership tests. Vectors must live on a single weight sector.
bool is_dark(const QVec& v, std::span<const Rational> couplings);
bool is_transparent(const QVec& v, std::span<const Rational> couplings);
bool is_invisible(const QVec& v, std::span<const Rational> couplings);
bool is_dark(const QVec& v);
bool is_transparent(const QVec& v);
bool is_invisible(const QVec& v);

// Floating-point variants for states produced by dynamics.
bool is_dark(const CVec& v, std::span<const double> couplings, double tol = 1e-10);

// Scales a canonical basis vector to coprime integers with positive leading
// coefficient; presentation helper for reports.
std::vector<BigInt> integer_scaled(std::span<const Rational> v);

}  // namespace tcdark::dark
