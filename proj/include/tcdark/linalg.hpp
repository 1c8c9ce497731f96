#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "tcdark/rational.hpp"
#include "tcdark/sector.hpp"

namespace tcdark {

enum class BasisKind { sector, rwa_sector, cutoff_product, generic };

// Lightweight tag carried by vectors and operators so cross-basis application
// fails loudly instead of silently permuting amplitudes.
//   sector:         tag = k
//   rwa_sector:     tag = total excitation E
//   cutoff_product: tag = photon cutoff m_max
struct BasisDesc {
    BasisKind kind = BasisKind::generic;
    int n = 0;
    int tag = 0;
    std::size_t dim = 0;

    friend bool operator==(const BasisDesc&, const BasisDesc&) = default;
};

BasisDesc sector_desc(int n, int k);
BasisDesc generic_desc(std::size_t dim);

template <class T>
struct StateVector {
    BasisDesc basis;
    std::vector<T> amps;
};

using QVec = StateVector<Rational>;
using DVec = StateVector<double>;
using CVec = StateVector<std::complex<double>>;

template <class T>
StateVector<T> zero_vector(const BasisDesc& basis) {
    return {basis, std::vector<T>(basis.dim, T{})};
}

// Row-compressed sparse matrix. Build with add(), then finalize(); rows come
// out sorted by column with exact duplicates merged and zeros dropped.
template <class T>
class SparseOperator {
public:
    struct Entry {
        std::size_t col;
        T value;
    };

    SparseOperator() = default;
    SparseOperator(BasisDesc domain, BasisDesc codomain)
        : domain_(domain), codomain_(codomain) {}

    void add(std::size_t row, std::size_t col, T value) {
        if (finalized_) throw std::logic_error("SparseOperator: add after finalize");
        if (row >= codomain_.dim || col >= domain_.dim)
            throw std::invalid_argument("SparseOperator: entry out of range");
        triplets_.emplace_back(row, col, std::move(value));
    }

    void finalize();

    std::size_t rows() const { return codomain_.dim; }
    std::size_t cols() const { return domain_.dim; }
    std::size_t nnz() const { return entries_.size(); }
    const BasisDesc& domain() const { return domain_; }
    const BasisDesc& codomain() const { return codomain_; }

    std::span<const Entry> row(std::size_t r) const {
        check_finalized();
        return {entries_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
    }

    SparseOperator<T> transposed() const;

    // Exact structural symmetry: square and entrywise equal to its transpose.
    bool is_symmetric() const;

private:
    void check_finalized() const {
        if (!finalized_) throw std::logic_error("SparseOperator: not finalized");
    }

    BasisDesc domain_;
    BasisDesc codomain_;
    bool finalized_ = false;
    std::vector<std::tuple<std::size_t, std::size_t, T>> triplets_;
    std::vector<std::size_t> row_ptr_;
    std::vector<Entry> entries_;
};

template <class T, class U, class R>
StateVector<R> apply_as(const SparseOperator<T>& op, const StateVector<U>& v) {
    if (!(v.basis == op.domain()))
        throw std::invalid_argument("apply: vector basis does not match operator domain");
    StateVector<R> out = zero_vector<R>(op.codomain());
    for (std::size_t r = 0; r < op.rows(); ++r) {
        R acc{};
        for (const auto& e : op.row(r)) acc += R(e.value) * R(v.amps[e.col]);
        out.amps[r] = acc;
    }
    return out;
}

inline QVec apply(const SparseOperator<Rational>& op, const QVec& v) {
    return apply_as<Rational, Rational, Rational>(op, v);
}
inline DVec apply(const SparseOperator<double>& op, const DVec& v) {
    return apply_as<double, double, double>(op, v);
}
inline CVec apply(const SparseOperator<double>& op, const CVec& v) {
    return apply_as<double, std::complex<double>, std::complex<double>>(op, v);
}

// ---- exact elimination over the rationals ----

// Sparse row: (column, value) pairs sorted by column, values nonzero.
using SparseRowQ = std::vector<std::pair<std::uint32_t, Rational>>;

struct EchelonForm {
    std::size_t ncols = 0;
    std::vector<std::uint32_t> pivot_cols;  // ascending
    std::vector<SparseRowQ> rows;           // rows[i] leads with 1 at pivot_cols[i]
};

std::size_t exact_rank(std::vector<SparseRowQ> rows, std::size_t ncols);
EchelonForm exact_rref(std::vector<SparseRowQ> rows, std::size_t ncols);

std::vector<SparseRowQ> operator_rows(const SparseOperator<Rational>& op);

std::size_t kernel_dimension(const SparseOperator<Rational>& op);

// Kernel basis in reduced column-echelon form: each vector has leading
// coefficient 1 at the earliest position it touches, that position is zero in
// every other vector, and vectors are ordered by leading position.
std::vector<std::vector<Rational>> canonical_kernel_basis(const SparseOperator<Rational>& op);

std::size_t rank_of_vectors(const std::vector<std::vector<Rational>>& vectors,
                            std::size_t dim);

// Exact orthogonal projection of `target` onto span(columns) via the normal
// equations. residual_sq == 0 iff target lies in the span; coefficients are
// the canonical solution with non-pivot coordinates set to zero.
struct ExactProjection {
    std::vector<Rational> coeffs;
    Rational residual_sq;
};

ExactProjection project_onto_span(const std::vector<std::vector<Rational>>& columns,
                                  std::span<const Rational> target);

// ---- small vector helpers ----

Rational dot(std::span<const Rational> a, std::span<const Rational> b);
Rational norm_sq(std::span<const Rational> a);
std::complex<double> dot(const CVec& a, const CVec& b);  // conjugate-linear in a
double norm(const CVec& a);

// ---- template bodies ----

template <class T>
void SparseOperator<T>::finalize() {
    if (finalized_) return;
    std::vector<std::vector<Entry>> by_row(codomain_.dim);
    for (auto& [r, c, v] : triplets_) by_row[r].push_back({c, std::move(v)});
    triplets_.clear();
    triplets_.shrink_to_fit();
    row_ptr_.assign(codomain_.dim + 1, 0);
    for (std::size_t r = 0; r < by_row.size(); ++r) {
        auto& row = by_row[r];
        std::sort(row.begin(), row.end(),
                  [](const Entry& a, const Entry& b) { return a.col < b.col; });
        std::size_t w = 0;
        for (std::size_t i = 0; i < row.size();) {
            T acc = row[i].value;
            std::size_t j = i + 1;
            while (j < row.size() && row[j].col == row[i].col) acc += row[j++].value;
            if (!(acc == T{})) row[w++] = {row[i].col, std::move(acc)};
            i = j;
        }
        row.resize(w);
        row_ptr_[r + 1] = row_ptr_[r] + row.size();
    }
    entries_.reserve(row_ptr_.back());
    for (auto& row : by_row)
        for (auto& e : row) entries_.push_back(std::move(e));
    finalized_ = true;
}

template <class T>
SparseOperator<T> SparseOperator<T>::transposed() const {
    check_finalized();
    SparseOperator<T> t(codomain_, domain_);
    for (std::size_t r = 0; r < rows(); ++r)
        for (const auto& e : row(r)) t.add(e.col, r, e.value);
    t.finalize();
    return t;
}

template <class T>
bool SparseOperator<T>::is_symmetric() const {
    check_finalized();
    if (rows() != cols()) return false;
    SparseOperator<T> t = transposed();
    if (t.nnz() != nnz()) return false;
    for (std::size_t r = 0; r < rows(); ++r) {
        auto a = row(r);
        auto b = t.row(r);
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i].col != b[i].col || !(a[i].value == b[i].value)) return false;
    }
    return true;
}

}  // namespace tcdark
