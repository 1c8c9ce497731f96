#include "tcdark/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tcdark {

BasisDesc sector_desc(int n, int k) {
    BasisDesc d;
    d.kind = BasisKind::sector;
    d.n = n;
    d.tag = k;
    d.dim = (k < 0 || k > n) ? 0 : binomial(n, k);
    return d;
}

BasisDesc generic_desc(std::size_t dim) {
    BasisDesc d;
    d.kind = BasisKind::generic;
    d.dim = dim;
    return d;
}

namespace {

constexpr std::size_t kNoPivot = std::numeric_limits<std::size_t>::max();

// out = a - f*b for sorted sparse rows; b leads with coefficient 1.
SparseRowQ axpy_row(const SparseRowQ& a, const Rational& f, const SparseRowQ& b) {
    SparseRowQ out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.emplace_back(b[j].first, -f * b[j].second);
            ++j;
        } else {
            Rational v = a[i].second - f * b[j].second;
            if (v != 0) out.emplace_back(a[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

void normalize_leading(SparseRowQ& r) {
    Rational lead = r.front().second;
    if (lead == 1) return;
    for (auto& [c, v] : r) v /= lead;
}

struct ForwardElim {
    std::vector<SparseRowQ> pivot_rows;          // leading coefficient 1
    std::vector<std::size_t> pivot_row_for_col;  // kNoPivot when free

    explicit ForwardElim(std::size_t ncols)
        : pivot_row_for_col(ncols, kNoPivot) {}

    // Reduces `r` against installed pivots; installs it if independent.
    void feed(SparseRowQ r) {
        while (!r.empty()) {
            std::size_t lead = r.front().first;
            std::size_t p = pivot_row_for_col[lead];
            if (p == kNoPivot) {
                normalize_leading(r);
                pivot_row_for_col[lead] = pivot_rows.size();
                pivot_rows.push_back(std::move(r));
                return;
            }
            r = axpy_row(r, r.front().second, pivot_rows[p]);
        }
    }
};

}  // namespace

std::size_t exact_rank(std::vector<SparseRowQ> rows, std::size_t ncols) {
    ForwardElim e(ncols);
    for (auto& r : rows) e.feed(std::move(r));
    return e.pivot_rows.size();
}

EchelonForm exact_rref(std::vector<SparseRowQ> rows, std::size_t ncols) {
    ForwardElim e(ncols);
    for (auto& r : rows) e.feed(std::move(r));

    EchelonForm f;
    f.ncols = ncols;
    for (std::uint32_t c = 0; c < ncols; ++c)
        if (e.pivot_row_for_col[c] != kNoPivot) f.pivot_cols.push_back(c);

    // Back-substitute in descending pivot order; later rows are already final.
    f.rows.resize(f.pivot_cols.size());
    for (std::size_t idx = f.pivot_cols.size(); idx-- > 0;) {
        SparseRowQ r = std::move(e.pivot_rows[e.pivot_row_for_col[f.pivot_cols[idx]]]);
        for (std::size_t scan = 1; scan < r.size();) {
            std::size_t c = r[scan].first;
            std::size_t p = e.pivot_row_for_col[c];
            if (p == kNoPivot) {
                ++scan;
                continue;
            }
            // c is a later pivot column; its finished row sits at the position
            // of c in pivot_cols.
            auto it = std::lower_bound(f.pivot_cols.begin(), f.pivot_cols.end(), c);
            std::size_t fin = static_cast<std::size_t>(it - f.pivot_cols.begin());
            r = axpy_row(r, r[scan].second, f.rows[fin]);
        }
        f.rows[idx] = std::move(r);
    }
    return f;
}

std::vector<SparseRowQ> operator_rows(const SparseOperator<Rational>& op) {
    std::vector<SparseRowQ> rows;
    rows.reserve(op.rows());
    for (std::size_t r = 0; r < op.rows(); ++r) {
        SparseRowQ row;
        row.reserve(op.row(r).size());
        for (const auto& e : op.row(r)) row.emplace_back(static_cast<std::uint32_t>(e.col), e.value);
        if (!row.empty()) rows.push_back(std::move(row));
    }
    return rows;
}

std::size_t kernel_dimension(const SparseOperator<Rational>& op) {
    return op.cols() - exact_rank(operator_rows(op), op.cols());
}

namespace {

std::vector<std::vector<Rational>> kernel_from_rref(const EchelonForm& f) {
    std::vector<bool> is_pivot(f.ncols, false);
    for (auto c : f.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::uint32_t free = 0; free < f.ncols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(f.ncols, Rational(0));
        v[free] = 1;
        for (std::size_t i = 0; i < f.rows.size(); ++i) {
            const SparseRowQ& row = f.rows[i];
            auto it = std::lower_bound(row.begin(), row.end(), free,
                                       [](const auto& e, std::uint32_t c) { return e.first < c; });
            if (it != row.end() && it->first == free) v[f.pivot_cols[i]] = -it->second;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<SparseRowQ> to_sparse_rows(const std::vector<std::vector<Rational>>& vectors) {
    std::vector<SparseRowQ> rows;
    rows.reserve(vectors.size());
    for (const auto& v : vectors) {
        SparseRowQ r;
        for (std::uint32_t c = 0; c < v.size(); ++c)
            if (v[c] != 0) r.emplace_back(c, v[c]);
        if (!r.empty()) rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace

std::vector<std::vector<Rational>> canonical_kernel_basis(const SparseOperator<Rational>& op) {
    EchelonForm f = exact_rref(operator_rows(op), op.cols());
    auto raw = kernel_from_rref(f);
    // A second reduction turns the free-coordinate basis into column-echelon
    // form with pivots at the earliest touched positions.
    EchelonForm g = exact_rref(to_sparse_rows(raw), op.cols());
    std::vector<std::vector<Rational>> basis;
    basis.reserve(g.rows.size());
    for (const auto& row : g.rows) {
        std::vector<Rational> v(op.cols(), Rational(0));
        for (const auto& [c, val] : row) v[c] = val;
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t rank_of_vectors(const std::vector<std::vector<Rational>>& vectors,
                            std::size_t dim) {
    return exact_rank(to_sparse_rows(vectors), dim);
}

ExactProjection project_onto_span(const std::vector<std::vector<Rational>>& columns,
                                  std::span<const Rational> target) {
    const std::size_t m = columns.size();
    for (const auto& c : columns)
        if (c.size() != target.size())
            throw std::invalid_argument("project_onto_span: dimension mismatch");

    // Normal equations G x = y with G = B^T B, y = B^T target. G is PSD and y
    // lies in its range, so the reduced system is always consistent.
    std::vector<std::vector<Rational>> aug(m, std::vector<Rational>(m + 1, Rational(0)));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            Rational g = dot(columns[i], columns[j]);
            aug[i][j] = g;
            if (j != i) aug[j][i] = std::move(g);
        }
        aug[i][m] = dot(columns[i], target);
    }

    std::vector<Rational> y(m);
    for (std::size_t i = 0; i < m; ++i) y[i] = aug[i][m];

    // Dense RREF with first-nonzero pivoting; free coordinates stay zero.
    std::vector<std::size_t> pivot_col_of_row;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m && row < m; ++col) {
        std::size_t sel = row;
        while (sel < m && aug[sel][col] == 0) ++sel;
        if (sel == m) continue;
        std::swap(aug[sel], aug[row]);
        Rational inv = aug[row][col];
        for (std::size_t j = col; j <= m; ++j) aug[row][j] /= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || aug[i][col] == 0) continue;
            Rational f = aug[i][col];
            for (std::size_t j = col; j <= m; ++j) aug[i][j] -= f * aug[row][j];
        }
        pivot_col_of_row.push_back(col);
        ++row;
    }
    for (std::size_t i = row; i < m; ++i)
        if (aug[i][m] != 0)
            throw std::logic_error("project_onto_span: inconsistent normal equations");

    ExactProjection p;
    p.coeffs.assign(m, Rational(0));
    for (std::size_t i = 0; i < pivot_col_of_row.size(); ++i)
        p.coeffs[pivot_col_of_row[i]] = aug[i][m];

    p.residual_sq = norm_sq(target);
    for (std::size_t i = 0; i < m; ++i) p.residual_sq -= p.coeffs[i] * y[i];
    if (p.residual_sq < 0)
        throw std::logic_error("project_onto_span: negative residual");
    return p;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    Rational s(0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    return s;
}

Rational norm_sq(std::span<const Rational> a) { return dot(a, a); }

std::complex<double> dot(const CVec& a, const CVec& b) {
    if (!(a.basis == b.basis)) throw std::invalid_argument("dot: basis mismatch");
    std::complex<double> s = 0;
    for (std::size_t i = 0; i < a.amps.size(); ++i) s += std::conj(a.amps[i]) * b.amps[i];
    return s;
}

double norm(const CVec& a) {
    double s = 0;
    for (const auto& x : a.amps) s += std::norm(x);
    return std::sqrt(s);
}

}  // namespace tcdark
