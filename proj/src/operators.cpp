#include "tcdark/operators.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace tcdark::ops {

void ModelParams::validate() const {
    if (n < 1 || n > kMaxAtoms) throw std::invalid_argument("ModelParams: n out of range");
    if (static_cast<int>(couplings.size()) != n)
        throw std::invalid_argument("ModelParams: coupling count must equal n");
    bool any_positive = false;
    for (const auto& g : couplings) {
        if (g < 0) throw std::invalid_argument("ModelParams: couplings must be nonnegative");
        if (g > 0) any_positive = true;
    }
    if (!any_positive) throw std::invalid_argument("ModelParams: all couplings vanish");
    if (!std::isfinite(omega_c) || !std::isfinite(omega_a))
        throw std::invalid_argument("ModelParams: frequencies must be finite");
}

ModelParams ModelParams::equal_coupling(int n, const Rational& g, double omega_c,
                                        double omega_a) {
    ModelParams p;
    p.n = n;
    p.couplings.assign(static_cast<std::size_t>(n), g);
    p.omega_c = omega_c;
    p.omega_a = omega_a;
    return p;
}

std::vector<Rational> unit_couplings(int n) {
    return std::vector<Rational>(static_cast<std::size_t>(n), Rational(1));
}

CompositeBasis CompositeBasis::rwa_sector(int n, int E) {
    if (n < 1 || n > kMaxAtoms) throw std::invalid_argument("CompositeBasis: n out of range");
    if (E < 0) throw std::invalid_argument("CompositeBasis: negative excitation");
    CompositeBasis b;
    b.n_ = n;
    b.desc_ = {BasisKind::rwa_sector, n, E, 0};
    b.layer_offset_.assign(static_cast<std::size_t>(E) + 2, 0);
    b.layer_basis_.resize(static_cast<std::size_t>(E) + 1);
    for (int m = 0; m <= E; ++m) {
        int w = E - m;
        b.layer_offset_[static_cast<std::size_t>(m)] = b.elements_.size();
        if (w <= n) {
            SectorBasis layer(n, w);
            for (const auto& s : layer.states()) b.elements_.push_back({m, s});
            b.layer_basis_[static_cast<std::size_t>(m)] = std::move(layer);
        }
    }
    b.layer_offset_[static_cast<std::size_t>(E) + 1] = b.elements_.size();
    b.desc_.dim = b.elements_.size();
    return b;
}

CompositeBasis CompositeBasis::cutoff_product(int n, int m_max) {
    if (n < 1 || n > 16) throw std::invalid_argument("CompositeBasis: n out of range");
    if (m_max < 0) throw std::invalid_argument("CompositeBasis: negative cutoff");
    CompositeBasis b;
    b.n_ = n;
    std::size_t per_layer = std::size_t{1} << n;
    b.desc_ = {BasisKind::cutoff_product, n, m_max, (static_cast<std::size_t>(m_max) + 1) * per_layer};
    b.elements_.reserve(b.desc_.dim);
    b.layer_offset_.assign(static_cast<std::size_t>(m_max) + 2, 0);
    for (int m = 0; m <= m_max; ++m) {
        b.layer_offset_[static_cast<std::size_t>(m)] = b.elements_.size();
        for (std::uint32_t bits = 0; bits < per_layer; ++bits)
            b.elements_.push_back({m, AtomBasisState(bits, n)});
    }
    b.layer_offset_[static_cast<std::size_t>(m_max) + 1] = b.elements_.size();
    return b;
}

std::size_t CompositeBasis::index_of(int m, const AtomBasisState& atoms) const {
    if (atoms.n != n_) throw std::invalid_argument("CompositeBasis: atom count mismatch");
    if (m < 0 || m > desc_.tag) throw std::invalid_argument("CompositeBasis: photon number out of range");
    if (desc_.kind == BasisKind::cutoff_product)
        return layer_offset_[static_cast<std::size_t>(m)] + atoms.bits;
    int w = desc_.tag - m;
    if (atoms.weight() != w)
        throw std::invalid_argument("CompositeBasis: weight incompatible with excitation block");
    const SectorBasis& layer = layer_basis_[static_cast<std::size_t>(m)];
    if (layer.n() == 0) throw std::invalid_argument("CompositeBasis: empty layer");
    return layer_offset_[static_cast<std::size_t>(m)] + layer.index_of(atoms);
}

int CompositeBasis::excitation() const {
    if (desc_.kind != BasisKind::rwa_sector)
        throw std::logic_error("CompositeBasis: not an excitation block");
    return desc_.tag;
}

int CompositeBasis::photon_cutoff() const {
    if (desc_.kind != BasisKind::cutoff_product)
        throw std::logic_error("CompositeBasis: not a product basis");
    return desc_.tag;
}

SparseOperator<Rational> lowering_matrix(int n, int k, std::span<const Rational> couplings) {
    if (n < 1 || n > kMaxAtoms) throw std::invalid_argument("lowering_matrix: n out of range");
    if (k < 0 || k > n) throw std::invalid_argument("lowering_matrix: k out of range");
    if (static_cast<int>(couplings.size()) != n)
        throw std::invalid_argument("lowering_matrix: coupling count must equal n");
    SparseOperator<Rational> op(sector_desc(n, k), sector_desc(n, k - 1));
    if (k >= 1) {
        SectorBasis domain(n, k);
        SectorBasis parents(n, k - 1);
        for (std::size_t c = 0; c < domain.size(); ++c) {
            const AtomBasisState& j = domain.state(c);
            for (int a = 1; a <= n; ++a) {
                if (!j.excited(a) || couplings[static_cast<std::size_t>(a - 1)] == 0) continue;
                op.add(parents.index_of(j.with_cleared(a)), c,
                       couplings[static_cast<std::size_t>(a - 1)]);
            }
        }
    }
    op.finalize();
    return op;
}

SparseOperator<Rational> raising_matrix(int n, int k, std::span<const Rational> couplings) {
    if (n < 1 || n > kMaxAtoms) throw std::invalid_argument("raising_matrix: n out of range");
    if (k < 0 || k > n) throw std::invalid_argument("raising_matrix: k out of range");
    if (static_cast<int>(couplings.size()) != n)
        throw std::invalid_argument("raising_matrix: coupling count must equal n");
    SparseOperator<Rational> op(sector_desc(n, k), sector_desc(n, k + 1));
    if (k < n) {
        SectorBasis domain(n, k);
        SectorBasis children(n, k + 1);
        for (std::size_t c = 0; c < domain.size(); ++c) {
            const AtomBasisState& j = domain.state(c);
            for (int a = 1; a <= n; ++a) {
                if (j.excited(a) || couplings[static_cast<std::size_t>(a - 1)] == 0) continue;
                op.add(children.index_of(j.with_set(a)), c,
                       couplings[static_cast<std::size_t>(a - 1)]);
            }
        }
    }
    op.finalize();
    return op;
}

SparseOperator<double> build_rwa_hamiltonian(const ModelParams& p, int E) {
    p.validate();
    CompositeBasis basis = CompositeBasis::rwa_sector(p.n, E);
    SparseOperator<double> h(basis.desc(), basis.desc());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto& el = basis.element(i);
        double diag = el.m * p.omega_c + el.atoms.weight() * p.omega_a;
        if (diag != 0.0) h.add(i, i, diag);
        if (el.m + 1 > E) continue;
        // photon emission: |m, j> -> sqrt(m+1) g_a |m+1, j - e_a|
        for (int a = 1; a <= p.n; ++a) {
            if (!el.atoms.excited(a)) continue;
            double g = to_double(p.couplings[static_cast<std::size_t>(a - 1)]);
            if (g == 0.0) continue;
            double v = g * std::sqrt(static_cast<double>(el.m + 1));
            std::size_t r = basis.index_of(el.m + 1, el.atoms.with_cleared(a));
            h.add(r, i, v);
            h.add(i, r, v);
        }
    }
    h.finalize();
    return h;
}

namespace {

SparseOperator<double> build_product_hamiltonian(const ModelParams& p, int m_max,
                                                 bool counter_rotating) {
    p.validate();
    CompositeBasis basis = CompositeBasis::cutoff_product(p.n, m_max);
    SparseOperator<double> h(basis.desc(), basis.desc());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto& el = basis.element(i);
        double diag = el.m * p.omega_c + el.atoms.weight() * p.omega_a;
        if (diag != 0.0) h.add(i, i, diag);
        if (el.m + 1 > m_max) continue;
        double fock = std::sqrt(static_cast<double>(el.m + 1));
        for (int a = 1; a <= p.n; ++a) {
            double g = to_double(p.couplings[static_cast<std::size_t>(a - 1)]);
            if (g == 0.0) continue;
            if (el.atoms.excited(a)) {
                // rotating term: photon created, atom relaxed
                std::size_t r = basis.index_of(el.m + 1, el.atoms.with_cleared(a));
                h.add(r, i, g * fock);
                h.add(i, r, g * fock);
            } else if (counter_rotating) {
                // counter-rotating term: photon created, atom excited
                std::size_t r = basis.index_of(el.m + 1, el.atoms.with_set(a));
                h.add(r, i, g * fock);
                h.add(i, r, g * fock);
            }
        }
    }
    h.finalize();
    return h;
}

}  // namespace

SparseOperator<double> build_full_tc_hamiltonian(const ModelParams& p, int m_max) {
    return build_product_hamiltonian(p, m_max, true);
}

SparseOperator<double> build_rwa_product_hamiltonian(const ModelParams& p, int m_max) {
    return build_product_hamiltonian(p, m_max, false);
}

SparseOperator<double> unit_sector_hamiltonian(int n, int E) {
    CompositeBasis basis = CompositeBasis::rwa_sector(n, E);
    SparseOperator<double> h(basis.desc(), basis.desc());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto& el = basis.element(i);
        if (el.m + 1 > E) continue;
        for (int a = 1; a <= n; ++a) {
            if (!el.atoms.excited(a)) continue;
            std::size_t r = basis.index_of(el.m + 1, el.atoms.with_cleared(a));
            h.add(r, i, 1.0);
            h.add(i, r, 1.0);
        }
    }
    h.finalize();
    return h;
}

namespace {

template <class T, class Format>
void write_mm(const SparseOperator<T>& op, std::ostream& out, Format format) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << op.rows() << " " << op.cols() << " " << op.nnz() << "\n";
    for (std::size_t r = 0; r < op.rows(); ++r)
        for (const auto& e : op.row(r))
            out << (r + 1) << " " << (e.col + 1) << " " << format(e.value) << "\n";
}

}  // namespace

void write_matrix_market(const SparseOperator<double>& op, std::ostream& out) {
    write_mm(op, out, [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    });
}

void write_matrix_market(const SparseOperator<Rational>& op, std::ostream& out) {
    write_mm(op, out, [](const Rational& v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", to_double(v));
        return std::string(buf);
    });
}

}  // namespace tcdark::ops
