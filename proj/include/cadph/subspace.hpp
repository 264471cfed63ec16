#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cadph/errors.hpp"
#include "cadph/matrix.hpp"

namespace cadph {

/// A linear subspace of F^ambient_dim stored by its reduced row-echelon basis.
///
/// The basis is canonical: two subspaces are equal iff their representations are
/// equal, so operator== is plain structural comparison.
template <Field F>
class Subspace {
public:
    using value_type = typename F::value_type;

    Subspace() = default;

    static Subspace zero(F field, std::size_t ambient) { return Subspace(Matrix<F>(field, 0, ambient)); }
    static Subspace full(F field, std::size_t ambient) { return Subspace(Matrix<F>::identity(field, ambient)); }

    /// Span of the rows of `generators`.
    static Subspace span(const Matrix<F>& generators) {
        auto r = rref(generators);
        Matrix<F> basis(generators.field(), 0, generators.cols());
        for (std::size_t i = 0; i < r.rank; ++i) basis.append_row(r.reduced.row(i));
        return Subspace(std::move(basis), std::move(r.pivots));
    }

    const F& field() const { return basis_.field(); }
    std::size_t ambient_dim() const { return basis_.cols(); }
    std::size_t dim() const { return basis_.rows(); }
    const Matrix<F>& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    /// Residue of v after elimination against the basis; zero iff v lies in the span.
    std::vector<value_type> reduce(std::span<const value_type> v) const {
        check_ambient(v.size());
        const F& f = field();
        std::vector<value_type> out(v.begin(), v.end());
        for (std::size_t i = 0; i < pivots_.size(); ++i) {
            const auto c = out[pivots_[i]];
            if (f.is_zero(c)) continue;
            auto row = basis_.row(i);
            for (std::size_t j = 0; j < out.size(); ++j) out[j] = f.sub(out[j], f.mul(c, row[j]));
        }
        return out;
    }

    bool contains_vector(std::span<const value_type> v) const {
        const auto r = reduce(v);
        for (const auto& x : r) {
            if (!field().is_zero(x)) return false;
        }
        return true;
    }

    /// Re-expresses this subspace inside a larger ambient space: coordinate j goes to
    /// position `positions[j]`, every other coordinate is zero.
    Subspace embed(std::span<const std::size_t> positions, std::size_t new_ambient) const {
        if (positions.size() != ambient_dim()) throw DimensionMismatch("embedding map has wrong length");
        Matrix<F> g(field(), dim(), new_ambient);
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < ambient_dim(); ++j) g(i, positions[j]) = basis_(i, j);
        return span(g);
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.basis_ == b.basis_;
    }

    void check_ambient(std::size_t n) const {
        if (n != ambient_dim()) {
            throw DimensionMismatch("ambient dimension " + std::to_string(n) + " does not match " +
                                    std::to_string(ambient_dim()));
        }
    }

private:
    explicit Subspace(Matrix<F> full_rank_rref)
        : basis_(std::move(full_rank_rref)) {
        const F& f = basis_.field();
        for (std::size_t i = 0; i < basis_.rows(); ++i) {
            std::size_t j = 0;
            while (f.is_zero(basis_(i, j))) ++j;
            pivots_.push_back(j);
        }
    }
    Subspace(Matrix<F> basis, std::vector<std::size_t> pivots)
        : basis_(std::move(basis)), pivots_(std::move(pivots)) {}

    Matrix<F> basis_;
    std::vector<std::size_t> pivots_;
};

/// Null space of m as a subspace of the domain (ambient = m.cols()).
template <Field F>
Subspace<F> kernel(const Matrix<F>& m) {
    const F& f = m.field();
    auto r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : r.pivots) is_pivot[p] = true;
    Matrix<F> gens(f, 0, m.cols());
    std::vector<typename F::value_type> v(m.cols(), f.zero());
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::fill(v.begin(), v.end(), f.zero());
        v[free] = f.one();
        for (std::size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = f.neg(r.reduced(i, free));
        gens.append_row(v);
    }
    return Subspace<F>::span(gens);
}

/// Span of the columns of m (ambient = m.rows()).
template <Field F>
Subspace<F> column_space(const Matrix<F>& m) {
    return Subspace<F>::span(m.transpose());
}

template <Field F>
bool contains(const Subspace<F>& a, const Subspace<F>& b) {
    a.check_ambient(b.ambient_dim());
    if (b.dim() > a.dim()) return false;
    for (std::size_t i = 0; i < b.dim(); ++i) {
        if (!a.contains_vector(b.basis().row(i))) return false;
    }
    return true;
}

template <Field F>
Subspace<F> join(const Subspace<F>& a, const Subspace<F>& b) {
    a.check_ambient(b.ambient_dim());
    if (a.dim() == 0) return b;
    if (b.dim() == 0) return a;
    Matrix<F> g = a.basis();
    for (std::size_t i = 0; i < b.dim(); ++i) g.append_row(b.basis().row(i));
    return Subspace<F>::span(g);
}

/// Intersection by the Zassenhaus construction: reduce [a a; b 0] and read the
/// intersection off the rows whose left half vanished.
template <Field F>
Subspace<F> meet(const Subspace<F>& a, const Subspace<F>& b) {
    a.check_ambient(b.ambient_dim());
    const std::size_t n = a.ambient_dim();
    const F& f = a.field();
    if (a.dim() == 0 || b.dim() == 0) return Subspace<F>::zero(f, n);
    Matrix<F> z(f, a.dim() + b.dim(), 2 * n);
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < n; ++j) z(i, j) = z(i, n + j) = a.basis()(i, j);
    for (std::size_t i = 0; i < b.dim(); ++i)
        for (std::size_t j = 0; j < n; ++j) z(a.dim() + i, j) = b.basis()(i, j);
    auto r = rref(std::move(z));
    Matrix<F> gens(f, 0, n);
    for (std::size_t i = 0; i < r.rank; ++i) {
        if (r.pivots[i] < n) continue;
        auto row = r.reduced.row(i);
        gens.append_row(row.subspan(n, n));
    }
    return Subspace<F>::span(gens);
}

template <Field F>
std::size_t quotient_dim(const Subspace<F>& big, const Subspace<F>& small) {
    if (!contains(big, small)) throw NotASubobject("quotient of a subspace by a non-subspace");
    return big.dim() - small.dim();
}

/// Vectors of `big` completing a basis of `small` to one of `big`: coset
/// representatives of big/small. No canonical choice is promised.
template <Field F>
Matrix<F> complement_basis(const Subspace<F>& big, const Subspace<F>& small) {
    if (!contains(big, small)) throw NotASubobject("complement of a non-subspace");
    Matrix<F> out(big.field(), 0, big.ambient_dim());
    Subspace<F> acc = small;
    for (std::size_t i = 0; i < big.dim() && acc.dim() < big.dim(); ++i) {
        auto row = big.basis().row(i);
        if (acc.contains_vector(row)) continue;
        out.append_row(row);
        Matrix<F> g = acc.basis();
        g.append_row(row);
        acc = Subspace<F>::span(g);
    }
    return out;
}

}  // namespace cadph
