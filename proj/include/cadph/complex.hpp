#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cadph/errors.hpp"
#include "cadph/field.hpp"
#include "cadph/matrix.hpp"
#include "cadph/poset.hpp"
#include "cadph/subspace.hpp"

namespace cadph {

/// One generator of the colimit chain complex as it comes in from a document.
///
/// Simplex kind: `vertices` lists 0-cell ids (a 0-cell lists itself or nothing) and
/// the boundary is the alternating sum over the label-sorted vertex list. Generic
/// kind: `faces` lists (face id, coefficient) explicitly.
struct CellSpec {
    std::string id;
    std::size_t dim = 0;
    bool simplex = true;
    std::vector<std::string> vertices;
    std::vector<std::pair<std::string, mpq_class>> faces;
    /// Poset element indices; the cell is present on the up-set they generate.
    std::vector<std::size_t> births;
};

struct ComplexSpec {
    FieldSpec field;
    FinitePoset poset;
    std::vector<CellSpec> cells;
};

struct Violation {
    enum class Kind { duplicate_id, unknown_face, bad_face_dim, bad_simplex, bad_birth, face_born_late, boundary_squared,
                      bad_coefficient };

    Kind kind;
    std::string cell;
    std::string detail;

    std::string kind_name() const;
    std::string message() const;
};

/// Structural problems plus any nonzero composite of consecutive boundaries.
std::vector<Violation> validate(const ComplexSpec& spec);

namespace detail {

struct ResolvedCell {
    std::size_t dim;
    std::size_t position;  // index within its dimension
};

struct Resolution {
    std::vector<Violation> violations;
    std::vector<ResolvedCell> cells;
    /// Per cell: (face cell index, exact coefficient).
    std::vector<std::vector<std::pair<std::size_t, mpq_class>>> boundaries;
    std::vector<std::size_t> counts;  // cells per dimension
};

/// Resolves ids, simplex faces and orientation signs; reports structural violations.
Resolution resolve(const ComplexSpec& spec);

}  // namespace detail

/// A filtration by cell births: F(x) is spanned by the cells whose births lie below x.
///
/// Each C_n of the colimit has one coordinate per n-cell, in document order.
template <Field F>
class FilteredComplex {
public:
    struct Cell {
        std::string id;
        std::vector<std::size_t> births;
        UpSet presence;
    };

    /// Throws ValidationError listing every violation.
    static FilteredComplex build(const ComplexSpec& spec, F field);

    const F& field() const { return field_; }
    const FinitePoset& poset() const { return poset_; }

    /// Highest dimension with cells, or -1 for the empty complex.
    long top_dim() const { return static_cast<long>(cells_.size()) - 1; }
    std::size_t cell_count(std::size_t n) const { return n < cells_.size() ? cells_[n].size() : 0; }
    const std::vector<Cell>& cells(std::size_t n) const {
        static const std::vector<Cell> none;
        return n < cells_.size() ? cells_[n] : none;
    }

    /// Matrix of the colimit boundary C_n -> C_{n-1}; zero rows for n = 0.
    Matrix<F> boundary_matrix(std::size_t n) const {
        if (n < boundaries_.size()) return boundaries_[n];
        return Matrix<F>(field_, n == 0 ? 0 : cell_count(n - 1), 0);
    }

    std::vector<std::size_t> cells_present(std::size_t n, std::size_t x) const {
        poset_.check_element(x);
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < cell_count(n); ++i)
            if (cells_[n][i].presence.contains(x)) out.push_back(i);
        return out;
    }

    /// Kernel of the colimit boundary: the top subobject every cycle space lives in.
    Subspace<F> cycle_space(std::size_t n) const { return kernel(boundary_matrix(n)); }

    Subspace<F> cycles_at(std::size_t n, std::size_t x) const {
        const auto present = cells_present(n, x);
        const auto sub = boundary_matrix(n).select_columns(present);
        return kernel(sub).embed(present, cell_count(n));
    }

    Subspace<F> boundaries_at(std::size_t n, std::size_t x) const {
        const auto present = cells_present(n + 1, x);
        const auto sub = boundary_matrix(n + 1).select_columns(present);
        if (sub.rows() != cell_count(n)) return Subspace<F>::zero(field_, cell_count(n));
        return column_space(sub);
    }

private:
    F field_{};
    FinitePoset poset_;
    std::vector<std::vector<Cell>> cells_;
    std::vector<Matrix<F>> boundaries_;
};

template <Field F>
FilteredComplex<F> FilteredComplex<F>::build(const ComplexSpec& spec, F field) {
    auto violations = validate(spec);
    if (!violations.empty()) {
        std::string msg = "invalid filtered complex:";
        for (const auto& v : violations) msg += "\n  " + v.message();
        throw ValidationError(msg);
    }
    auto res = detail::resolve(spec);
    FilteredComplex k;
    k.field_ = std::move(field);
    k.poset_ = spec.poset;
    k.cells_.resize(res.counts.size());
    for (std::size_t n = 0; n < res.counts.size(); ++n) k.cells_[n].resize(res.counts[n]);
    for (std::size_t i = 0; i < spec.cells.size(); ++i) {
        const auto& rc = res.cells[i];
        k.cells_[rc.dim][rc.position] = {spec.cells[i].id, spec.cells[i].births,
                                         generated_up_set(spec.poset, spec.cells[i].births)};
    }
    for (std::size_t n = 0; n < res.counts.size(); ++n) {
        k.boundaries_.emplace_back(k.field_, n == 0 ? 0 : res.counts[n - 1], res.counts[n]);
    }
    for (std::size_t i = 0; i < spec.cells.size(); ++i) {
        const auto& rc = res.cells[i];
        if (rc.dim == 0) continue;
        auto& m = k.boundaries_[rc.dim];
        for (const auto& [face, coeff] : res.boundaries[i]) {
            auto& entry = m(res.cells[face].position, rc.position);
            entry = k.field_.add(entry, k.field_.from_rational(coeff));
        }
    }
    return k;
}

}  // namespace cadph
