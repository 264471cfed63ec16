#include "cadph/complex.hpp"

#include <set>
#include <unordered_map>

namespace cadph {

std::string Violation::kind_name() const {
    switch (kind) {
        case Kind::duplicate_id: return "duplicate-id";
        case Kind::unknown_face: return "unknown-face";
        case Kind::bad_face_dim: return "face-dimension";
        case Kind::bad_simplex: return "bad-simplex";
        case Kind::bad_birth: return "bad-birth";
        case Kind::face_born_late: return "face-born-after-coface";
        case Kind::boundary_squared: return "boundary-squared-nonzero";
        case Kind::bad_coefficient: return "bad-coefficient";
    }
    return "unknown";
}

std::string Violation::message() const {
    return kind_name() + ": cell '" + cell + "'" + (detail.empty() ? "" : ": " + detail);
}

namespace detail {

Resolution resolve(const ComplexSpec& spec) {
    Resolution res;
    const auto& cells = spec.cells;
    res.cells.resize(cells.size());
    res.boundaries.resize(cells.size());

    std::unordered_map<std::string, std::size_t> by_id;
    std::map<std::vector<std::string>, std::size_t> by_vertices;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& c = cells[i];
        if (!by_id.emplace(c.id, i).second) {
            res.violations.push_back({Violation::Kind::duplicate_id, c.id, "id appears more than once"});
        }
        if (c.dim >= res.counts.size()) res.counts.resize(c.dim + 1, 0);
        res.cells[i] = {c.dim, res.counts[c.dim]++};
        if (c.births.empty()) {
            res.violations.push_back({Violation::Kind::bad_birth, c.id, "cell has no birth grade"});
        }
        for (auto b : c.births) {
            if (b >= spec.poset.size()) {
                res.violations.push_back({Violation::Kind::bad_birth, c.id, "birth names no poset element"});
            }
        }
        if (c.simplex) {
            auto verts = c.vertices;
            if (verts.empty() && c.dim == 0) verts.push_back(c.id);
            std::sort(verts.begin(), verts.end());
            bool distinct = std::adjacent_find(verts.begin(), verts.end()) == verts.end();
            if (verts.size() != c.dim + 1 || !distinct) {
                res.violations.push_back({Violation::Kind::bad_simplex, c.id,
                                          "expected " + std::to_string(c.dim + 1) + " distinct vertices"});
                continue;
            }
            if (c.dim == 0 && verts.front() != c.id) {
                res.violations.push_back({Violation::Kind::bad_simplex, c.id, "a vertex must list itself"});
                continue;
            }
            by_vertices.emplace(std::move(verts), i);
        }
    }

    auto born_after = [&](std::size_t coface, std::size_t face) {
        for (auto b : cells[coface].births) {
            if (b >= spec.poset.size()) return false;
            bool covered = false;
            for (auto fb : cells[face].births) {
                if (fb < spec.poset.size() && spec.poset.leq(fb, b)) covered = true;
            }
            if (!covered) return true;
        }
        return false;
    };

    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& c = cells[i];
        if (c.dim == 0) {
            if (!c.simplex && !c.faces.empty()) {
                res.violations.push_back({Violation::Kind::bad_face_dim, c.id, "0-cells have no faces"});
            }
            continue;
        }
        if (c.simplex) {
            auto verts = c.vertices;
            std::sort(verts.begin(), verts.end());
            if (verts.size() != c.dim + 1 || std::adjacent_find(verts.begin(), verts.end()) != verts.end()) continue;
            for (std::size_t drop = 0; drop < verts.size(); ++drop) {
                std::vector<std::string> face;
                for (std::size_t j = 0; j < verts.size(); ++j)
                    if (j != drop) face.push_back(verts[j]);
                auto it = by_vertices.find(face);
                if (it == by_vertices.end()) {
                    std::string listed;
                    for (const auto& v : face) listed += (listed.empty() ? "" : ",") + v;
                    res.violations.push_back({Violation::Kind::unknown_face, c.id, "missing face [" + listed + "]"});
                    continue;
                }
                res.boundaries[i].emplace_back(it->second, mpq_class(drop % 2 == 0 ? 1 : -1));
            }
        } else {
            for (const auto& [face_id, coeff] : c.faces) {
                auto it = by_id.find(face_id);
                if (it == by_id.end()) {
                    res.violations.push_back({Violation::Kind::unknown_face, c.id, "unknown face id '" + face_id + "'"});
                    continue;
                }
                if (cells[it->second].dim + 1 != c.dim) {
                    res.violations.push_back({Violation::Kind::bad_face_dim, c.id,
                                              "face '" + face_id + "' has dimension " +
                                                  std::to_string(cells[it->second].dim)});
                    continue;
                }
                res.boundaries[i].emplace_back(it->second, coeff);
            }
        }
        for (const auto& [face, coeff] : res.boundaries[i]) {
            if (born_after(i, face)) {
                res.violations.push_back({Violation::Kind::face_born_late, c.id,
                                          "face '" + cells[face].id + "' is not present wherever the cell is"});
            }
        }
    }
    return res;
}

}  // namespace detail

namespace {

template <Field F>
std::vector<Violation> boundary_squared_witnesses(const ComplexSpec& spec, const detail::Resolution& res, const F& f) {
    std::vector<Violation> out;
    const auto& counts = res.counts;
    std::vector<Matrix<F>> d;
    for (std::size_t n = 0; n < counts.size(); ++n) d.emplace_back(f, n == 0 ? 0 : counts[n - 1], counts[n]);
    for (std::size_t i = 0; i < spec.cells.size(); ++i) {
        const auto& rc = res.cells[i];
        for (const auto& [face, coeff] : res.boundaries[i]) {
            auto& e = d[rc.dim](res.cells[face].position, rc.position);
            e = f.add(e, f.from_rational(coeff));
        }
    }
    std::vector<std::vector<std::size_t>> cell_at(counts.size());
    for (std::size_t n = 0; n < counts.size(); ++n) cell_at[n].resize(counts[n]);
    for (std::size_t i = 0; i < spec.cells.size(); ++i) cell_at[res.cells[i].dim][res.cells[i].position] = i;
    for (std::size_t n = 2; n < counts.size(); ++n) {
        const auto dd = d[n - 1] * d[n];
        for (std::size_t col = 0; col < dd.cols(); ++col) {
            for (std::size_t row = 0; row < dd.rows(); ++row) {
                if (f.is_zero(dd(row, col))) continue;
                out.push_back({Violation::Kind::boundary_squared, spec.cells[cell_at[n][col]].id,
                               "boundary of boundary has coefficient " + f.to_string(dd(row, col)) + " on '" +
                                   spec.cells[cell_at[n - 2][row]].id + "'"});
                break;
            }
        }
    }
    return out;
}

}  // namespace

std::vector<Violation> validate(const ComplexSpec& spec) {
    auto res = detail::resolve(spec);
    if (!res.violations.empty()) return res.violations;
    try {
        return visit_field(spec.field, [&](const auto& f) { return boundary_squared_witnesses(spec, res, f); });
    } catch (const ParseError& e) {
        return {{Violation::Kind::bad_coefficient, "", e.what()}};
    }
}

}  // namespace cadph
