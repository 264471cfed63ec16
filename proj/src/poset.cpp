#include "cadph/poset.hpp"

#include <algorithm>
#include <set>

#include "cadph/errors.hpp"

namespace cadph {

namespace {

bool grade_leq(const Grade& a, const Grade& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
    }
    return true;
}

std::string render_grade(const Grade& g) {
    if (g.size() == 1) return std::to_string(g[0]);
    std::string s = "(";
    for (std::size_t i = 0; i < g.size(); ++i) s += (i ? "," : "") + std::to_string(g[i]);
    return s + ")";
}

}  // namespace

FinitePoset::FinitePoset(std::vector<Element> elements, std::vector<bool> leq)
    : elements_(std::move(elements)), leq_(std::move(leq)) {
    validate();
}

FinitePoset FinitePoset::from_grades(std::vector<Grade> grades) {
    std::vector<Element> elements;
    elements.reserve(grades.size());
    const std::size_t width = grades.empty() ? 0 : grades.front().size();
    for (auto& g : grades) {
        if (g.size() != width) {
            throw ParseError("grade vectors have inconsistent dimensions");
        }
        if (g.empty()) throw ParseError("empty grade vector");
        elements.push_back({render_grade(g), std::move(g)});
    }
    const std::size_t n = elements.size();
    std::vector<bool> leq(n * n, false);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) leq[i * n + j] = grade_leq(*elements[i].grade, *elements[j].grade);
    return FinitePoset(std::move(elements), std::move(leq));
}

FinitePoset FinitePoset::grid(const std::vector<long>& shape) {
    if (shape.empty()) throw ParseError("grid shape must have at least one axis");
    for (long s : shape) {
        if (s <= 0) throw ParseError("grid shape entries must be positive");
    }
    std::vector<Grade> grades;
    Grade g(shape.size(), 0);
    while (true) {
        grades.push_back(g);
        std::size_t axis = shape.size();
        while (axis > 0) {
            --axis;
            if (++g[axis] < shape[axis]) break;
            g[axis] = 0;
            if (axis == 0) return from_grades(std::move(grades));
        }
    }
}

FinitePoset FinitePoset::from_relation(std::vector<std::string> labels, std::vector<std::vector<bool>> leq) {
    const std::size_t n = labels.size();
    if (leq.size() != n) throw ParseError("relation size does not match element count");
    std::vector<Element> elements;
    std::vector<bool> flat(n * n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (leq[i].size() != n) throw ParseError("relation size does not match element count");
        for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = leq[i][j];
        elements.push_back({std::move(labels[i]), std::nullopt});
    }
    return FinitePoset(std::move(elements), std::move(flat));
}

FinitePoset FinitePoset::from_covers(std::vector<std::string> labels,
                                     const std::vector<std::pair<std::size_t, std::size_t>>& covers) {
    const std::size_t n = labels.size();
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) leq[i][i] = true;
    for (auto [lo, hi] : covers) {
        if (lo >= n || hi >= n) throw ParseError("covering relation names an unknown element");
        leq[lo][hi] = true;
    }
    // Warshall closure.
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (leq[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (leq[k][j]) leq[i][j] = true;
    return from_relation(std::move(labels), std::move(leq));
}

void FinitePoset::validate() const {
    const std::size_t n = size();
    std::set<std::string> seen;
    for (const auto& e : elements_) {
        if (!seen.insert(e.label).second) throw ParseError("duplicate poset element '" + e.label + "'");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!leq(i, i)) throw ParseError("order is not reflexive at '" + label(i) + "'");
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && leq(i, j) && leq(j, i)) {
                throw ParseError("order is not antisymmetric: '" + label(i) + "' and '" + label(j) + "'");
            }
            if (!leq(i, j)) continue;
            for (std::size_t k = 0; k < n; ++k) {
                if (leq(j, k) && !leq(i, k)) {
                    throw ParseError("order is not transitive through '" + label(j) + "'");
                }
            }
        }
    }
}

std::size_t FinitePoset::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < size(); ++i) {
        if (elements_[i].label == label) return i;
    }
    throw UnknownElement("unknown poset element '" + label + "'");
}

std::size_t FinitePoset::index_of(const Grade& grade) const {
    for (std::size_t i = 0; i < size(); ++i) {
        if (elements_[i].grade && *elements_[i].grade == grade) return i;
    }
    throw UnknownElement("no poset element with grade " + render_grade(grade));
}

void FinitePoset::check_element(std::size_t i) const {
    if (i >= size()) throw UnknownElement("poset element index " + std::to_string(i) + " out of range");
}

bool FinitePoset::is_chain() const {
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j)
            if (!comparable(i, j)) return false;
    return true;
}

std::vector<std::size_t> FinitePoset::chain_order() const {
    std::vector<std::size_t> order(size());
    for (std::size_t i = 0; i < size(); ++i) order[i] = i;
    // In a chain the number of elements below x is its position.
    std::vector<std::size_t> below(size(), 0);
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j) below[i] += less(j, i) ? 1 : 0;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return below[a] < below[b]; });
    return order;
}

std::string FinitePoset::render(std::size_t i) const {
    const auto& e = element(i);
    return e.grade ? render_grade(*e.grade) : e.label;
}

std::size_t UpSet::count() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

std::vector<std::size_t> UpSet::members() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i]) out.push_back(i);
    return out;
}

bool UpSet::is_subset_of(const UpSet& other) const {
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i] && !other.bits_[i]) return false;
    return true;
}

UpSet UpSet::united(const UpSet& other) const {
    std::vector<bool> b(bits_.size());
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = bits_[i] || other.bits_[i];
    return UpSet(std::move(b));
}

UpSet UpSet::intersected(const UpSet& other) const {
    std::vector<bool> b(bits_.size());
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = bits_[i] && other.bits_[i];
    return UpSet(std::move(b));
}

UpSet UpSet::with(std::size_t i) const {
    auto b = bits_;
    b[i] = true;
    return UpSet(std::move(b));
}

PairOpen make_pair_open(const FinitePoset& p, UpSet birth, UpSet death) {
    if (birth.universe() != p.size() || death.universe() != p.size()) {
        throw InvalidPair("open does not belong to this poset");
    }
    if (!is_up_closed(p, birth.bits()) || !is_up_closed(p, death.bits())) {
        throw InvalidPair("pair coordinates must be up-sets");
    }
    if (!death.is_subset_of(birth)) {
        throw InvalidPair("death open " + describe_open(p, death) + " is not contained in birth open " +
                          describe_open(p, birth));
    }
    return {std::move(birth), std::move(death)};
}

BlanketMode parse_blanket_mode(const std::string& text) {
    if (text == "full" || text == "full-lattice") return BlanketMode::full_lattice;
    if (text == "principal" || text == "principal-only") return BlanketMode::principal_only;
    throw ParseError("unknown blanket mode '" + text + "' (expected full or principal)");
}

std::string to_string(BlanketMode mode) {
    return mode == BlanketMode::full_lattice ? "full" : "principal";
}

UpSet principal_up_set(const FinitePoset& p, std::size_t x) {
    p.check_element(x);
    std::vector<bool> b(p.size(), false);
    for (std::size_t y = 0; y < p.size(); ++y) b[y] = p.leq(x, y);
    return UpSet(std::move(b));
}

UpSet generated_up_set(const FinitePoset& p, const std::vector<std::size_t>& generators) {
    UpSet u = UpSet::empty(p);
    for (auto x : generators) u = u.united(principal_up_set(p, x));
    return u;
}

bool is_up_closed(const FinitePoset& p, const std::vector<bool>& subset) {
    if (subset.size() != p.size()) return false;
    for (std::size_t x = 0; x < p.size(); ++x) {
        if (!subset[x]) continue;
        for (std::size_t y = 0; y < p.size(); ++y)
            if (p.leq(x, y) && !subset[y]) return false;
    }
    return true;
}

UpSet make_up_set(const FinitePoset& p, const std::vector<std::size_t>& members) {
    std::vector<bool> b(p.size(), false);
    for (auto m : members) {
        p.check_element(m);
        b[m] = true;
    }
    if (!is_up_closed(p, b)) throw InvalidPair("subset is not up-closed");
    return UpSet(std::move(b));
}

std::vector<std::size_t> min_elements(const FinitePoset& p, const UpSet& u) {
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < p.size(); ++x) {
        if (!u.contains(x)) continue;
        bool minimal = true;
        for (std::size_t y = 0; y < p.size() && minimal; ++y) minimal = !(u.contains(y) && p.less(y, x));
        if (minimal) out.push_back(x);
    }
    return out;
}

std::vector<UpSet> blankets_of_open(const FinitePoset& p, const UpSet& u, BlanketMode mode) {
    std::vector<UpSet> out;
    if (mode == BlanketMode::full_lattice) {
        for (std::size_t m = 0; m < p.size(); ++m) {
            if (u.contains(m)) continue;
            bool strict_up_inside = true;
            for (std::size_t y = 0; y < p.size() && strict_up_inside; ++y) {
                strict_up_inside = !(p.less(m, y) && !u.contains(y));
            }
            if (strict_up_inside) out.push_back(u.with(m));
        }
    } else {
        std::vector<UpSet> candidates;
        for (std::size_t x = 0; x < p.size(); ++x) {
            UpSet px = principal_up_set(p, x);
            if (u.is_subset_of(px) && px != u) candidates.push_back(std::move(px));
        }
        for (const auto& c : candidates) {
            bool minimal = true;
            for (const auto& d : candidates) {
                if (d != c && d.is_subset_of(c)) {
                    minimal = false;
                    break;
                }
            }
            if (minimal) out.push_back(c);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<PairOpen> pair_blankets(const FinitePoset& p, const PairOpen& x, BlanketMode mode) {
    std::vector<PairOpen> out;
    for (auto& w : blankets_of_open(p, x.birth, mode)) out.push_back({std::move(w), x.death});
    for (auto& z : blankets_of_open(p, x.death, mode)) {
        if (z.is_subset_of(x.birth)) out.push_back({x.birth, std::move(z)});
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<PairOpen> degree_blankets(const FinitePoset& p, const PairOpen& x, std::size_t n, BlanketMode mode) {
    std::set<PairOpen> level{x};
    for (std::size_t step = 0; step < n && !level.empty(); ++step) {
        std::set<PairOpen> next;
        for (const auto& w : level)
            for (auto& c : pair_blankets(p, w, mode)) next.insert(std::move(c));
        level = std::move(next);
    }
    return {level.begin(), level.end()};
}

std::vector<PairOpen> enumerate_diagram_pairs(const FinitePoset& p) {
    std::vector<PairOpen> out;
    for (std::size_t x = 0; x < p.size(); ++x) {
        UpSet ux = principal_up_set(p, x);
        for (std::size_t y = 0; y < p.size(); ++y) {
            if (p.less(x, y)) out.push_back({ux, principal_up_set(p, y)});
        }
        out.push_back({ux, UpSet::empty(p)});
    }
    return out;
}

std::vector<UpSet> enumerate_up_sets(const FinitePoset& p) {
    // Every up-set is generated by its antichain of minimal elements; grow from the
    // empty set by adding one cover at a time.
    std::set<UpSet> seen{UpSet::empty(p)};
    std::vector<UpSet> frontier{UpSet::empty(p)};
    while (!frontier.empty()) {
        std::vector<UpSet> next;
        for (const auto& u : frontier) {
            for (auto& w : blankets_of_open(p, u, BlanketMode::full_lattice)) {
                if (seen.insert(w).second) next.push_back(std::move(w));
            }
        }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

std::string describe_open(const FinitePoset& p, const UpSet& u) {
    std::string s = "{";
    bool first = true;
    for (auto m : min_elements(p, u)) {
        s += (first ? "" : ",") + p.render(m);
        first = false;
    }
    return s + "}";
}

std::string describe_pair(const FinitePoset& p, const PairOpen& x) {
    return "(" + describe_open(p, x.birth) + ", " + describe_open(p, x.death) + ")";
}

}  // namespace cadph
