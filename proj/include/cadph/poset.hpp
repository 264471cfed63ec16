#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cadph {

using Grade = std::vector<long>;

/// A finite partial order on elements 0..size()-1.
///
/// Elements carry a label and, for grid-style posets, an integer grade vector; when
/// grades are present the order is the coordinatewise product order.
class FinitePoset {
public:
    struct Element {
        std::string label;
        std::optional<Grade> grade;
    };

    FinitePoset() = default;

    /// Sub-poset of Z^d on the given grades, ordered coordinatewise.
    static FinitePoset from_grades(std::vector<Grade> grades);
    /// All integer points of [0, shape[0]) x ... x [0, shape[d-1]).
    static FinitePoset grid(const std::vector<long>& shape);
    static FinitePoset chain(std::size_t n) { return grid({static_cast<long>(n)}); }
    /// Labels plus an explicit relation; leq[i][j] means element i <= element j.
    static FinitePoset from_relation(std::vector<std::string> labels, std::vector<std::vector<bool>> leq);
    /// Labels plus covering (or any generating) pairs (lo, hi); transitively closed here.
    static FinitePoset from_covers(std::vector<std::string> labels,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& covers);

    std::size_t size() const { return elements_.size(); }
    bool leq(std::size_t a, std::size_t b) const { return leq_[a * size() + b]; }
    bool less(std::size_t a, std::size_t b) const { return a != b && leq(a, b); }
    bool comparable(std::size_t a, std::size_t b) const { return leq(a, b) || leq(b, a); }

    const Element& element(std::size_t i) const { return elements_.at(i); }
    const std::string& label(std::size_t i) const { return elements_.at(i).label; }
    bool has_grades() const { return !elements_.empty() && elements_.front().grade.has_value(); }
    std::size_t grade_dim() const { return has_grades() ? elements_.front().grade->size() : 0; }

    /// Throws UnknownElement.
    std::size_t index_of(const std::string& label) const;
    std::size_t index_of(const Grade& grade) const;
    void check_element(std::size_t i) const;

    bool is_chain() const;
    /// Element indices sorted along the order (only meaningful when is_chain()).
    std::vector<std::size_t> chain_order() const;

    /// "3" for one-dimensional grades, "(1,2)" for vectors, else the label.
    std::string render(std::size_t i) const;

private:
    FinitePoset(std::vector<Element> elements, std::vector<bool> leq);
    void validate() const;

    std::vector<Element> elements_;
    std::vector<bool> leq_;
};

/// A subset of poset elements; up-closure is established by the constructing helpers.
class UpSet {
public:
    UpSet() = default;
    explicit UpSet(std::vector<bool> bits) : bits_(std::move(bits)) {}

    static UpSet empty(const FinitePoset& p) { return UpSet(std::vector<bool>(p.size(), false)); }
    static UpSet whole(const FinitePoset& p) { return UpSet(std::vector<bool>(p.size(), true)); }

    bool contains(std::size_t i) const { return bits_[i]; }
    std::size_t universe() const { return bits_.size(); }
    std::size_t count() const;
    bool is_empty() const { return count() == 0; }
    std::vector<std::size_t> members() const;
    const std::vector<bool>& bits() const { return bits_; }

    bool is_subset_of(const UpSet& other) const;
    bool is_superset_of(const UpSet& other) const { return other.is_subset_of(*this); }
    UpSet united(const UpSet& other) const;
    UpSet intersected(const UpSet& other) const;
    UpSet with(std::size_t i) const;

    friend bool operator==(const UpSet&, const UpSet&) = default;
    friend auto operator<=>(const UpSet& a, const UpSet& b) { return a.bits_ <=> b.bits_; }

private:
    std::vector<bool> bits_;
};

/// An object (U, V) of the arrow category of opens: birth U contains death V.
struct PairOpen {
    UpSet birth;
    UpSet death;

    bool valid() const { return death.is_subset_of(birth); }

    friend bool operator==(const PairOpen&, const PairOpen&) = default;
    friend auto operator<=>(const PairOpen&, const PairOpen&) = default;
};

/// Throws InvalidPair when death is not contained in birth.
PairOpen make_pair_open(const FinitePoset& p, UpSet birth, UpSet death);

/// A pair together with a blanket degree n.
struct GradedPair {
    PairOpen pair;
    std::size_t degree = 0;

    friend bool operator==(const GradedPair&, const GradedPair&) = default;
    friend auto operator<=>(const GradedPair&, const GradedPair&) = default;
};

enum class BlanketMode { full_lattice, principal_only };

BlanketMode parse_blanket_mode(const std::string& text);
std::string to_string(BlanketMode mode);

UpSet principal_up_set(const FinitePoset& p, std::size_t x);
/// Smallest up-set containing all the given elements.
UpSet generated_up_set(const FinitePoset& p, const std::vector<std::size_t>& generators);
bool is_up_closed(const FinitePoset& p, const std::vector<bool>& subset);
/// Validating constructor; throws InvalidPair if the subset is not up-closed.
UpSet make_up_set(const FinitePoset& p, const std::vector<std::size_t>& members);

std::vector<std::size_t> min_elements(const FinitePoset& p, const UpSet& u);

/// Covers of u among opens: full-lattice mode adds one element whose strict
/// up-set already lies in u; principal-only mode returns the minimal principal
/// up-sets strictly containing u. Sorted, never contains u.
std::vector<UpSet> blankets_of_open(const FinitePoset& p, const UpSet& u, BlanketMode mode);

/// Degree-one blankets of a pair: move exactly one coordinate to one of its
/// blankets, keeping only results that are still pairs.
std::vector<PairOpen> pair_blankets(const FinitePoset& p, const PairOpen& x, BlanketMode mode);

/// Iterated blankets; degree zero is {x} itself. Sorted and deduplicated.
std::vector<PairOpen> degree_blankets(const FinitePoset& p, const PairOpen& x, std::size_t n, BlanketMode mode);

/// Principal pairs (up(x), up(y)) with x < y, followed for each x by (up(x), empty).
std::vector<PairOpen> enumerate_diagram_pairs(const FinitePoset& p);

/// Every up-set of p; exponential, intended for small posets.
std::vector<UpSet> enumerate_up_sets(const FinitePoset& p);

/// "{(0,1),(1,0)}" style listing of the minimal elements; "{}" for the empty open.
std::string describe_open(const FinitePoset& p, const UpSet& u);
std::string describe_pair(const FinitePoset& p, const PairOpen& x);

}  // namespace cadph
