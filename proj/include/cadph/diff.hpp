#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include "cadph/errors.hpp"
#include "cadph/memory.hpp"
#include "cadph/poset.hpp"
#include "cadph/subspace.hpp"

namespace cadph {

// ---------------------------------------------------------------------------
// Arr(Z): integers as objects, commuting squares as morphisms.
// ---------------------------------------------------------------------------

struct GroupObj {
    long long value = 0;

    friend GroupObj operator+(GroupObj a, GroupObj b) { return {a.value + b.value}; }
    friend GroupObj operator-(GroupObj a, GroupObj b) { return {a.value - b.value}; }
    friend GroupObj operator-(GroupObj a) { return {-a.value}; }
    friend bool operator==(const GroupObj&, const GroupObj&) = default;
};

/// A morphism (top, bottom): src -> dst, i.e. the square with vertical sides src
/// and dst. It commutes when src + bottom == top + dst.
struct GroupSquare {
    GroupObj src;
    GroupObj dst;
    long long top = 0;
    long long bottom = 0;

    bool commutes() const { return src.value + bottom == top + dst.value; }

    /// Throws Error when the square does not commute.
    static GroupSquare make(GroupObj src, GroupObj dst, long long top, long long bottom);
    static GroupSquare identity(GroupObj a) { return {a, a, 0, 0}; }

    friend bool operator==(const GroupSquare&, const GroupSquare&) = default;
};

std::ostream& operator<<(std::ostream& os, const GroupObj& a);
std::ostream& operator<<(std::ostream& os, const GroupSquare& s);
std::string to_string(const GroupSquare& s);

GroupSquare arr_add(const GroupSquare& s, const GroupSquare& t);
GroupSquare arr_sub(const GroupSquare& s, const GroupSquare& t);
GroupSquare arr_inv(const GroupSquare& s);
GroupSquare arr_zero();

/// Composite of s: a -> b followed by t: b -> c (tops and bottoms add).
GroupSquare arr_compose(const GroupSquare& s, const GroupSquare& t);

/// Rank square of an inclusion a <= b: (dim a, dim b, 0, dim b - dim a).
template <Field F>
GroupSquare rank_square(const Subspace<F>& a, const Subspace<F>& b) {
    if (!contains(b, a)) throw NotASubobject("rank square of a non-inclusion");
    const auto da = static_cast<long long>(a.dim());
    const auto db = static_cast<long long>(b.dim());
    return {{da}, {db}, 0, db - da};
}

// ---------------------------------------------------------------------------
// Change actions presented by enumerable carriers.
// ---------------------------------------------------------------------------

/// A monoid (Delta, plus, zero) acting on Obj by act.
template <class Obj, class Delta>
struct ChangeAction {
    std::function<Obj(const Obj&, const Delta&)> act;
    std::function<Delta(const Delta&, const Delta&)> plus;
    Delta zero{};
};

/// x -> to in a poset-presented category.
template <class T>
struct Arrow {
    T from;
    T to;
};

/// A functor into Arr(Z) on a poset-presented category.
template <class Obj>
struct IntegerFunctor {
    std::function<GroupObj(const Obj&)> on_object;
    /// Image of the unique morphism x -> y (x <= y).
    std::function<GroupSquare(const Obj&, const Obj&)> on_morphism;
};

template <class Obj, class Delta>
struct IntegerDerivative {
    std::function<GroupObj(const Obj&, const Delta&)> on_object;
    std::function<GroupSquare(const Arrow<Obj>&, const Arrow<Delta>&)> on_morphism;
};

/// F(x) - F(x + d).
template <class Obj, class Delta>
GroupObj derivative_obj(const IntegerFunctor<Obj>& f, const ChangeAction<Obj, Delta>& ca, const Obj& x,
                        const Delta& d) {
    return f.on_object(x) - f.on_object(ca.act(x, d));
}

/// F(m) - F(m + dm), with m + dm the arrow (m.from + dm.from) -> (m.to + dm.to).
template <class Obj, class Delta>
GroupSquare derivative_mor(const IntegerFunctor<Obj>& f, const ChangeAction<Obj, Delta>& ca, const Arrow<Obj>& m,
                           const Arrow<Delta>& dm) {
    return arr_sub(f.on_morphism(m.from, m.to), f.on_morphism(ca.act(m.from, dm.from), ca.act(m.to, dm.to)));
}

template <class Obj, class Delta>
GroupObj neg_derivative_obj(const IntegerFunctor<Obj>& f, const ChangeAction<Obj, Delta>& ca, const Obj& x,
                            const Delta& d) {
    return -derivative_obj(f, ca, x, d);
}

template <class Obj, class Delta>
GroupSquare neg_derivative_mor(const IntegerFunctor<Obj>& f, const ChangeAction<Obj, Delta>& ca,
                               const Arrow<Obj>& m, const Arrow<Delta>& dm) {
    return arr_inv(derivative_mor(f, ca, m, dm));
}

/// The finite-difference derivative of f, packaged for the axiom checkers.
template <class Obj, class Delta>
IntegerDerivative<Obj, Delta> finite_difference(IntegerFunctor<Obj> f, ChangeAction<Obj, Delta> ca) {
    return {[f, ca](const Obj& x, const Delta& d) { return derivative_obj(f, ca, x, d); },
            [f, ca](const Arrow<Obj>& m, const Arrow<Delta>& dm) { return derivative_mor(f, ca, m, dm); }};
}

/// Outcome of an axiom check: how many identities were evaluated and which failed.
struct CadReport {
    std::string name;
    std::size_t checked = 0;
    std::vector<std::string> counterexamples;

    CadReport() = default;
    explicit CadReport(std::string n) : name(std::move(n)) {}

    bool ok() const { return counterexamples.empty(); }
    void merge(const CadReport& other);
};

/// Inputs for one round of axiom checks: an object x with an arrow x -> x_to, and
/// two delta arrows y -> y_to and z -> z_to.
template <class Obj, class Delta>
struct CadSample {
    Obj x;
    Obj x_to;
    Delta y;
    Delta y_to;
    Delta z;
    Delta z_to;
};

// Set-level checks for f: A -> B with an arbitrary codomain action.

template <class A, class DA, class B, class DB>
CadReport check_cad1_fn(const std::type_identity_t<std::function<B(const A&)>>& f,
                        const std::type_identity_t<std::function<DB(const A&, const DA&)>>& df,
                        const ChangeAction<A, DA>& ca, const ChangeAction<B, DB>& cb,
                        const std::vector<std::pair<A, DA>>& samples,
                        const std::type_identity_t<std::function<std::string(const A&, const DA&)>>& describe = {}) {
    CadReport r{"CAD1"};
    for (const auto& [x, y] : samples) {
        ++r.checked;
        if (!(f(ca.act(x, y)) == cb.act(f(x), df(x, y)))) {
            r.counterexamples.push_back(describe ? describe(x, y) : "sample " + std::to_string(r.checked));
        }
    }
    return r;
}

template <class A, class DA, class B, class DB>
CadReport check_cad2_fn(const std::type_identity_t<std::function<DB(const A&, const DA&)>>& df, const ChangeAction<A, DA>& ca,
                        const ChangeAction<B, DB>& cb, const std::vector<std::tuple<A, DA, DA>>& samples,
                        const std::type_identity_t<std::function<std::string(const A&, const DA&, const DA&)>>& describe = {}) {
    CadReport r{"CAD2"};
    for (const auto& [x, y, z] : samples) {
        r.checked += 2;
        if (!(df(x, ca.plus(y, z)) == cb.plus(df(x, y), df(ca.act(x, y), z)))) {
            r.counterexamples.push_back((describe ? describe(x, y, z) : "sample") + std::string(" (additivity)"));
        }
        if (!(df(x, ca.zero) == cb.zero)) {
            r.counterexamples.push_back((describe ? describe(x, y, z) : "sample") + std::string(" (unit)"));
        }
    }
    return r;
}

/// Arr(Z) acting on itself by subtraction, on objects.
inline ChangeAction<GroupObj, GroupObj> subtraction_action() {
    return {[](const GroupObj& a, const GroupObj& b) { return a - b; },
            [](const GroupObj& a, const GroupObj& b) { return a + b; }, GroupObj{0}};
}

/// Arr(Z) acting on itself by addition, on objects.
inline ChangeAction<GroupObj, GroupObj> addition_action() {
    return {[](const GroupObj& a, const GroupObj& b) { return a + b; },
            [](const GroupObj& a, const GroupObj& b) { return a + b; }, GroupObj{0}};
}

/// CAD1 for a functor into Arr(Z) under the subtraction action, on objects and on
/// arrows: F(x + y) = F(x) - dF(x, y).
template <class Obj, class Delta>
CadReport check_cad1(const IntegerFunctor<Obj>& f, const IntegerDerivative<Obj, Delta>& df,
                     const ChangeAction<Obj, Delta>& ca, const std::vector<CadSample<Obj, Delta>>& samples,
                     const std::type_identity_t<std::function<std::string(const CadSample<Obj, Delta>&)>>& describe = {}) {
    CadReport r{"CAD1"};
    auto label = [&](const CadSample<Obj, Delta>& s, const char* what) {
        return (describe ? describe(s) : "sample") + " (" + what + ")";
    };
    for (const auto& s : samples) {
        r.checked += 2;
        if (!(f.on_object(ca.act(s.x, s.y)) == f.on_object(s.x) - df.on_object(s.x, s.y))) {
            r.counterexamples.push_back(label(s, "object"));
        }
        const Arrow<Obj> m{s.x, s.x_to};
        const Arrow<Delta> dm{s.y, s.y_to};
        const auto lhs = f.on_morphism(ca.act(s.x, s.y), ca.act(s.x_to, s.y_to));
        const auto rhs = arr_sub(f.on_morphism(s.x, s.x_to), df.on_morphism(m, dm));
        if (!(lhs == rhs)) r.counterexamples.push_back(label(s, "morphism"));
    }
    return r;
}

/// CAD2 under the subtraction action: dF(x, y + z) = dF(x, y) + dF(x + y, z) and
/// dF(x, 0) = 0, on objects and on arrows.
template <class Obj, class Delta>
CadReport check_cad2(const IntegerDerivative<Obj, Delta>& df, const ChangeAction<Obj, Delta>& ca,
                     const std::vector<CadSample<Obj, Delta>>& samples,
                     const std::type_identity_t<std::function<std::string(const CadSample<Obj, Delta>&)>>& describe = {}) {
    CadReport r{"CAD2"};
    auto label = [&](const CadSample<Obj, Delta>& s, const char* what) {
        return (describe ? describe(s) : "sample") + " (" + what + ")";
    };
    for (const auto& s : samples) {
        r.checked += 4;
        if (!(df.on_object(s.x, ca.plus(s.y, s.z)) ==
              df.on_object(s.x, s.y) + df.on_object(ca.act(s.x, s.y), s.z))) {
            r.counterexamples.push_back(label(s, "object additivity"));
        }
        if (!(df.on_object(s.x, ca.zero) == GroupObj{0})) r.counterexamples.push_back(label(s, "object unit"));

        const Arrow<Obj> m{s.x, s.x_to};
        const Arrow<Delta> dy{s.y, s.y_to};
        const Arrow<Delta> dz{s.z, s.z_to};
        const Arrow<Delta> sum{ca.plus(s.y, s.z), ca.plus(s.y_to, s.z_to)};
        const Arrow<Obj> shifted{ca.act(s.x, s.y), ca.act(s.x_to, s.y_to)};
        if (!(df.on_morphism(m, sum) == arr_add(df.on_morphism(m, dy), df.on_morphism(shifted, dz)))) {
            r.counterexamples.push_back(label(s, "morphism additivity"));
        }
        if (!(df.on_morphism(m, Arrow<Delta>{ca.zero, ca.zero}) == arr_zero())) {
            r.counterexamples.push_back(label(s, "morphism unit"));
        }
    }
    return r;
}

/// First pair a <= b (by leq) with df(a) > df(b), if any.
template <class T, class V>
std::optional<std::pair<T, T>> monotonicity_witness(
    const std::vector<T>& points, const std::type_identity_t<std::function<bool(const T&, const T&)>>& leq,
    const std::type_identity_t<std::function<V(const T&)>>& value) {
    for (const auto& a : points)
        for (const auto& b : points)
            if (leq(a, b) && value(b) < value(a)) return std::pair{a, b};
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// The blanket-shift change action and the rank of the blanket-union memory.
// ---------------------------------------------------------------------------

/// N^op acting on (pairs x N^op) by adding to the degree.
ChangeAction<GradedPair, std::size_t> blanket_shift_action();

/// The order of Arr(opens^op) x N^op: both coordinates shrink (or stay) and the
/// degree does not grow.
bool graded_leq(const GradedPair& a, const GradedPair& b);

/// Rank of the union of degree-n blanket memories, as an Arr(Z) object.
template <Field F>
GroupObj zb(const Memory<F>& mem, std::size_t d, const PairOpen& pair, std::size_t n, BlanketMode mode) {
    return {static_cast<long long>(mem.blanket_union(d, pair, n, mode).dim())};
}

/// zb on the graded-pair category; arrows go to rank squares of the inclusions.
template <Field F>
IntegerFunctor<GradedPair> zb_functor(const Memory<F>& mem, std::size_t d, BlanketMode mode) {
    return {[&mem, d, mode](const GradedPair& x) { return zb(mem, d, x.pair, x.degree, mode); },
            [&mem, d, mode](const GradedPair& x, const GradedPair& y) {
                if (!graded_leq(x, y)) throw InvalidPair("no morphism between the given graded pairs");
                return rank_square(mem.blanket_union(d, x.pair, x.degree, mode),
                                   mem.blanket_union(d, y.pair, y.degree, mode));
            }};
}

/// zb(pair, n) - zb(pair, n + m).
template <Field F>
GroupObj gamma_derivative(const Memory<F>& mem, std::size_t d, const PairOpen& pair, std::size_t n, std::size_t m,
                          BlanketMode mode) {
    return derivative_obj(zb_functor(mem, d, mode), blanket_shift_action(), GradedPair{pair, n}, m);
}

/// The derivative evaluated at degree 0 with shift 1: the pair-group rank.
template <Field F>
std::size_t pair_group_rank(const Memory<F>& mem, std::size_t d, const PairOpen& pair, BlanketMode mode) {
    const auto g = gamma_derivative(mem, d, pair, 0, 1, mode);
    if (g.value < 0) throw Error("negative pair-group rank; blanket memories escaped the pair memory");
    return static_cast<std::size_t>(g.value);
}

}  // namespace cadph
