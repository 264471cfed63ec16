#include <doctest.h>

#include "cadph/diagram.hpp"
#include "cadph/diff.hpp"
#include "cadph/verify.hpp"
#include "support.hpp"

using namespace cadph;
using namespace support;

namespace {

long long small(Rng& rng, long long r = 5) { return static_cast<long long>(uniform(rng, 0, 2 * r)) - r; }

GroupSquare random_square(Rng& rng) {
    const long long a = small(rng), f = small(rng), g = small(rng);
    return GroupSquare::make(GroupObj{a}, GroupObj{a + g - f}, f, g);
}

// (N, N, +, +, 0)
ChangeAction<long long, long long> nat_action() {
    return {[](const long long& a, const long long& b) { return a + b; },
            [](const long long& a, const long long& b) { return a + b; }, 0};
}

// The staircase map with plateau k..l.
long long staircase(long long x, long long k, long long l) {
    if (x <= k - 1) return x + 1;
    if (x <= l) return k;
    return k + x - l + 1;
}

struct Triangle {
    FilteredComplex<PrimeField> k = FilteredComplex<PrimeField>::build(triangle(), gf2);
    Memory<PrimeField> mem{k};
    UpSet up(std::size_t x) const { return principal_up_set(k.poset(), x); }
};

}  // namespace

TEST_CASE("Arr(Z) operations") {
    const auto s = GroupSquare::make(GroupObj{1}, GroupObj{2}, 0, 1);
    const auto t = GroupSquare::make(GroupObj{3}, GroupObj{3}, 1, 1);
    CHECK(arr_add(s, t) == GroupSquare{GroupObj{4}, GroupObj{5}, 1, 2});
    CHECK(arr_add(s, t).commutes());
    CHECK(arr_add(s, arr_zero()) == s);
    CHECK(arr_sub(s, s) == arr_zero());
    CHECK(arr_sub(s, arr_zero()) == s);
    CHECK(arr_inv(s) == GroupSquare{GroupObj{-1}, GroupObj{-2}, 0, -1});
    CHECK_THROWS_AS(GroupSquare::make(GroupObj{1}, GroupObj{1}, 0, 1), Error);
    CHECK(GroupSquare::identity(GroupObj{7}) == GroupSquare{GroupObj{7}, GroupObj{7}, 0, 0});
    CHECK(arr_compose(s, GroupSquare::make(GroupObj{2}, GroupObj{4}, 1, 3)) ==
          GroupSquare{GroupObj{1}, GroupObj{4}, 1, 4});
    CHECK_THROWS_AS(arr_compose(s, t), Error);
    CHECK(to_string(s) == "(src=1, dst=2, top=0, bottom=1)");
}

TEST_CASE("property: monoid and action laws on Arr(Z)") {
    Rng rng(51);
    for (int i = 0; i < 500; ++i) {
        const auto a = random_square(rng), b = random_square(rng), c = random_square(rng);
        CHECK(arr_add(arr_add(a, b), c) == arr_add(a, arr_add(b, c)));
        CHECK(arr_add(a, b) == arr_add(b, a));
        CHECK(arr_add(arr_zero(), a) == a);
        CHECK(arr_sub(arr_sub(a, c), b) == arr_sub(a, arr_add(b, c)));
        CHECK(arr_add(a, arr_inv(a)) == arr_zero());
        CHECK(arr_add(a, b).commutes());
        CHECK(arr_sub(a, b).commutes());
        CHECK(arr_inv(a).commutes());
    }
}

TEST_CASE("rank_square") {
    const auto zero = Subspace<PrimeField>::zero(gf2, 3);
    const auto full = Subspace<PrimeField>::full(gf2, 3);
    CHECK(rank_square(zero, full) == GroupSquare{GroupObj{0}, GroupObj{3}, 0, 3});
    CHECK(rank_square(full, full) == GroupSquare::identity(GroupObj{3}));
    CHECK_THROWS_AS(rank_square(full, zero), NotASubobject);
}

TEST_CASE("property: rank squares compose along inclusion chains") {
    Rng rng(52);
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = uniform(rng, 1, 6);
        const auto c = Subspace<PrimeField>::span(random_matrix(PrimeField(5), uniform(rng, 0, n), n, rng, 2));
        const auto b = meet(c, Subspace<PrimeField>::span(random_matrix(PrimeField(5), uniform(rng, 0, n), n, rng, 2)));
        const auto a = meet(b, Subspace<PrimeField>::span(random_matrix(PrimeField(5), uniform(rng, 0, n), n, rng, 2)));
        const auto ac = rank_square(a, c), ab = rank_square(a, b), bc = rank_square(b, c);
        CHECK(ac.bottom == ab.bottom + bc.bottom);
        CHECK(ac == arr_compose(ab, bc));
        CHECK(ac.commutes());
    }
}

TEST_CASE("derivatives of zb on the triangle") {
    Triangle t;
    const PairOpen x{t.up(1), t.up(2)};
    const auto f = zb_functor(t.mem, 1, BlanketMode::full_lattice);
    const auto ca = blanket_shift_action();
    CHECK(zb(t.mem, 1, x, 0, BlanketMode::full_lattice) == GroupObj{1});
    CHECK(zb(t.mem, 1, x, 1, BlanketMode::full_lattice) == GroupObj{0});
    CHECK(derivative_obj(f, ca, GradedPair{x, 0}, std::size_t{1}) == GroupObj{1});
    CHECK(neg_derivative_obj(f, ca, GradedPair{x, 0}, std::size_t{1}) == GroupObj{-1});
    CHECK(derivative_obj(f, ca, GradedPair{x, 0}, std::size_t{0}) == GroupObj{0});
    CHECK(gamma_derivative(t.mem, 1, x, 0, 1, BlanketMode::full_lattice) == GroupObj{1});
    CHECK(gamma_derivative(t.mem, 1, x, 0, 0, BlanketMode::full_lattice) == GroupObj{0});

    const Arrow<GradedPair> id{{x, 0}, {x, 0}};
    const Arrow<std::size_t> zero{0, 0};
    CHECK(derivative_mor(f, ca, id, zero) == arr_zero());
    CHECK(derivative_mor(f, ca, id, Arrow<std::size_t>{1, 1}) == GroupSquare::identity(GroupObj{1}));
    CHECK(neg_derivative_mor(f, ca, id, Arrow<std::size_t>{1, 1}) == GroupSquare::identity(GroupObj{-1}));
    CHECK_THROWS_AS(f.on_morphism({x, 0}, {x, 1}), InvalidPair);

    for (auto mode : {BlanketMode::full_lattice, BlanketMode::principal_only}) {
        CHECK(pair_group_rank(t.mem, 1, x, mode) == 1);
        CHECK(pair_group_rank(t.mem, 0, {t.up(0), t.up(1)}, mode) == 2);
        CHECK(pair_group_rank(t.mem, 0, {t.up(0), UpSet::empty(t.k.poset())}, mode) == 1);
    }
    // Additivity of the telescoping derivative.
    for (std::size_t n = 0; n <= 2; ++n)
        for (std::size_t a = 0; a <= 2; ++a)
            for (std::size_t b = 0; b <= 2; ++b)
                CHECK(gamma_derivative(t.mem, 0, {t.up(0), t.up(2)}, n, a + b, BlanketMode::full_lattice) ==
                      gamma_derivative(t.mem, 0, {t.up(0), t.up(2)}, n, a, BlanketMode::full_lattice) +
                          gamma_derivative(t.mem, 0, {t.up(0), t.up(2)}, n + a, b, BlanketMode::full_lattice));
}

TEST_CASE("derivative squares commute on sampled morphisms") {
    auto k = FilteredComplex<PrimeField>::build(load_fixture("bifiltration.json"), gf2);
    Memory<PrimeField> mem(k);
    const auto ca = blanket_shift_action();
    Rng rng(53);
    for (std::size_t d = 0; d <= 1; ++d) {
        const auto f = zb_functor(mem, d, BlanketMode::full_lattice);
        for (int i = 0; i < 40; ++i) {
            const auto x = random_pair(k.poset(), rng);
            const auto y = random_smaller_pair(k.poset(), x, rng);
            const std::size_t n = uniform(rng, 0, 2), m = uniform(rng, 0, n);
            const std::size_t dy = uniform(rng, 0, 2), dy_to = uniform(rng, 0, dy);
            const Arrow<GradedPair> arrow{{x, n}, {y, m}};
            CHECK(derivative_mor(f, ca, arrow, Arrow<std::size_t>{dy, dy_to}).commutes());
            CHECK(neg_derivative_mor(f, ca, arrow, Arrow<std::size_t>{dy, dy_to}) ==
                  arr_inv(derivative_mor(f, ca, arrow, Arrow<std::size_t>{dy, dy_to})));
        }
    }
}

TEST_CASE("translation on N has the second projection as derivative") {
    const auto ca = nat_action();
    std::vector<std::pair<long long, long long>> one;
    std::vector<std::tuple<long long, long long, long long>> two;
    for (long long a = 0; a < 12; ++a)
        for (long long b = 0; b < 12; ++b) {
            one.emplace_back(a, b);
            for (long long c = 0; c < 5; ++c) two.emplace_back(a, b, c);
        }
    for (long long k : {0, 1, 4}) {
        std::function<long long(const long long&)> tk = [k](const long long& n) { return n + k; };
        std::function<long long(const long long&, const long long&)> pi = [](const long long&, const long long& b) {
            return b;
        };
        const auto r1 = check_cad1_fn<long long, long long, long long, long long>(tk, pi, ca, ca, one);
        const auto r2 = check_cad2_fn<long long, long long, long long, long long>(pi, ca, ca, two);
        CHECK(r1.ok());
        CHECK(r1.checked == one.size());
        CHECK(r2.ok());
    }
    // A 'derivative' that ignores the change fails CAD1.
    std::function<long long(const long long&)> t1 = [](const long long& n) { return n + 1; };
    std::function<long long(const long long&, const long long&)> zero = [](const long long&, const long long&) {
        return 0LL;
    };
    CHECK_FALSE((check_cad1_fn<long long, long long, long long, long long>(t1, zero, ca, ca, one).ok()));
}

TEST_CASE("the staircase satisfies the axioms but its derivative is not monotone") {
    const long long k = 5, l = 8;
    const auto ca = nat_action();
    std::function<long long(const long long&)> g = [=](const long long& x) { return staircase(x, k, l); };
    std::function<long long(const long long&, const long long&)> dg = [=](const long long& x, const long long& y) {
        return staircase(x + y, k, l) - staircase(x, k, l);
    };
    CHECK(g(3) == 4);
    CHECK(g(4) == 5);
    CHECK(g(8) == 5);
    CHECK(g(9) == 7);  // the formula jumps by two after the plateau
    std::vector<std::pair<long long, long long>> one;
    std::vector<std::tuple<long long, long long, long long>> two;
    std::vector<std::pair<long long, long long>> points;
    for (long long x = 0; x < 14; ++x)
        for (long long y = 0; y < 6; ++y) {
            one.emplace_back(x, y);
            points.emplace_back(x, y);
            for (long long z = 0; z < 4; ++z) two.emplace_back(x, y, z);
        }
    CHECK((check_cad1_fn<long long, long long, long long, long long>(g, dg, ca, ca, one).ok()));
    CHECK((check_cad2_fn<long long, long long, long long, long long>(dg, ca, ca, two).ok()));

    CHECK(dg(k - 2, 1) == 1);
    CHECK(dg(k - 1, 1) == 0);
    using P = std::pair<long long, long long>;
    const auto w = monotonicity_witness<P, long long>(
        points, [](const P& a, const P& b) { return a.first <= b.first && a.second <= b.second; },
        [&](const P& p) { return dg(p.first, p.second); });
    REQUIRE(w.has_value());
    CHECK(dg(w->first.first, w->first.second) > dg(w->second.first, w->second.second));
    // The specific witness pair.
    const std::vector<P> pair{{k - 2, 1}, {k - 1, 1}};
    const auto w2 = monotonicity_witness<P, long long>(
        pair, [](const P& a, const P& b) { return a.first <= b.first && a.second <= b.second; },
        [&](const P& p) { return dg(p.first, p.second); });
    REQUIRE(w2.has_value());
    CHECK(w2->first == P{k - 2, 1});
    CHECK(w2->second == P{k - 1, 1});
    // Translation has a monotone derivative.
    CHECK_FALSE((monotonicity_witness<P, long long>(
                     points, [](const P& a, const P& b) { return a.first <= b.first && a.second <= b.second; },
                     [](const P& p) { return p.second; })
                     .has_value()));
}

TEST_CASE("graded order and the shift action") {
    Triangle t;
    const auto ca = blanket_shift_action();
    const GradedPair x{{t.up(0), t.up(1)}, 1};
    CHECK(ca.act(x, 2).degree == 3);
    CHECK(ca.act(ca.act(x, 1), 2) == ca.act(x, ca.plus(1, 2)));
    CHECK(ca.act(x, ca.zero) == x);
    CHECK(graded_leq(x, x));
    CHECK(graded_leq(x, GradedPair{{t.up(1), t.up(1)}, 0}));
    CHECK_FALSE(graded_leq(x, GradedPair{{t.up(1), t.up(1)}, 2}));
    CHECK_FALSE(graded_leq(GradedPair{{t.up(1), t.up(1)}, 0}, x));
}

TEST_CASE("property: CAD axioms and the Corollary on random complexes") {
    Rng rng(54);
    for (int t = 0; t < 12; ++t) {
        RandomComplexOptions opt;
        opt.shape = {static_cast<long>(uniform(rng, 2, 3)), static_cast<long>(uniform(rng, 1, 3))};
        opt.max_cells = 20;
        opt.field = t % 2 ? FieldSpec::gf(5) : FieldSpec::gf(2);
        auto k = FilteredComplex<PrimeField>::build(random_complex(opt, rng), PrimeField(opt.field.characteristic));
        Memory<PrimeField> mem(k);
        for (auto mode : {BlanketMode::full_lattice, BlanketMode::principal_only}) {
            VerifyOptions vo;
            vo.samples = 30;
            vo.seed = 100 + t;
            vo.mode = mode;
            const auto rep = verify(mem, vo);
            for (const char* name : {"cad1", "cad2", "corollary", "memory-containment", "functoriality",
                                     "presheaf-monotonicity"}) {
                const auto* c = rep.find(name);
                REQUIRE(c != nullptr);
                INFO(name, " ", rep.to_text());
                CHECK(c->ok());
                CHECK(c->checked > 0);
            }
            if (mode == BlanketMode::full_lattice) CHECK(rep.find("extended-monotonicity")->ok());
        }
    }
}

TEST_CASE("a perturbed zb is caught by the CAD1 check") {
    Triangle t;
    VerifyOptions vo;
    vo.samples = 60;
    vo.zb_mutant = [](const GradedPair& x, std::size_t, long long v) { return x.degree == 1 ? v + 1 : v; };
    const auto rep = verify(t.mem, vo);
    CHECK_FALSE(rep.find("cad1")->ok());
    CHECK_FALSE(rep.ok());
    CHECK(rep.find("corollary")->ok());

    VerifyOptions clean;
    clean.samples = 60;
    CHECK(verify(t.mem, clean).ok());
}
