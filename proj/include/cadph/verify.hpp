#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "cadph/diagram.hpp"
#include "cadph/diff.hpp"
#include "cadph/memory.hpp"
#include "cadph/oracle.hpp"
#include "cadph/random.hpp"

namespace cadph {

struct VerifyOptions {
    /// Sampled (pair, n, m) inputs per homological degree.
    std::size_t samples = 50;
    std::uint64_t seed = 42;
    std::size_t max_shift = 2;
    BlanketMode mode = BlanketMode::full_lattice;
    bool oracle = false;
    std::size_t jobs = 1;
    /// Test hook: replaces zb(x) by the returned value when set.
    std::function<long long(const GradedPair& x, std::size_t d, long long zb)> zb_mutant;
};

struct VerifyReport {
    std::vector<CadReport> checks;
    std::vector<std::string> notes;

    bool ok() const;
    const CadReport* find(const std::string& name) const;
    std::string to_text() const;
    nlohmann::json to_json() const;
};

namespace detail {

std::string describe_graded(const FinitePoset& p, const GradedPair& x);

/// Runs one check and records any library error as a counterexample.
template <class Body>
void guarded(CadReport& r, const std::string& what, Body&& body) {
    try {
        body();
    } catch (const Error& e) {
        ++r.checked;
        r.counterexamples.push_back(what + ": " + e.what());
    }
}

}  // namespace detail

/// Derivative of zb computed directly from the cokernel ranks of the blanket-union
/// inclusions, not through the finite difference; CAD1 against it is a real test.
template <Field F>
IntegerDerivative<GradedPair, std::size_t> zb_quotient_derivative(const Memory<F>& mem, std::size_t d,
                                                                  BlanketMode mode) {
    auto bu = [&mem, d, mode](const GradedPair& x) { return mem.blanket_union(d, x.pair, x.degree, mode); };
    auto shift = [](const GradedPair& x, std::size_t m) { return GradedPair{x.pair, x.degree + m}; };
    auto q = [bu](const GradedPair& big, const GradedPair& small) {
        return static_cast<long long>(quotient_dim(bu(big), bu(small)));
    };
    return {[q, shift](const GradedPair& x, const std::size_t& m) { return GroupObj{q(x, shift(x, m))}; },
            [q, shift](const Arrow<GradedPair>& a, const Arrow<std::size_t>& dm) {
                const auto xs = shift(a.from, dm.from);
                const auto ys = shift(a.to, dm.to);
                return GroupSquare{GroupObj{q(a.from, xs)}, GroupObj{q(a.to, ys)}, 0, q(a.to, a.from) - q(ys, xs)};
            }};
}

template <Field F>
VerifyReport verify(const Memory<F>& mem, const VerifyOptions& opt) {
    const auto& p = mem.poset();
    const auto& k = mem.complex();
    const std::size_t top = k.top_dim() < 0 ? 0 : static_cast<std::size_t>(k.top_dim());
    Rng rng(opt.seed);
    VerifyReport report;
    const auto ca = blanket_shift_action();

    CadReport cad1{"cad1"}, cad2{"cad2"}, extended{"extended-monotonicity"}, presheaf{"presheaf-monotonicity"},
        containment{"memory-containment"}, corollary{"corollary"}, functor{"functoriality"};

    for (std::size_t d = 0; d <= top; ++d) {
        auto truth = zb_functor(mem, d, opt.mode);
        IntegerFunctor<GradedPair> zbf = truth;
        if (opt.zb_mutant) {
            auto value = [truth, d, mutant = opt.zb_mutant](const GradedPair& x) {
                return GroupObj{mutant(x, d, truth.on_object(x).value)};
            };
            zbf.on_object = value;
            zbf.on_morphism = [truth, value](const GradedPair& x, const GradedPair& y) {
                truth.on_morphism(x, y);
                const auto a = value(x), b = value(y);
                return GroupSquare{a, b, 0, b.value - a.value};
            };
        }
        const auto dzb = zb_quotient_derivative(mem, d, opt.mode);

        for (std::size_t s = 0; s < opt.samples; ++s) {
            const auto x = random_pair(p, rng);
            const auto x_to = random_smaller_pair(p, x, rng);
            const std::size_t n = uniform(rng, 0, opt.max_shift);
            const std::size_t n_to = uniform(rng, 0, n);
            const std::size_t y = uniform(rng, 0, opt.max_shift), y_to = uniform(rng, 0, y);
            const std::size_t z = uniform(rng, 0, opt.max_shift), z_to = uniform(rng, 0, z);
            const CadSample<GradedPair, std::size_t> sample{{x, n}, {x_to, n_to}, y, y_to, z, z_to};
            const std::string where = "H" + std::to_string(d) + " x=" + detail::describe_graded(p, sample.x) +
                                      " -> " + detail::describe_graded(p, sample.x_to) + " y=" + std::to_string(y) +
                                      "->" + std::to_string(y_to) + " z=" + std::to_string(z) + "->" +
                                      std::to_string(z_to);
            auto describe = [&where](const CadSample<GradedPair, std::size_t>&) { return where; };
            const std::vector<CadSample<GradedPair, std::size_t>> one{sample};

            detail::guarded(cad1, where, [&] { cad1.merge(check_cad1(zbf, dzb, ca, one, describe)); });
            detail::guarded(cad2, where, [&] { cad2.merge(check_cad2(dzb, ca, one, describe)); });

            detail::guarded(extended, where, [&] {
                for (std::size_t m = 0; m <= opt.max_shift; ++m) {
                    ++extended.checked;
                    if (!contains(mem.blanket_union(d, x_to, n_to, opt.mode), mem.blanket_union(d, x, n + m, opt.mode))) {
                        extended.counterexamples.push_back(where + " (shift " + std::to_string(m) + ")");
                    }
                }
            });
            detail::guarded(functor, where, [&] {
                // Identities go to identity squares; composites add along x -> x_to -> x_to2.
                const GradedPair a{x, n}, b{x_to, n_to};
                const GradedPair c{random_smaller_pair(p, x_to, rng), uniform(rng, 0, n_to)};
                functor.checked += 2;
                if (!(truth.on_morphism(a, a) == GroupSquare::identity(truth.on_object(a)))) {
                    functor.counterexamples.push_back(where + " (identity)");
                }
                if (!(truth.on_morphism(a, c) == arr_compose(truth.on_morphism(a, b), truth.on_morphism(b, c)))) {
                    functor.counterexamples.push_back(where + " (composition)");
                }
            });
            detail::guarded(presheaf, where, [&] {
                presheaf.checked += 2;
                if (!contains(mem.cycles_on_open(d, x.death), mem.cycles_on_open(d, x.birth))) {
                    presheaf.counterexamples.push_back(where + " (cycles)");
                }
                if (!contains(mem.boundaries_on_open(d, x.death), mem.boundaries_on_open(d, x.birth))) {
                    presheaf.counterexamples.push_back(where + " (boundaries)");
                }
            });
            detail::guarded(containment, where, [&] {
                const auto own = mem.homological_memory(d, x);
                for (const auto& w : pair_blankets(p, x, opt.mode)) {
                    ++containment.checked;
                    if (!contains(own, mem.homological_memory(d, w))) {
                        containment.counterexamples.push_back(where + " blanket " + describe_pair(p, w));
                    }
                }
            });
        }
    }

    const auto pairs = enumerate_diagram_pairs(p);
    for (auto mode : {BlanketMode::full_lattice, BlanketMode::principal_only}) {
        for (std::size_t d = 0; d <= top; ++d) {
            std::vector<std::string> bad(pairs.size());
            parallel_for(pairs.size(), opt.jobs, [&](std::size_t i) {
                try {
                    const auto g = pair_group_rank(mem, d, pairs[i], mode);
                    const auto l = mem.lifespan_rank(d, pairs[i], mode);
                    if (g != l) {
                        bad[i] = "H" + std::to_string(d) + " " + describe_pair(p, pairs[i]) + " [" + to_string(mode) +
                                 "]: derivative " + std::to_string(g) + " vs lifespan " + std::to_string(l);
                    }
                } catch (const Error& e) {
                    bad[i] = "H" + std::to_string(d) + " " + describe_pair(p, pairs[i]) + " [" + to_string(mode) +
                             "]: " + e.what();
                }
            });
            corollary.checked += pairs.size();
            for (auto& b : bad)
                if (!b.empty()) corollary.counterexamples.push_back(std::move(b));
        }
    }

    report.checks = {cad1, cad2, corollary, presheaf, extended, containment, functor};

    if (opt.oracle && p.is_chain()) {
        CadReport oracle{"oracle"};
        oracle.checked = 1;
        DiagramOptions dopt;
        dopt.mode = opt.mode;
        dopt.jobs = opt.jobs;
        const auto ours = bars_from_diagram(p, compute_full_diagram(mem, dopt));
        const auto theirs = oracle_barcode(k);
        if (ours != theirs) {
            std::string a, b;
            for (const auto& bar : ours) a += (a.empty() ? "" : ", ") + render_bar(p, bar);
            for (const auto& bar : theirs) b += (b.empty() ? "" : ", ") + render_bar(p, bar);
            oracle.counterexamples.push_back("diagram {" + a + "} vs oracle {" + b + "}");
        }
        report.checks.push_back(oracle);
    }

    // Informational: where principal-only covers disagree with the full lattice.
    std::size_t differing = 0;
    std::vector<std::string> shown;
    for (const auto& x : pairs) {
        const auto full = pair_blankets(p, x, BlanketMode::full_lattice);
        const auto principal = pair_blankets(p, x, BlanketMode::principal_only);
        if (full == principal) continue;
        ++differing;
        if (shown.size() >= 8) continue;
        auto list = [&](const std::vector<PairOpen>& ws) {
            std::string s;
            for (const auto& w : ws) s += (s.empty() ? "" : ", ") + describe_pair(p, w);
            return "{" + s + "}";
        };
        shown.push_back("blankets of " + describe_pair(p, x) + ": full-lattice " + list(full) + ", principal-only " +
                        list(principal));
    }
    if (differing > 0) {
        report.notes.push_back("mode discrepancy: " + std::to_string(differing) + " of " +
                               std::to_string(pairs.size()) + " diagram pairs have different degree-1 blankets");
        for (auto& s : shown) report.notes.push_back("  " + s);
        std::size_t rank_diffs = 0;
        for (std::size_t d = 0; d <= top; ++d)
            for (const auto& x : pairs)
                if (mem.lifespan_rank(d, x, BlanketMode::full_lattice) !=
                    mem.lifespan_rank(d, x, BlanketMode::principal_only))
                    ++rank_diffs;
        report.notes.push_back("mode discrepancy: " + std::to_string(rank_diffs) +
                               " (degree, pair) multiplicities differ between modes");
    }
    return report;
}

}  // namespace cadph
