#include "cadph/random.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <string>

namespace cadph {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return lo + static_cast<std::size_t>(rng());
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t v;
    do v = rng();
    while (v >= limit);
    return lo + static_cast<std::size_t>(v % span);
}

bool coin(Rng& rng, double p) { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p; }

namespace {

Grade random_grade(const std::vector<long>& shape, Rng& rng) {
    Grade g;
    for (long s : shape) g.push_back(static_cast<long>(uniform(rng, 0, static_cast<std::size_t>(s - 1))));
    return g;
}

std::string vertex_name(std::size_t i) { return "v" + std::to_string(i); }

}  // namespace

ComplexSpec random_complex(const RandomComplexOptions& opt, Rng& rng) {
    ComplexSpec spec;
    spec.field = opt.field;
    spec.poset = FinitePoset::grid(opt.shape);
    const std::size_t cap = std::max<std::size_t>(1, std::min(opt.max_vertices, opt.max_cells));
    const std::size_t nv = uniform(rng, std::max<std::size_t>(1, cap / 2), cap);

    // Simplices as sorted vertex index lists, with their birth grades.
    std::map<std::vector<std::size_t>, std::vector<Grade>> births;
    std::vector<std::vector<std::size_t>> order;
    auto add = [&](std::vector<std::size_t> s, std::vector<Grade> b) {
        births.emplace(s, std::move(b));
        order.push_back(std::move(s));
    };
    const std::size_t nbirths_max = std::max<std::size_t>(1, opt.max_births);
    for (std::size_t v = 0; v < nv; ++v) {
        std::vector<Grade> b;
        const auto count = uniform(rng, 1, nbirths_max);
        for (std::size_t i = 0; i < count; ++i) b.push_back(random_grade(opt.shape, rng));
        add({v}, std::move(b));
    }

    auto faces_of = [](const std::vector<std::size_t>& s) {
        std::vector<std::vector<std::size_t>> out;
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
            std::vector<std::size_t> f;
            for (std::size_t j = 0; j < s.size(); ++j)
                if (j != drop) f.push_back(s[j]);
            out.push_back(std::move(f));
        }
        return out;
    };

    auto birth_above_faces = [&](const std::vector<std::size_t>& s) {
        Grade g(opt.shape.size(), 0);
        for (const auto& f : faces_of(s)) {
            const auto& fb = births.at(f);
            const auto& pick = fb[uniform(rng, 0, fb.size() - 1)];
            for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::max(g[i], pick[i]);
        }
        while (coin(rng, 0.5)) {
            const auto axis = uniform(rng, 0, g.size() - 1);
            if (g[axis] + 1 < opt.shape[axis]) ++g[axis];
        }
        return g;
    };

    // Level-wise passes; later rounds revisit skipped candidates until the cell budget is used.
    const double keep[] = {0.0, 0.6, 0.5, 0.4};
    const std::size_t top = std::min<std::size_t>(opt.max_dim, 3);
    for (int round = 0; round < 4 && order.size() < opt.max_cells; ++round) {
        for (std::size_t dim = 1; dim <= top; ++dim) {
            std::vector<std::vector<std::size_t>> previous;
            for (const auto& s : order)
                if (s.size() == dim) previous.push_back(s);
            std::sort(previous.begin(), previous.end());
            for (const auto& s : previous) {
                for (std::size_t v = s.back() + 1; v < nv; ++v) {
                    auto t = s;
                    t.push_back(v);
                    if (births.count(t)) continue;
                    bool closed = true;
                    for (const auto& f : faces_of(t)) closed = closed && births.count(f);
                    if (!closed || order.size() >= opt.max_cells || !coin(rng, keep[dim])) continue;
                    std::vector<Grade> b;
                    const auto count = uniform(rng, 1, nbirths_max);
                    for (std::size_t i = 0; i < count; ++i) b.push_back(birth_above_faces(t));
                    add(t, std::move(b));
                }
            }
        }
    }

    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    for (const auto& s : order) {
        CellSpec c;
        c.dim = s.size() - 1;
        for (auto v : s) {
            c.id += (c.id.empty() ? "" : "-") + vertex_name(v);
            c.vertices.push_back(vertex_name(v));
        }
        for (const auto& g : births.at(s)) c.births.push_back(spec.poset.index_of(g));
        std::sort(c.births.begin(), c.births.end());
        c.births.erase(std::unique(c.births.begin(), c.births.end()), c.births.end());
        spec.cells.push_back(std::move(c));
    }
    return spec;
}

UpSet random_up_set(const FinitePoset& p, Rng& rng) {
    const double density = static_cast<double>(uniform(rng, 0, 4)) / 8.0;
    std::vector<std::size_t> gens;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (coin(rng, density)) gens.push_back(i);
    return generated_up_set(p, gens);
}

UpSet random_sub_up_set(const FinitePoset& p, const UpSet& u, Rng& rng) {
    const double density = static_cast<double>(uniform(rng, 0, 4)) / 8.0;
    std::vector<std::size_t> gens;
    for (auto i : u.members())
        if (coin(rng, density)) gens.push_back(i);
    return generated_up_set(p, gens);
}

PairOpen random_pair(const FinitePoset& p, Rng& rng) {
    auto u = random_up_set(p, rng);
    auto v = random_sub_up_set(p, u, rng);
    return {std::move(u), std::move(v)};
}

PairOpen random_smaller_pair(const FinitePoset& p, const PairOpen& x, Rng& rng) {
    auto u = random_sub_up_set(p, x.birth, rng);
    auto v = random_sub_up_set(p, x.death.intersected(u), rng);
    return {std::move(u), std::move(v)};
}

}  // namespace cadph
