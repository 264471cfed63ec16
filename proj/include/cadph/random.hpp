#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "cadph/complex.hpp"
#include "cadph/poset.hpp"

namespace cadph {

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi]; written out so results do not depend on the
/// standard library's distribution implementation.
std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi);
bool coin(Rng& rng, double p);

struct RandomComplexOptions {
    std::vector<long> shape{3, 3};
    std::size_t max_cells = 30;
    std::size_t max_vertices = 6;
    std::size_t max_dim = 2;
    std::size_t max_births = 2;
    FieldSpec field = FieldSpec::gf(2);
};

/// A random simplicial complex on a grid poset with monotone, possibly
/// multi-critical births. Always passes validate().
ComplexSpec random_complex(const RandomComplexOptions& opt, Rng& rng);

/// Up-set generated by a random subset of the elements.
UpSet random_up_set(const FinitePoset& p, Rng& rng);
/// Up-set generated by a random subset of u; always contained in u.
UpSet random_sub_up_set(const FinitePoset& p, const UpSet& u, Rng& rng);
/// Random valid pair (U, V).
PairOpen random_pair(const FinitePoset& p, Rng& rng);
/// Random pair (X, Y) with X in U and Y in V, i.e. a target of an arrow from x.
PairOpen random_smaller_pair(const FinitePoset& p, const PairOpen& x, Rng& rng);

}  // namespace cadph
