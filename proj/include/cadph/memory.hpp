#pragma once

#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <tuple>
#include <utility>

#include "cadph/complex.hpp"
#include "cadph/poset.hpp"
#include "cadph/subspace.hpp"

namespace cadph {

/// Cycle and boundary subspaces on opens, homological memory of pairs, and the
/// lifespan quotient, all as subspaces of ker(d_n) of the colimit complex.
///
/// Queries are pure functions of the complex. Results are memoized behind a mutex,
/// so one instance may be shared by concurrent callers.
template <Field F>
class Memory {
public:
    explicit Memory(const FilteredComplex<F>& k) : k_(&k) {}

    Memory(const Memory&) = delete;
    Memory& operator=(const Memory&) = delete;

    const FilteredComplex<F>& complex() const { return *k_; }
    const FinitePoset& poset() const { return k_->poset(); }

    /// Meet of the point cycle spaces over u. Monotone births make the minimal
    /// elements sufficient; the empty open gives all of ker(d_n).
    Subspace<F> cycles_on_open(std::size_t n, const UpSet& u) const {
        return cached(cycles_, n, u, [&] { return limit_over(n, u, /*boundaries=*/false); });
    }

    Subspace<F> boundaries_on_open(std::size_t n, const UpSet& v) const {
        return cached(boundaries_, n, v, [&] { return limit_over(n, v, /*boundaries=*/true); });
    }

    Subspace<F> homological_memory(std::size_t n, const PairOpen& pair) const {
        if (!pair.valid()) {
            throw InvalidPair("invalid pair " + describe_pair(poset(), pair) + ": death not contained in birth");
        }
        return cached(memory_, n, pair,
                      [&] { return meet(cycles_on_open(n, pair.birth), boundaries_on_open(n, pair.death)); });
    }

    /// Sum of the memories of the degree-d blankets of pair.
    Subspace<F> blanket_union(std::size_t n, const PairOpen& pair, std::size_t d, BlanketMode mode) const {
        if (d == 0 || !pair.valid()) return homological_memory(n, pair);
        return cached(unions_, n, std::tuple{pair, d, mode}, [&] {
            Subspace<F> acc = Subspace<F>::zero(k_->field(), k_->cell_count(n));
            for (const auto& w : degree_blankets(poset(), pair, d, mode)) acc = join(acc, homological_memory(n, w));
            return acc;
        });
    }

    /// Rank of the memory of pair modulo the memories of its blankets.
    std::size_t lifespan_rank(std::size_t n, const PairOpen& pair, BlanketMode mode) const {
        return quotient_dim(homological_memory(n, pair), blanket_union(n, pair, 1, mode));
    }

    /// Cycles representing a basis of the lifespan quotient (not canonical).
    Matrix<F> lifespan_representatives(std::size_t n, const PairOpen& pair, BlanketMode mode) const {
        return complement_basis(homological_memory(n, pair), blanket_union(n, pair, 1, mode));
    }

private:
    Subspace<F> limit_over(std::size_t n, const UpSet& u, bool boundaries) const {
        const auto mins = min_elements(poset(), u);
        if (mins.empty()) return k_->cycle_space(n);
        std::optional<Subspace<F>> acc;
        for (auto x : mins) {
            auto s = boundaries ? k_->boundaries_at(n, x) : k_->cycles_at(n, x);
            acc = acc ? meet(*acc, s) : std::move(s);
        }
        return *acc;
    }

    template <class Key, class Compute>
    Subspace<F> cached(std::map<std::pair<std::size_t, Key>, Subspace<F>>& cache, std::size_t n, const Key& key,
                       Compute&& compute) const {
        {
            std::lock_guard lock(mutex_);
            auto it = cache.find({n, key});
            if (it != cache.end()) return it->second;
        }
        auto value = compute();
        std::lock_guard lock(mutex_);
        return cache.emplace(std::pair{n, key}, std::move(value)).first->second;
    }

    const FilteredComplex<F>* k_;
    mutable std::mutex mutex_;
    mutable std::map<std::pair<std::size_t, UpSet>, Subspace<F>> cycles_;
    mutable std::map<std::pair<std::size_t, UpSet>, Subspace<F>> boundaries_;
    mutable std::map<std::pair<std::size_t, PairOpen>, Subspace<F>> memory_;
    mutable std::map<std::pair<std::size_t, std::tuple<PairOpen, std::size_t, BlanketMode>>, Subspace<F>> unions_;
};

}  // namespace cadph
