#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "cadph/complex.hpp"
#include "cadph/io.hpp"

namespace cadph {

/// Standard persistence by column reduction over the cell order (birth, dim,
/// index). Independent of the memory and derivative machinery; used to cross-check
/// diagrams on chain posets.
template <Field F>
std::vector<Bar> oracle_barcode(const FilteredComplex<F>& k) {
    const auto& p = k.poset();
    if (!p.is_chain()) throw Unsupported("the column-reduction oracle needs a chain poset");
    const auto order = p.chain_order();
    std::vector<std::size_t> pos(p.size());
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;

    struct Item {
        std::size_t birth, dim, index;
    };
    std::vector<Item> items;
    for (long n = 0; n <= k.top_dim(); ++n) {
        for (std::size_t i = 0; i < k.cell_count(static_cast<std::size_t>(n)); ++i) {
            const auto& births = k.cells(static_cast<std::size_t>(n))[i].births;
            std::size_t b = p.size();
            for (auto x : births) b = std::min(b, pos[x]);
            items.push_back({b, static_cast<std::size_t>(n), i});
        }
    }
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        return std::tie(a.birth, a.dim, a.index) < std::tie(b.birth, b.dim, b.index);
    });
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> slot;
    for (std::size_t j = 0; j < items.size(); ++j) slot[{items[j].dim, items[j].index}] = j;

    const auto& f = k.field();
    using V = typename F::value_type;
    // Sparse columns keyed by filtration slot.
    std::vector<Matrix<F>> boundary;
    for (long n = 0; n <= k.top_dim(); ++n) boundary.push_back(k.boundary_matrix(static_cast<std::size_t>(n)));
    std::vector<std::map<std::size_t, V>> cols(items.size());
    for (std::size_t j = 0; j < items.size(); ++j) {
        if (items[j].dim == 0) continue;
        const auto& m = boundary[items[j].dim];
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (!f.is_zero(m(r, items[j].index))) cols[j][slot.at({items[j].dim - 1, r})] = m(r, items[j].index);
        }
    }

    std::vector<std::optional<std::size_t>> owner(items.size());
    std::vector<bool> paired(items.size(), false);
    std::vector<Bar> bars;
    for (std::size_t j = 0; j < items.size(); ++j) {
        auto& c = cols[j];
        while (!c.empty()) {
            const auto low = c.rbegin()->first;
            if (!owner[low]) break;
            const auto& other = cols[*owner[low]];
            const V factor = f.mul(c.rbegin()->second, f.inv(other.rbegin()->second));
            for (const auto& [r, v] : other) {
                auto it = c.find(r);
                const V cur = it == c.end() ? f.zero() : it->second;
                const V next = f.sub(cur, f.mul(factor, v));
                if (f.is_zero(next)) {
                    if (it != c.end()) c.erase(it);
                } else {
                    c[r] = next;
                }
            }
        }
        if (c.empty()) continue;
        const auto low = c.rbegin()->first;
        owner[low] = j;
        paired[low] = paired[j] = true;
        if (items[low].birth != items[j].birth) bars.push_back({items[low].dim, items[low].birth, items[j].birth, 1});
    }
    for (std::size_t j = 0; j < items.size(); ++j) {
        if (!paired[j] && cols[j].empty()) bars.push_back({items[j].dim, items[j].birth, std::nullopt, 1});
    }
    return normalize_bars(std::move(bars));
}

}  // namespace cadph
