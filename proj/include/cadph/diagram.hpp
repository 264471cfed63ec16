#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "cadph/diff.hpp"
#include "cadph/io.hpp"
#include "cadph/memory.hpp"

namespace cadph {

enum class RankMethod { derivative, lifespan };

struct DiagramOptions {
    BlanketMode mode = BlanketMode::full_lattice;
    RankMethod method = RankMethod::derivative;
    /// Keep zero-multiplicity entries.
    bool all = false;
    std::size_t jobs = 1;
};

/// Runs fn(i) for i in [0, count) on up to `jobs` threads; rethrows the first failure.
template <class Fn>
void parallel_for(std::size_t count, std::size_t jobs, Fn&& fn) {
    jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(count, 1));
    if (jobs == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < jobs; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

/// Multiplicities of every enumerated diagram pair in degree d.
template <Field F>
std::vector<DiagramEntry> compute_diagram(const Memory<F>& mem, std::size_t d, const DiagramOptions& opt) {
    const auto& p = mem.poset();
    const auto pairs = enumerate_diagram_pairs(p);
    std::vector<std::size_t> ranks(pairs.size());
    parallel_for(pairs.size(), opt.jobs, [&](std::size_t i) {
        ranks[i] = opt.method == RankMethod::derivative ? pair_group_rank(mem, d, pairs[i], opt.mode)
                                                        : mem.lifespan_rank(d, pairs[i], opt.mode);
    });
    std::vector<DiagramEntry> out;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (ranks[i] > 0 || opt.all) out.push_back(make_entry(p, d, pairs[i], ranks[i]));
    }
    sort_entries(p, out);
    return out;
}

/// All degrees that carry cells.
template <Field F>
std::vector<DiagramEntry> compute_full_diagram(const Memory<F>& mem, const DiagramOptions& opt) {
    std::vector<DiagramEntry> out;
    const long top = mem.complex().top_dim();
    for (long d = 0; d <= top; ++d) {
        auto part = compute_diagram(mem, static_cast<std::size_t>(d), opt);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

}  // namespace cadph
