#pragma once

// Shared fixtures and brute-force oracles for the test binaries.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "cadph/complex.hpp"
#include "cadph/io.hpp"
#include "cadph/matrix.hpp"
#include "cadph/poset.hpp"
#include "cadph/random.hpp"
#include "cadph/subspace.hpp"

#ifndef CADPH_FIXTURE_DIR
#define CADPH_FIXTURE_DIR "tests/fixtures"
#endif

namespace support {

using namespace cadph;

inline std::string fixture(const std::string& name) { return std::string(CADPH_FIXTURE_DIR) + "/" + name; }

inline ComplexSpec load_fixture(const std::string& name) { return load_document(fixture(name)); }

inline const PrimeField gf2{2};

inline Matrix<PrimeField> m2(const std::vector<std::vector<long long>>& rows, std::size_t cols = 0) {
    return Matrix<PrimeField>::from_ints(gf2, rows, cols);
}

inline Subspace<PrimeField> span2(const std::vector<std::vector<long long>>& rows, std::size_t cols = 0) {
    return Subspace<PrimeField>::span(m2(rows, cols));
}

// GF(2) vectors as bitmasks; bit i is coordinate i.
using Mask = std::uint32_t;

template <class Row>
Mask to_mask(const Row& row) {
    Mask m = 0;
    for (std::size_t i = 0; i < row.size(); ++i)
        if (row[i] % 2) m |= Mask{1} << i;
    return m;
}

/// Every vector in the GF(2) span of the rows (enumerates all 2^k combinations).
inline std::set<Mask> brute_span(const std::vector<Mask>& gens) {
    std::set<Mask> out;
    const std::size_t k = gens.size();
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << k); ++c) {
        Mask v = 0;
        for (std::size_t i = 0; i < k; ++i)
            if (c >> i & 1) v ^= gens[i];
        out.insert(v);
    }
    return out;
}

inline std::set<Mask> brute_span(const Subspace<PrimeField>& s) {
    std::vector<Mask> gens;
    for (std::size_t i = 0; i < s.dim(); ++i) gens.push_back(to_mask(s.basis().row(i)));
    return brute_span(gens);
}

/// All GF(2) vectors of length n annihilated by m.
inline std::set<Mask> brute_kernel(const Matrix<PrimeField>& m) {
    std::set<Mask> out;
    for (Mask v = 0; v < (Mask{1} << m.cols()); ++v) {
        bool zero = true;
        for (std::size_t r = 0; r < m.rows() && zero; ++r) {
            unsigned s = 0;
            for (std::size_t c = 0; c < m.cols(); ++c) s += m(r, c) * (v >> c & 1);
            zero = s % 2 == 0;
        }
        if (zero) out.insert(v);
    }
    return out;
}

inline std::size_t log2_size(std::size_t n) {
    std::size_t k = 0;
    while ((std::size_t{1} << k) < n) ++k;
    return k;
}

template <Field F>
Matrix<F> random_matrix(const F& f, std::size_t rows, std::size_t cols, Rng& rng, long long range) {
    Matrix<F> m(f, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            const long long v = static_cast<long long>(uniform(rng, 0, static_cast<std::size_t>(2 * range))) - range;
            m(r, c) = f.from_int(coin(rng, 0.4) ? 0 : v);
        }
    return m;
}

/// A random poset on n elements: a random DAG on 0..n-1 closed transitively.
inline FinitePoset random_poset(std::size_t n, Rng& rng, double density = 0.3) {
    std::vector<std::string> labels;
    std::vector<std::pair<std::size_t, std::size_t>> covers;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (coin(rng, density)) covers.emplace_back(i, j);
    return FinitePoset::from_covers(labels, covers);
}

/// Triangle filtration on the chain 0 < 1 < 2.
inline ComplexSpec triangle() { return load_fixture("triangle.json"); }

}  // namespace support
