#pragma once

// Reference computations used only by the tests. Each one avoids the library code path it checks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "dacos.hpp"

namespace oracle {

using dacos::BitMatrix;
using dacos::PauliString;
using dacos::Tableau;

// Rank via elimination with shuffled column order and random pivot rows.
inline std::size_t rank_random_pivot(BitMatrix m, std::mt19937_64& rng) {
    std::vector<std::size_t> cols(m.cols());
    std::iota(cols.begin(), cols.end(), std::size_t{0});
    std::shuffle(cols.begin(), cols.end(), rng);
    std::size_t rank = 0;
    for (auto c : cols) {
        std::vector<std::size_t> cand;
        for (std::size_t r = rank; r < m.rows(); ++r)
            if (m.get(r, c)) cand.push_back(r);
        if (cand.empty()) continue;
        const std::size_t pr = cand[std::uniform_int_distribution<std::size_t>(0, cand.size() - 1)(rng)];
        m.swap_rows(rank, pr);
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (r != rank && m.get(r, c)) m.xor_row(r, rank);
        ++rank;
    }
    return rank;
}

inline BitMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
    BitMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, rng() & 1U);
    return m;
}

// Symplectic product on packed 2n-bit vectors (x in the low n bits).
inline unsigned symp(std::uint64_t a, std::uint64_t b, std::size_t n) {
    const std::uint64_t lo = (std::uint64_t{1} << n) - 1;
    return static_cast<unsigned>((std::popcount((a & lo) & (b >> n)) + std::popcount((a >> n) & (b & lo))) & 1);
}

// Valid random code: Z_0..Z_{r-1} pushed through random symplectic transvections.
inline Tableau random_tableau(std::size_t n, std::size_t r, std::mt19937_64& rng, std::size_t steps = 0) {
    if (steps == 0) steps = 4 * n + 4;
    std::vector<std::uint64_t> rows;
    for (std::size_t i = 0; i < r; ++i) rows.push_back(std::uint64_t{1} << (n + i));
    const std::uint64_t full = (std::uint64_t{1} << (2 * n)) - 1;
    for (std::size_t s = 0; s < steps; ++s) {
        std::uint64_t h = 0;
        while (h == 0) h = rng() & full;
        for (auto& v : rows)
            if (symp(v, h, n)) v ^= h;
    }
    Tableau t;
    t.n = n;
    for (auto v : rows) {
        PauliString p(n);
        for (std::size_t q = 0; q < n; ++q) {
            p.x[q] = (v >> q) & 1U;
            p.z[q] = (v >> (n + q)) & 1U;
        }
        t.rows.push_back(p);
    }
    return t;
}

inline std::uint64_t pack(const PauliString& p) {
    std::uint64_t v = 0;
    for (std::size_t q = 0; q < p.n(); ++q) {
        v |= std::uint64_t{p.x[q]} << q;
        v |= std::uint64_t{p.z[q]} << (p.n() + q);
    }
    return v;
}

// Subgroup generated by the tableau rows, as packed vectors.
inline std::vector<std::uint64_t> stabilizer_group(const Tableau& t) {
    std::vector<std::uint64_t> g{0};
    for (const auto& r : t.rows) {
        const auto v = pack(r);
        const std::size_t m = g.size();
        for (std::size_t i = 0; i < m; ++i) g.push_back(g[i] ^ v);
    }
    std::sort(g.begin(), g.end());
    return g;
}

struct TwoWay {
    double p_success = 0.0;
    double fidelity = 0.0;
};

// Two-way protocol outcome straight from the definition: an input error passes iff it commutes
// with every generator, and leaves Phi+^k intact iff it lies in the stabilizer group.
inline TwoWay brute_force_two_way(const Tableau& t, double p) {
    const std::size_t n = t.n;
    const auto group = stabilizer_group(t);
    std::vector<std::uint64_t> gens;
    for (const auto& r : t.rows) gens.push_back(pack(r));
    const double w[4] = {1 - 0.75 * p, p / 4, p / 4, p / 4};  // I, X, Y, Z
    TwoWay out;
    double in_group = 0.0;
    const std::uint64_t total = std::uint64_t{1} << (2 * n);
    for (std::uint64_t code = 0; code < total; ++code) {
        // base-4 digits, qubit q -> digit q
        std::uint64_t v = 0;
        double pr = 1.0;
        std::uint64_t c = code;
        for (std::size_t q = 0; q < n; ++q, c >>= 2) {
            const unsigned d = c & 3U;
            pr *= w[d];
            if (d == 1 || d == 2) v |= std::uint64_t{1} << q;
            if (d == 2 || d == 3) v |= std::uint64_t{1} << (n + q);
        }
        bool ok = true;
        for (auto g : gens) ok = ok && symp(v, g, n) == 0;
        if (!ok) continue;
        out.p_success += pr;
        if (std::binary_search(group.begin(), group.end(), v)) in_group += pr;
    }
    out.fidelity = in_group / out.p_success;
    return out;
}

// Explicit pair bookkeeping for Sh(r, n): survivors are re-grouped at random into fresh blocks of n,
// each block succeeds with probability ps[i] and keeps n - 2 pairs. Returns final / initial count.
inline double shuffled_yield(std::size_t n, const std::vector<double>& ps, std::size_t m, std::mt19937_64& rng) {
    std::size_t total = m;
    for (std::size_t i = 0; i < ps.size(); ++i) total *= n;
    std::vector<std::uint32_t> alive(total);
    std::iota(alive.begin(), alive.end(), 0U);
    for (double p : ps) {
        std::shuffle(alive.begin(), alive.end(), rng);
        std::vector<std::uint32_t> next;
        std::bernoulli_distribution ok(p);
        for (std::size_t b = 0; b + n <= alive.size(); b += n)
            if (ok(rng))
                for (std::size_t j = 0; j + 2 < n; ++j) next.push_back(alive[b + j]);
        alive.swap(next);
    }
    return static_cast<double>(alive.size()) / static_cast<double>(total);
}

}  // namespace oracle
