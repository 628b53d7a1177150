#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bell.hpp"

namespace dacos {

__extension__ typedef unsigned __int128 uint128_t;

inline double binary_entropy(double x) { return entropy_bits(std::array<double, 2>{x, 1.0 - x}); }

// Closed-form output fidelity of the [[n, n-2, 2]] two-way protocol on isotropic inputs.
inline double iceberg_fidelity(std::size_t n, double p) {
    if (n < 4 || n % 2 != 0) throw std::invalid_argument("iceberg_fidelity: n must be even and >= 4");
    const double dn = static_cast<double>(n);
    const double num = std::pow(1.0 - 0.75 * p, dn) + 3.0 * std::pow(p / 4.0, dn);
    const double den = 0.25 + 0.75 * std::pow(1.0 - p, dn);
    return num / den;
}

// Number of weight-w Paulis on n qubits that commute with X^n and Z^n: C(n,w)(3^w + 3(-1)^w)/4.
inline std::uint64_t n_w(std::size_t n, std::size_t w) {
    if (w > n) throw std::invalid_argument("n_w: w > n");
    uint128_t binom = 1;
    for (std::size_t i = 0; i < w; ++i) binom = binom * (n - i) / (i + 1);
    uint128_t pow3 = 1;
    for (std::size_t i = 0; i < w; ++i) pow3 *= 3;
    const uint128_t inner = (w % 2 == 0) ? pow3 + 3 : pow3 - 3;
    const uint128_t v = binom * inner / 4;
    if (v > static_cast<uint128_t>(UINT64_MAX)) throw std::overflow_error("n_w: value exceeds 64 bits");
    return static_cast<std::uint64_t>(v);
}

// Probability that no stabilizer flags the input error, as the weighted sum over n_w.
inline double undetected_prob(std::size_t n, double p) {
    if (n < 4 || n % 2 != 0) throw std::invalid_argument("undetected_prob: n must be even and >= 4");
    double s = 0.0;
    for (std::size_t w = 0; w <= n; ++w)
        s += static_cast<double>(n_w(n, w)) * std::pow(1.0 - 0.75 * p, static_cast<double>(n - w)) *
             std::pow(p / 4.0, static_cast<double>(w));
    return s;
}

inline double hashing_yield(const BellDiag& b) { return std::max(0.0, 1.0 - entropy_bits(b.p)); }
inline double hashing_yield(const BellClassDist& d) {
    return std::max(0.0, static_cast<double>(d.k) - entropy_bits(d.probs));
}

// max{0, 1 - h2(3p/4) - (3p/4) log2 3}
inline double hashing_bound(double p) { return hashing_yield(BellDiag::isotropic(p)); }

// max{0, 1 - h2(1 - 3p/4)}
inline double rains_bound(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("rains_bound: p outside [0, 1]");
    return std::max(0.0, 1.0 - binary_entropy(1.0 - 0.75 * p));
}

struct EppMapResult {
    double p_success = 0.0;
    BellClassDist joint;
    BellDiag reduced;
};

// One round of the [[n, n-2, 2]] two-way protocol on i.i.d. Bell-diagonal inputs. Logical basis
// for pair j: X_0 X_{j+1} and Z_{j+1} Z_{n-1}. All n-2 marginals coincide.
inline EppMapResult epp_map(std::size_t n, const BellDiag& input, std::size_t max_n = 10) {
    if (n < 4 || n % 2 != 0) throw std::invalid_argument("epp_map: n must be even and >= 4");
    if (n > max_n) throw std::out_of_range("epp_map: n exceeds enumeration cap");
    const std::size_t k = n - 2;
    EppMapResult res;
    res.joint.k = k;
    res.joint.probs.assign(std::size_t{1} << (2 * k), 0.0);
    static constexpr unsigned kX[4] = {0, 1, 1, 0}, kZ[4] = {0, 0, 1, 1};

    std::vector<unsigned> cls(n, 0);
    auto rec = [&](auto&& self, std::size_t q, double pr) -> void {
        if (pr == 0.0) return;
        if (q == n) {
            unsigned xs = 0, zs = 0;
            for (auto c : cls) {
                xs ^= kX[c];
                zs ^= kZ[c];
            }
            if (xs || zs) return;
            res.p_success += pr;
            std::size_t idx = 0;
            for (std::size_t j = 0; j < k; ++j) {
                const unsigned lx = kX[cls[j + 1]] ^ kX[cls[n - 1]];
                const unsigned lz = kZ[cls[0]] ^ kZ[cls[j + 1]];
                idx = idx * 4 + (lx ? (lz ? 2 : 1) : (lz ? 3 : 0));
            }
            res.joint.probs[idx] += pr;
            return;
        }
        for (unsigned c = 0; c < 4; ++c) {
            cls[q] = c;
            self(self, q + 1, pr * input.p[c]);
        }
    };
    rec(rec, 0, 1.0);
    for (auto& v : res.joint.probs) v /= res.p_success;
    res.reduced = res.joint.marginal(0);
    for (std::size_t j = 1; j < k; ++j) {
        const BellDiag m = res.joint.marginal(j);
        for (std::size_t c = 0; c < 4; ++c)
            if (std::abs(m.p[c] - res.reduced.p[c]) > 1e-12)
                throw std::logic_error("epp_map: pair marginals differ");
    }
    return res;
}

inline double rate_LS(std::size_t n, double p) {
    const auto m = epp_map(n, BellDiag::isotropic(p));
    return m.p_success / static_cast<double>(n) * hashing_yield(m.joint);
}

// Sh(r, n) yields for r = 0..r_max: each round feeds the twirled reduced state of the previous
// round into a fresh [[n, n-2, 2]] instance; hashing finishes on the last reduced state.
// Stops early once the accumulated yield factor falls below `floor`.
inline std::vector<double> rate_Sh_series(std::size_t n, double p, std::size_t r_max, double floor = 0.0) {
    BellDiag w = BellDiag::isotropic(p);
    std::vector<double> out{hashing_yield(w)};
    double y = 1.0;
    const double keep = static_cast<double>(n - 2) / static_cast<double>(n);
    for (std::size_t r = 1; r <= r_max; ++r) {
        const auto m = epp_map(n, w.twirled());
        y *= keep * m.p_success;
        if (y < floor) break;
        w = m.reduced;
        out.push_back(y * hashing_yield(w));
    }
    return out;
}

inline double rate_Sh(std::size_t r, std::size_t n, double p) { return rate_Sh_series(n, p, r).at(r); }

struct RateChoice {
    double value = 0.0;
    std::size_t rounds = 0;  // maximizing r
    bool leung_shor = false; // true when the single-shot LS yield wins
};

// D_[[n]](p) = max{ max_r D_Sh(r, n), D_LS(n) } over r in [0, r_max].
inline RateChoice rate_best(std::size_t n, double p, std::size_t r_max = 20) {
    const auto series = rate_Sh_series(n, p, r_max, 1e-12);
    RateChoice best;
    for (std::size_t r = 0; r < series.size(); ++r)
        if (series[r] > best.value) best = {series[r], r, false};
    const double ls = rate_LS(n, p);
    if (ls > best.value) best = {ls, 1, true};
    return best;
}

// 2 -> 1 recurrence step: keep when the x-parities agree; returns (success probability, output).
inline std::pair<double, BellDiag> recurrence_step(const BellDiag& w) {
    static constexpr unsigned kX[4] = {0, 1, 1, 0}, kZ[4] = {0, 0, 1, 1};
    BellDiag out{{0.0, 0.0, 0.0, 0.0}};
    double ps = 0.0;
    for (unsigned a = 0; a < 4; ++a)
        for (unsigned b = 0; b < 4; ++b) {
            if (kX[a] != kX[b]) continue;
            const double pr = w.p[a] * w.p[b];
            ps += pr;
            const unsigned x = kX[a], z = kZ[a] ^ kZ[b];
            out.p[x ? (z ? 2 : 1) : (z ? 3 : 0)] += pr;
        }
    if (ps > 0.0)
        for (auto& v : out.p) v /= ps;
    return {ps, out};
}

struct RecurrenceRates {
    RateChoice d_r;  // Werner-twirled recurrence, then hashing
    RateChoice d_m;  // untwirled recurrence with bilateral Hadamard between rounds, then hashing
};

// Both protocols run at least one recurrence round before hashing.
inline RecurrenceRates recurrence_rates(double p, std::size_t r_max = 20) {
    RecurrenceRates out;
    BellDiag wr = BellDiag::isotropic(p), wm = wr;
    double yr = 1.0, ym = 1.0;
    for (std::size_t r = 1; r <= r_max; ++r) {
        auto [psr, nr] = recurrence_step(wr.twirled());
        auto [psm, nm] = recurrence_step(wm);
        yr *= psr / 2.0;
        ym *= psm / 2.0;
        wr = nr;
        wm = nm.hadamard_swapped();
        if (yr >= 1e-12) {
            const double v = yr * hashing_yield(wr);
            if (v > out.d_r.value) out.d_r = {v, r, false};
        }
        if (ym >= 1e-12) {
            const double v = ym * hashing_yield(wm);
            if (v > out.d_m.value) out.d_m = {v, r, false};
        }
        if (yr < 1e-12 && ym < 1e-12) break;
    }
    return out;
}

// Reduced single-pair output fidelity of: input, recurrence (one round), macchiavello2
// (two rounds with a bilateral Hadamard between), iceberg4, iceberg6.
inline double f_out_red(const std::string& protocol, double p) {
    const BellDiag in = BellDiag::isotropic(p);
    if (protocol == "input") return in.p[0];
    if (protocol == "recurrence") return recurrence_step(in).second.p[0];
    if (protocol == "macchiavello2")
        return recurrence_step(recurrence_step(in).second.hadamard_swapped()).second.p[0];
    if (protocol == "iceberg4" || protocol == "iceberg(4)") return epp_map(4, in).reduced.p[0];
    if (protocol == "iceberg6" || protocol == "iceberg(6)") return epp_map(6, in).reduced.p[0];
    throw std::invalid_argument("f_out_red: unknown protocol '" + protocol + "'");
}

struct RateRow {
    double p = 0.0;
    double d_h = 0.0, rains = 0.0;
    RateChoice d_r, d_m;
    double d_ls4 = 0.0, d_ls6 = 0.0;
    RateChoice d_sh_best4;
    RateChoice d_best4;
};

inline RateRow rate_row(double p, std::size_t r_max = 20) {
    RateRow row;
    row.p = p;
    row.d_h = hashing_bound(p);
    row.rains = rains_bound(p);
    const auto rr = recurrence_rates(p, r_max);
    row.d_r = rr.d_r;
    row.d_m = rr.d_m;
    row.d_ls4 = rate_LS(4, p);
    row.d_ls6 = rate_LS(6, p);
    const auto series = rate_Sh_series(4, p, r_max, 1e-12);
    for (std::size_t r = 0; r < series.size(); ++r)
        if (series[r] > row.d_sh_best4.value) row.d_sh_best4 = {series[r], r, false};
    row.d_best4 = row.d_sh_best4;
    if (row.d_ls4 > row.d_best4.value) row.d_best4 = {row.d_ls4, 1, true};
    return row;
}

inline std::vector<RateRow> rate_curve(const std::vector<double>& grid, std::size_t r_max = 20) {
    std::vector<RateRow> rows;
    rows.reserve(grid.size());
    for (double p : grid) rows.push_back(rate_row(p, r_max));
    return rows;
}

}  // namespace dacos
