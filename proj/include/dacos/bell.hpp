#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace dacos {

// Single-pair Bell-diagonal state as class probabilities (I, X, Y, Z) = (Phi+, Psi+, Psi-, Phi-).
struct BellDiag {
    std::array<double, 4> p{1.0, 0.0, 0.0, 0.0};

    static BellDiag isotropic(double noise) {
        if (!(noise >= 0.0 && noise <= 1.0)) throw std::invalid_argument("isotropic: p outside [0, 1]");
        return {{1.0 - 0.75 * noise, noise / 4, noise / 4, noise / 4}};
    }
    // Isotropic state with the same fidelity.
    BellDiag twirled() const {
        const double rest = (1.0 - p[0]) / 3.0;
        return {{p[0], rest, rest, rest}};
    }
    // Bilateral Hadamard exchanges the X and Z classes.
    BellDiag hadamard_swapped() const { return {{p[0], p[3], p[2], p[1]}}; }

    double fidelity() const noexcept { return p[0]; }
    bool valid(double tol = 1e-12) const {
        double s = 0.0;
        for (double v : p) {
            if (v < -tol) return false;
            s += v;
        }
        return std::abs(s - 1.0) <= tol;
    }
};

// Eigenvalues of XX, YY, ZZ on the four Bell classes.
inline constexpr std::array<std::array<int, 3>, 4> kBellCorrelatorSigns{{
    {1, -1, 1},    // I  / Phi+
    {1, 1, -1},    // X  / Psi+
    {-1, -1, -1},  // Y  / Psi-
    {-1, 1, 1},    // Z  / Phi-
}};

inline std::array<double, 3> correlators(const BellDiag& b) {
    std::array<double, 3> c{0.0, 0.0, 0.0};
    for (std::size_t cls = 0; cls < 4; ++cls)
        for (std::size_t a = 0; a < 3; ++a) c[a] += kBellCorrelatorSigns[cls][a] * b.p[cls];
    return c;
}

// Joint distribution over 4^k logical classes of k kept pairs; pair 0 is the most significant digit.
struct BellClassDist {
    std::size_t k = 0;
    std::vector<double> probs{1.0};

    static BellClassDist identity(std::size_t k) {
        BellClassDist d;
        d.k = k;
        d.probs.assign(std::size_t{1} << (2 * k), 0.0);
        d.probs[0] = 1.0;
        return d;
    }

    std::size_t digit(std::size_t index, std::size_t pair) const noexcept {
        return (index >> (2 * (k - 1 - pair))) & 3U;
    }

    BellDiag marginal(std::size_t pair) const {
        if (pair >= k) throw std::out_of_range("BellClassDist::marginal: pair index");
        BellDiag b{{0.0, 0.0, 0.0, 0.0}};
        for (std::size_t i = 0; i < probs.size(); ++i) b.p[digit(i, pair)] += probs[i];
        return b;
    }

    double total() const { return std::accumulate(probs.begin(), probs.end(), 0.0); }
    bool valid(double tol = 1e-12) const {
        if (probs.size() != (std::size_t{1} << (2 * k))) return false;
        for (double v : probs)
            if (v < -tol) return false;
        return std::abs(total() - 1.0) <= tol;
    }
};

inline std::array<double, 3> correlators(const BellClassDist& d, std::size_t pair) {
    return correlators(d.marginal(pair));
}

// Shannon entropy in bits with 0 log 0 = 0.
template <class Range>
double entropy_bits(const Range& probs) {
    double h = 0.0;
    for (double v : probs)
        if (v > 0.0) h -= v * std::log2(v);
    return h;
}

}  // namespace dacos
