#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "compiler.hpp"

namespace dacos {

// Packed Pauli frame for n <= 64.
struct Frame {
    std::uint64_t x = 0, z = 0;
    Frame& operator^=(const Frame& o) {
        x ^= o.x;
        z ^= o.z;
        return *this;
    }
    friend Frame operator^(Frame a, const Frame& b) { return a ^= b; }
    friend bool operator==(const Frame&, const Frame&) = default;
};

// Noise location: a single-qubit gate (b == npos) or a CZ; images of the local Paulis
// from just after that gate to the end of the emitted circuit.
struct NoiseLocation {
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t a = 0, b = npos;
    Frame xa, za, xb, zb;
    bool two_qubit() const noexcept { return b != npos; }
};

// Linear images of local Pauli errors through the compiled circuit, read out as
// syndrome bits (x on V_S) and kept-pair classes (x and z on V_L).
class FrameModel {
public:
    explicit FrameModel(const CompiledCircuit& c) : n_(c.n), r_(c.r()), k_(c.k) {
        if (n_ > 64) throw std::out_of_range("frame model supports at most 64 qubits");
        struct Op {
            bool cz;
            std::size_t a, b;
        };
        std::vector<Op> ops;
        for (const auto& [a, b] : c.u1_edges) ops.push_back({true, a, b});
        for (auto q : c.v_l) ops.push_back({false, q, 0});
        for (const auto& [a, b] : c.u2_edges) ops.push_back({true, a, b});
        for (auto q : c.v_s) ops.push_back({false, q, 0});

        auto run_from = [&](std::size_t start, PauliString p) {
            for (std::size_t t = start; t < ops.size(); ++t) {
                if (ops[t].cz) apply_cz(p, ops[t].a, ops[t].b);
                else apply_h(p, ops[t].a);
            }
            return pack(p);
        };
        for (std::size_t q = 0; q < n_; ++q) {
            in_x_.push_back(run_from(0, PauliString::single(n_, q, 'X')));
            in_z_.push_back(run_from(0, PauliString::single(n_, q, 'Z')));
        }
        for (std::size_t t = 0; t < ops.size(); ++t) {
            NoiseLocation loc;
            loc.a = ops[t].a;
            loc.xa = run_from(t + 1, PauliString::single(n_, loc.a, 'X'));
            loc.za = run_from(t + 1, PauliString::single(n_, loc.a, 'Z'));
            if (ops[t].cz) {
                loc.b = ops[t].b;
                loc.xb = run_from(t + 1, PauliString::single(n_, loc.b, 'X'));
                loc.zb = run_from(t + 1, PauliString::single(n_, loc.b, 'Z'));
            }
            locations_.push_back(loc);
        }
    }

    std::size_t n() const noexcept { return n_; }
    std::size_t r() const noexcept { return r_; }
    std::size_t k() const noexcept { return k_; }

    // Image of an input error on qubit q: 0 = I, 1 = X, 2 = Y, 3 = Z.
    Frame input_image(std::size_t q, unsigned cls) const {
        Frame f;
        if (cls == 1 || cls == 2) f ^= in_x_[q];
        if (cls == 2 || cls == 3) f ^= in_z_[q];
        return f;
    }
    Frame location_image(const NoiseLocation& loc, unsigned pa, unsigned pb = 0) const {
        Frame f;
        if (pa == 1 || pa == 2) f ^= loc.xa;
        if (pa == 2 || pa == 3) f ^= loc.za;
        if (pb == 1 || pb == 2) f ^= loc.xb;
        if (pb == 2 || pb == 3) f ^= loc.zb;
        return f;
    }
    const std::vector<NoiseLocation>& locations() const noexcept { return locations_; }

    std::uint64_t syndrome(const Frame& f) const noexcept { return r_ == 0 ? 0 : (f.x & low_mask(r_)); }
    std::uint64_t logical_x(const Frame& f) const noexcept { return k_ == 0 ? 0 : ((f.x >> r_) & low_mask(k_)); }
    std::uint64_t logical_z(const Frame& f) const noexcept { return k_ == 0 ? 0 : ((f.z >> r_) & low_mask(k_)); }

    // Class index over 4^k with pair 0 as the most significant base-4 digit.
    static std::size_t class_index(std::uint64_t lx, std::uint64_t lz, std::size_t k) noexcept {
        std::size_t idx = 0;
        for (std::size_t j = 0; j < k; ++j) {
            const auto xb = static_cast<std::uint8_t>((lx >> j) & 1U);
            const auto zb = static_cast<std::uint8_t>((lz >> j) & 1U);
            idx = idx * 4 + pauli_class(xb, zb);
        }
        return idx;
    }

    static Frame pack(const PauliString& p) {
        Frame f;
        for (std::size_t i = 0; i < p.n(); ++i) {
            f.x |= std::uint64_t{p.x[i]} << i;
            f.z |= std::uint64_t{p.z[i]} << i;
        }
        return f;
    }

private:
    static std::uint64_t low_mask(std::size_t b) noexcept {
        return b >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << b) - 1);
    }

    std::size_t n_, r_, k_;
    std::vector<Frame> in_x_, in_z_;
    std::vector<NoiseLocation> locations_;
};

}  // namespace dacos
