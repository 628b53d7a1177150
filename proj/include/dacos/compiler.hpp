#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "bits.hpp"
#include "stabilizer.hpp"

namespace dacos {

using Edge = std::pair<std::size_t, std::size_t>;

// Encoding circuit in compiled coordinates: V_S = 0..r-1 (V_X first, then V_Z), V_L = r..n-1.
// Emitted program: CZ(u1), H on V_L, CZ(u2), H on V_S, measure V_S.
struct CompiledCircuit {
    std::size_t n = 0, k = 0, r_x = 0, r_z = 0;
    std::vector<std::size_t> v_s, v_l;
    std::vector<Edge> u1_edges, u2_edges;  // sorted, i < j
    BitMatrix gamma0;                      // symmetric, zero diagonal
    std::vector<std::uint8_t> gamma;       // diagonal of Gamma; phase gates left out of the program
    std::vector<std::size_t> perm;         // compiled index -> physical qubit
    std::vector<std::size_t> hadamard_frame;

    std::size_t r() const noexcept { return r_x + r_z; }
    const std::vector<std::size_t>& h2_targets() const noexcept { return v_l; }
    const std::vector<std::size_t>& h3_targets() const noexcept { return v_s; }
    std::size_t cz_count() const noexcept { return u1_edges.size() + u2_edges.size(); }
};

inline CompiledCircuit compile(const StandardForm& sf) {
    const std::size_t n = sf.n, rx = sf.r_x, rz = sf.r_z, r = sf.r(), k = sf.k;
    auto shape = [](const BitMatrix& m, std::size_t a, std::size_t b) { return m.rows() == a && m.cols() == b; };
    if (rx + rz + k != n || !shape(sf.J1, rx, rz) || !shape(sf.J2, rx, k) || !shape(sf.L1, rx, rx) ||
        !shape(sf.L2, rx, k) || !shape(sf.K1, rz, rx) || !shape(sf.K2, rz, k) || sf.perm.size() != n)
        throw std::invalid_argument("compile: malformed standard form");
    const BitMatrix g = sf.gamma();
    if (!(g == g.transpose())) throw std::invalid_argument("compile: Gamma is not symmetric");
    if (!sf.commutation_residual().is_zero()) throw std::invalid_argument("compile: commutation residual nonzero");

    CompiledCircuit c;
    c.n = n;
    c.k = k;
    c.r_x = rx;
    c.r_z = rz;
    for (std::size_t i = 0; i < r; ++i) c.v_s.push_back(i);
    for (std::size_t i = r; i < n; ++i) c.v_l.push_back(i);
    for (std::size_t i = 0; i < rx; ++i) {
        for (std::size_t j = 0; j < rz; ++j)
            if (sf.J1.get(i, j)) c.u1_edges.emplace_back(i, rx + j);
        for (std::size_t j = 0; j < k; ++j)
            if (sf.J2.get(i, j)) c.u1_edges.emplace_back(i, r + j);
    }
    c.gamma0 = g;
    c.gamma.assign(rx, 0);
    for (std::size_t i = 0; i < rx; ++i) {
        c.gamma[i] = g.get(i, i);
        c.gamma0.set(i, i, false);
    }
    for (std::size_t i = 0; i < rx; ++i)
        for (std::size_t j = i + 1; j < rx; ++j)
            if (c.gamma0.get(i, j)) c.u2_edges.emplace_back(i, j);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (i < rx ? sf.L2.get(i, j) : sf.K2.get(i - rx, j)) c.u2_edges.emplace_back(i, r + j);
    std::sort(c.u1_edges.begin(), c.u1_edges.end());
    std::sort(c.u2_edges.begin(), c.u2_edges.end());
    c.perm = sf.perm;
    c.hadamard_frame = sf.hadamard_frame;
    return c;
}

inline CompiledCircuit compile_code(const Tableau& t, const StandardFormOptions& opts = {}) {
    return compile(standard_form(t, opts));
}

// ---- symplectic conjugation primitives (phase ignored) ----

inline void apply_cz(PauliString& p, std::size_t a, std::size_t b) {
    p.z[a] ^= p.x[b];
    p.z[b] ^= p.x[a];
}
inline void apply_h(PauliString& p, std::size_t q) { std::swap(p.x[q], p.z[q]); }
inline void apply_phase(PauliString& p, std::size_t q) { p.z[q] ^= p.x[q]; }

namespace detail {
inline void check_len(const CompiledCircuit& c, const PauliString& p) {
    if (p.n() != c.n) throw std::invalid_argument("Pauli length does not match circuit");
}
}  // namespace detail

// Conjugation by the emitted program (without the omitted H(1) and phase gates).
inline PauliString propagate(const CompiledCircuit& c, PauliString p) {
    detail::check_len(c, p);
    for (const auto& [a, b] : c.u1_edges) apply_cz(p, a, b);
    for (auto q : c.v_l) apply_h(p, q);
    for (const auto& [a, b] : c.u2_edges) apply_cz(p, a, b);
    for (auto q : c.v_s) apply_h(p, q);
    return p;
}

// Inverse of propagate: maps post-circuit frames back to pre-circuit ones.
inline PauliString propagate_inverse(const CompiledCircuit& c, PauliString p) {
    detail::check_len(c, p);
    for (auto q : c.v_s) apply_h(p, q);
    for (const auto& [a, b] : c.u2_edges) apply_cz(p, a, b);
    for (auto q : c.v_l) apply_h(p, q);
    for (const auto& [a, b] : c.u1_edges) apply_cz(p, a, b);
    return p;
}

inline PauliString to_compiled(const CompiledCircuit& c, const PauliString& physical) {
    detail::check_len(c, physical);
    PauliString p(c.n);
    for (std::size_t i = 0; i < c.n; ++i) {
        p.x[i] = physical.x[c.perm[i]];
        p.z[i] = physical.z[c.perm[i]];
    }
    return p;
}

// Full Clifford taking the original physical code to Z on V_S:
// Hadamard frame, relocation, H on V_Z and V_L, U1, phase gates on gamma, H on V_L, U2, H on V_S.
inline PauliString propagate_full(const CompiledCircuit& c, PauliString physical) {
    detail::check_len(c, physical);
    for (auto q : c.hadamard_frame) apply_h(physical, q);
    PauliString p = to_compiled(c, physical);
    for (std::size_t q = c.r_x; q < c.n; ++q) apply_h(p, q);
    for (const auto& [a, b] : c.u1_edges) apply_cz(p, a, b);
    for (std::size_t i = 0; i < c.r_x; ++i)
        if (c.gamma[i]) apply_phase(p, i);
    for (auto q : c.v_l) apply_h(p, q);
    for (const auto& [a, b] : c.u2_edges) apply_cz(p, a, b);
    for (auto q : c.v_s) apply_h(p, q);
    return p;
}

// The LC-deformed code the emitted program actually encodes, in compiled coordinates.
inline Tableau implemented_tableau(const CompiledCircuit& c) {
    Tableau t;
    t.n = c.n;
    for (auto q : c.v_s) t.rows.push_back(propagate_inverse(c, PauliString::single(c.n, q, 'Z')));
    return t;
}

// Every generator of `t` must land on Z-type operators inside V_S, and together they must span
// all single-qubit Z on V_S (one per generator after the standard-form row operations).
inline bool verify_encoding(const CompiledCircuit& c, const Tableau& t) {
    if (t.n != c.n || t.num_rows() != c.r()) return false;
    if (t.num_rows() == 0) return true;
    BitMatrix zs(t.num_rows(), c.r());
    for (std::size_t i = 0; i < t.num_rows(); ++i) {
        const PauliString img = propagate_full(c, t.rows[i]);
        for (std::size_t q = 0; q < c.n; ++q) {
            if (img.x[q]) return false;
            if (img.z[q] && q >= c.r()) return false;
        }
        for (std::size_t q = 0; q < c.r(); ++q) zs.set(i, q, img.z[q]);
    }
    return rank_f2(zs) == c.r();
}

// Symplectic matrix of a CZ network in the row-vector convention v' = v C: [[I, A], [0, I]].
inline BitMatrix cz_network_matrix(std::size_t n, const std::vector<Edge>& edges) {
    BitMatrix m = BitMatrix::identity(2 * n);
    for (const auto& [a, b] : edges) {
        m.flip(a, n + b);
        m.flip(b, n + a);
    }
    return m;
}
inline BitMatrix c_u1(const CompiledCircuit& c) { return cz_network_matrix(c.n, c.u1_edges); }
inline BitMatrix c_u2(const CompiledCircuit& c) { return cz_network_matrix(c.n, c.u2_edges); }

// Logical class per kept pair: 0 = I, 1 = X, 2 = Y, 3 = Z.
inline std::uint8_t pauli_class(std::uint8_t x, std::uint8_t z) {
    return static_cast<std::uint8_t>(x ? (z ? 2 : 1) : (z ? 3 : 0));
}

struct LogicalClass {
    bool detected = false;
    std::vector<std::uint8_t> pairs;  // size k when not detected
};

// Class of a physical error relative to the code described by sf.
inline LogicalClass logical_class(const CompiledCircuit& c, const PauliString& e) {
    const PauliString img = propagate_full(c, e);
    LogicalClass lc;
    for (auto q : c.v_s)
        if (img.x[q]) {
            lc.detected = true;
            return lc;
        }
    for (auto q : c.v_l) lc.pairs.push_back(pauli_class(img.x[q], img.z[q]));
    return lc;
}
inline LogicalClass logical_class(const StandardForm& sf, const PauliString& e) {
    return logical_class(compile(sf), e);
}

// ---- instruction-level programs ----

struct GlobalH {
    std::vector<std::size_t> targets;
};
struct CZLayer {
    std::vector<Edge> pairs;
};
struct MeasureZ {
    std::vector<std::size_t> targets;
};
using Instruction = std::variant<GlobalH, CZLayer, MeasureZ>;

struct GateProgram {
    std::size_t n = 0;
    std::vector<Instruction> instructions;

    std::size_t cz_layers() const {
        return static_cast<std::size_t>(std::count_if(instructions.begin(), instructions.end(), [](const auto& in) {
            return std::holds_alternative<CZLayer>(in);
        }));
    }
    // Each CZ layer must act on pairwise disjoint qubits.
    bool layers_disjoint() const {
        for (const auto& in : instructions) {
            if (const auto* l = std::get_if<CZLayer>(&in)) {
                std::vector<std::uint8_t> used(n, 0);
                for (const auto& [a, b] : l->pairs) {
                    if (a >= n || b >= n || a == b || used[a] || used[b]) return false;
                    used[a] = used[b] = 1;
                }
            }
        }
        return true;
    }
};

inline PauliString propagate(const GateProgram& prog, PauliString p) {
    if (p.n() != prog.n) throw std::invalid_argument("Pauli length does not match program");
    for (const auto& in : prog.instructions) {
        if (const auto* h = std::get_if<GlobalH>(&in)) {
            for (auto q : h->targets) apply_h(p, q);
        } else if (const auto* l = std::get_if<CZLayer>(&in)) {
            for (const auto& [a, b] : l->pairs) apply_cz(p, a, b);
        }
    }
    return p;
}

// SWAP between data qubit i and ancilla j of the other species:
// H_A, CZ, H_j, H_A, CZ, H_j, H_A, CZ, H_A in time order, where H_A hits every qubit of i's species.
inline GateProgram swap_sequence(std::size_t n, std::size_t i, std::size_t j, const std::vector<int>& species) {
    if (species.size() != n) throw std::invalid_argument("swap_sequence: species list has wrong length");
    if (i >= n || j >= n) throw std::out_of_range("swap_sequence: qubit index");
    if (i == j) throw std::invalid_argument("swap_sequence: qubits must be distinct");
    if (species[i] == species[j]) throw std::invalid_argument("swap_sequence: qubits must be of opposite species");
    GlobalH ha;
    for (std::size_t q = 0; q < n; ++q)
        if (species[q] == species[i]) ha.targets.push_back(q);
    const GlobalH hj{{j}};
    const CZLayer cz{{{std::min(i, j), std::max(i, j)}}};
    GateProgram g;
    g.n = n;
    g.instructions = {ha, cz, hj, ha, cz, hj, ha, cz, ha};
    return g;
}

}  // namespace dacos
