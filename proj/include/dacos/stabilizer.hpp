#pragma once

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bits.hpp"

namespace dacos {

// Phase-free Pauli operator: qubit i carries (x[i], z[i]); Y = (1, 1).
struct PauliString {
    std::vector<std::uint8_t> x;
    std::vector<std::uint8_t> z;

    PauliString() = default;
    explicit PauliString(std::size_t n) : x(n, 0), z(n, 0) {}

    static PauliString from_string(std::string_view s) {
        PauliString p(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            switch (s[i]) {
                case 'I': break;
                case 'X': p.x[i] = 1; break;
                case 'Y': p.x[i] = 1; p.z[i] = 1; break;
                case 'Z': p.z[i] = 1; break;
                default: throw std::invalid_argument(std::string("invalid Pauli character '") + s[i] + "'");
            }
        }
        return p;
    }

    static PauliString single(std::size_t n, std::size_t q, char op) {
        if (q >= n) throw std::out_of_range("PauliString::single");
        PauliString p(n);
        p.x[q] = (op == 'X' || op == 'Y');
        p.z[q] = (op == 'Z' || op == 'Y');
        return p;
    }

    std::size_t n() const noexcept { return x.size(); }

    std::size_t weight() const noexcept {
        std::size_t w = 0;
        for (std::size_t i = 0; i < n(); ++i) w += (x[i] | z[i]);
        return w;
    }
    bool is_identity() const noexcept { return weight() == 0; }

    char at(std::size_t i) const {
        static constexpr char kLabel[4] = {'I', 'Z', 'X', 'Y'};
        return kLabel[2 * x.at(i) + z.at(i)];
    }

    std::string to_string() const {
        std::string s(n(), 'I');
        for (std::size_t i = 0; i < n(); ++i) s[i] = at(i);
        return s;
    }

    PauliString& operator*=(const PauliString& o) {
        if (o.n() != n()) throw std::invalid_argument("Pauli product: length mismatch");
        for (std::size_t i = 0; i < n(); ++i) {
            x[i] ^= o.x[i];
            z[i] ^= o.z[i];
        }
        return *this;
    }
    friend PauliString operator*(PauliString a, const PauliString& b) { return a *= b; }
    friend bool operator==(const PauliString&, const PauliString&) = default;
};

inline bool commutes(const PauliString& a, const PauliString& b) {
    if (a.n() != b.n()) throw std::invalid_argument("commutes: length mismatch");
    unsigned s = 0;
    for (std::size_t i = 0; i < a.n(); ++i) s ^= (a.x[i] & b.z[i]) ^ (a.z[i] & b.x[i]);
    return s == 0;
}

// Stabilizer generators over n qubits, read as the binary matrix [T_X | T_Z].
struct Tableau {
    std::size_t n = 0;
    std::vector<PauliString> rows;

    static Tableau from_strings(const std::vector<std::string>& gens) {
        if (gens.empty()) throw std::invalid_argument("no stabilizers");
        Tableau t;
        t.n = gens.front().size();
        for (const auto& g : gens) {
            if (g.size() != t.n) throw std::invalid_argument("stabilizer length mismatch");
            t.rows.push_back(PauliString::from_string(g));
        }
        return t;
    }

    std::size_t num_rows() const noexcept { return rows.size(); }

    BitMatrix tx() const { return half(true); }
    BitMatrix tz() const { return half(false); }
    BitMatrix matrix() const { return hstack(tx(), tz()); }

    static Tableau from_matrix(const BitMatrix& m) {
        if (m.cols() % 2 != 0) throw std::invalid_argument("tableau matrix needs 2n columns");
        Tableau t;
        t.n = m.cols() / 2;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            PauliString p(t.n);
            for (std::size_t i = 0; i < t.n; ++i) {
                p.x[i] = m.get(r, i);
                p.z[i] = m.get(r, t.n + i);
            }
            t.rows.push_back(std::move(p));
        }
        return t;
    }

    std::vector<std::string> to_strings() const {
        std::vector<std::string> out;
        for (const auto& r : rows) out.push_back(r.to_string());
        return out;
    }

    // Throws std::invalid_argument unless rows commute pairwise and are independent.
    void validate() const {
        for (const auto& r : rows)
            if (r.n() != n) throw std::invalid_argument("stabilizer length mismatch");
        if (rows.size() > n) throw std::invalid_argument("more generators than qubits");
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = i + 1; j < rows.size(); ++j)
                if (!commutes(rows[i], rows[j]))
                    throw std::invalid_argument("generators " + std::to_string(i) + " and " + std::to_string(j) +
                                                " anticommute");
        if (rank_f2(matrix()) != rows.size()) throw std::invalid_argument("generators are linearly dependent");
    }

private:
    BitMatrix half(bool want_x) const {
        BitMatrix m(rows.size(), n);
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t i = 0; i < n; ++i)
                if (want_x ? rows[r].x[i] : rows[r].z[i]) m.set(r, i, true);
        return m;
    }
};

// Text format: one generator per line over {I,X,Y,Z}; blank lines are skipped.
inline Tableau parse_tableau(std::istream& in) {
    std::vector<std::string> gens;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string g;
        for (char ch : line) {
            if (std::isspace(static_cast<unsigned char>(ch))) continue;
            if (ch != 'I' && ch != 'X' && ch != 'Y' && ch != 'Z')
                throw std::invalid_argument("line " + std::to_string(lineno) + ": invalid character '" +
                                            std::string(1, ch) + "'");
            g += ch;
        }
        if (!g.empty()) gens.push_back(std::move(g));
    }
    auto t = Tableau::from_strings(gens);
    t.validate();
    return t;
}

inline Tableau parse_tableau(const std::string& text) {
    std::istringstream is(text);
    return parse_tableau(is);
}

// Column scan order and local Hadamard frame used when reducing a tableau.
struct StandardFormOptions {
    std::vector<std::size_t> column_order;    // physical qubits in pivot-scan order; empty = 0..n-1
    std::vector<std::size_t> hadamard_frame;  // physical qubits whose X/Z columns are exchanged first
};

// Block decomposition
//   [ I  J1 J2 | L1 0 L2 ]   rows: r_x
//   [ 0  0  0  | K1 I K2 ]   rows: r_z
// over compiled columns (V_X, V_Z, V_L). perm[c] is the physical qubit of compiled column c.
struct StandardForm {
    std::size_t n = 0, k = 0, r_x = 0, r_z = 0;
    BitMatrix J1, J2, K1, K2, L1, L2;
    std::vector<std::size_t> perm;
    std::vector<std::size_t> hadamard_frame;
    BitMatrix row_ops;  // row_ops * (framed input, columns permuted) == tableau()

    std::size_t r() const noexcept { return r_x + r_z; }

    BitMatrix gamma() const { return add_f2(L1, matmul_f2(L2, J2.transpose())); }

    // Eq. for the commutation residual K1 + J1^T + K2 J2^T, zero for valid input.
    BitMatrix commutation_residual() const {
        return add_f2(add_f2(K1, J1.transpose()), matmul_f2(K2, J2.transpose()));
    }

    BitMatrix tableau() const {
        BitMatrix m(r(), 2 * n);
        auto put = [&m](const BitMatrix& b, std::size_t r0, std::size_t c0) {
            for (std::size_t i = 0; i < b.rows(); ++i)
                for (std::size_t j = 0; j < b.cols(); ++j)
                    if (b.get(i, j)) m.set(r0 + i, c0 + j, true);
        };
        for (std::size_t i = 0; i < r_x; ++i) m.set(i, i, true);
        for (std::size_t i = 0; i < r_z; ++i) m.set(r_x + i, n + r_x + i, true);
        put(J1, 0, r_x);
        put(J2, 0, r());
        put(L1, 0, n);
        put(L2, 0, n + r());
        put(K1, r_x, n);
        put(K2, r_x, n + r());
        return m;
    }
};

namespace detail {

inline BitMatrix permute_columns(const BitMatrix& t, std::size_t n, const std::vector<std::size_t>& order) {
    std::vector<std::size_t> cols(order);
    for (auto c : order) cols.push_back(n + c);
    return t.select_columns(cols);
}

inline void check_permutation(const std::vector<std::size_t>& p, std::size_t n, const char* what) {
    std::vector<std::uint8_t> seen(n, 0);
    if (p.size() != n) throw std::invalid_argument(std::string(what) + ": wrong length");
    for (auto v : p) {
        if (v >= n || seen[v]) throw std::invalid_argument(std::string(what) + ": not a permutation");
        seen[v] = 1;
    }
}

}  // namespace detail

inline StandardForm standard_form(const Tableau& t, const StandardFormOptions& opts = {}) {
    t.validate();
    const std::size_t n = t.n;
    const std::size_t r = t.num_rows();

    std::vector<std::size_t> order = opts.column_order;
    if (order.empty()) {
        order.resize(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
    }
    detail::check_permutation(order, n, "column_order");

    BitMatrix m = t.matrix();
    for (auto q : opts.hadamard_frame) {
        if (q >= n) throw std::invalid_argument("hadamard_frame: qubit out of range");
        for (std::size_t i = 0; i < r; ++i) {
            const bool xb = m.get(i, q), zb = m.get(i, n + q);
            m.set(i, q, zb);
            m.set(i, n + q, xb);
        }
    }
    m = detail::permute_columns(m, n, order);
    BitMatrix ops = BitMatrix::identity(r);

    auto eliminate = [&](std::size_t col, std::size_t first_row, std::size_t& rank) {
        std::size_t pr = rank;
        while (pr < r && !m.get(pr, col)) ++pr;
        if (pr == r) return false;
        m.swap_rows(rank, pr);
        ops.swap_rows(rank, pr);
        for (std::size_t i = first_row; i < r; ++i) {
            if (i != rank && m.get(i, col)) {
                m.xor_row(i, rank);
                ops.xor_row(i, rank);
            }
        }
        ++rank;
        return true;
    };

    // X block: greedy left-to-right pivots.
    std::size_t rank = 0;
    std::vector<std::size_t> xpiv, rest;
    for (std::size_t c = 0; c < n; ++c) {
        if (rank < r && eliminate(c, 0, rank)) xpiv.push_back(c);
        else rest.push_back(c);
    }
    const std::size_t r_x = rank;
    std::vector<std::size_t> p1(xpiv);
    p1.insert(p1.end(), rest.begin(), rest.end());
    m = detail::permute_columns(m, n, p1);

    // Z block of the lower rows over the non-pivot columns; clear those columns in every row.
    std::vector<std::size_t> zpiv, rest2;
    for (std::size_t c = r_x; c < n; ++c) {
        if (rank < r && eliminate(n + c, 0, rank)) zpiv.push_back(c);
        else rest2.push_back(c);
    }
    const std::size_t r_z = rank - r_x;
    if (rank != r) throw std::invalid_argument("generators are linearly dependent");
    std::vector<std::size_t> p2(r_x);
    std::iota(p2.begin(), p2.end(), std::size_t{0});
    p2.insert(p2.end(), zpiv.begin(), zpiv.end());
    p2.insert(p2.end(), rest2.begin(), rest2.end());
    m = detail::permute_columns(m, n, p2);

    StandardForm sf;
    sf.n = n;
    sf.k = n - r;
    sf.r_x = r_x;
    sf.r_z = r_z;
    const std::size_t k = sf.k;
    sf.J1 = m.block(0, r_x, r_x, r_z);
    sf.J2 = m.block(0, r, r_x, k);
    sf.L1 = m.block(0, n, r_x, r_x);
    sf.L2 = m.block(0, n + r, r_x, k);
    sf.K1 = m.block(r_x, n, r_z, r_x);
    sf.K2 = m.block(r_x, n + r, r_z, k);
    sf.perm.resize(n);
    for (std::size_t c = 0; c < n; ++c) sf.perm[c] = order[p1[p2[c]]];
    sf.hadamard_frame = opts.hadamard_frame;
    sf.row_ops = std::move(ops);

    if (!(m == sf.tableau())) throw std::logic_error("standard_form: reduction did not reach block form");
    return sf;
}

// Minimum weight over N(S) \ S, by enumeration of all 4^n Paulis.
inline std::size_t minimum_distance(const Tableau& t, std::size_t max_n = 10) {
    const std::size_t n = t.n;
    if (n > max_n || n > 15) throw std::out_of_range("minimum_distance: n too large for enumeration");
    const std::size_t r = t.num_rows();
    if (r == n) throw std::invalid_argument("minimum_distance: code has no logical qubits");
    std::vector<std::uint32_t> gx(r, 0), gz(r, 0);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t q = 0; q < n; ++q) {
            gx[i] |= std::uint32_t{t.rows[i].x[q]} << q;
            gz[i] |= std::uint32_t{t.rows[i].z[q]} << q;
        }
    // Row-reduce generators on the packed 2n-bit form to test stabilizer membership.
    std::vector<std::uint64_t> basis;
    for (std::size_t i = 0; i < r; ++i) basis.push_back(gx[i] | (std::uint64_t{gz[i]} << n));
    std::vector<std::uint64_t> red;
    for (auto v : basis) {
        for (auto b : red)
            if ((v ^ b) < v) v ^= b;
        if (v) {
            red.push_back(v);
            std::sort(red.rbegin(), red.rend());
        }
    }
    auto in_span = [&](std::uint64_t v) {
        for (auto b : red)
            if ((v ^ b) < v) v ^= b;
        return v == 0;
    };
    std::size_t best = n + 1;
    const std::uint64_t total = std::uint64_t{1} << (2 * n);
    for (std::uint64_t v = 1; v < total; ++v) {
        const auto x = static_cast<std::uint32_t>(v & ((std::uint64_t{1} << n) - 1));
        const auto z = static_cast<std::uint32_t>(v >> n);
        const auto w = static_cast<std::size_t>(std::popcount(x | z));
        if (w >= best) continue;
        bool comm = true;
        for (std::size_t i = 0; i < r && comm; ++i)
            comm = ((std::popcount(x & gz[i]) + std::popcount(z & gx[i])) % 2) == 0;
        if (comm && !in_span(v)) best = w;
    }
    return best;
}

}  // namespace dacos
