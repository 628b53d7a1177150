#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dacos {

// Dense GF(2) matrix, rows packed into 64-bit words. Bits past `cols` are kept zero.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), stride_((cols + 63) / 64), data_(rows * stride_, 0) {}

    static BitMatrix identity(std::size_t n) {
        BitMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }

    // Rows given as strings of '0'/'1'; all rows must have equal length.
    static BitMatrix from_strings(const std::vector<std::string>& rows) {
        const std::size_t c = rows.empty() ? 0 : rows.front().size();
        BitMatrix m(rows.size(), c);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != c) throw std::invalid_argument("BitMatrix: ragged rows");
            for (std::size_t j = 0; j < c; ++j) {
                const char ch = rows[i][j];
                if (ch != '0' && ch != '1') throw std::invalid_argument("BitMatrix: expected 0/1");
                m.set(i, j, ch == '1');
            }
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t stride() const noexcept { return stride_; }

    bool get(std::size_t r, std::size_t c) const {
        check(r, c);
        return (data_[r * stride_ + c / 64] >> (c % 64)) & 1U;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        check(r, c);
        const std::uint64_t bit = std::uint64_t{1} << (c % 64);
        auto& w = data_[r * stride_ + c / 64];
        w = v ? (w | bit) : (w & ~bit);
    }
    void flip(std::size_t r, std::size_t c) {
        check(r, c);
        data_[r * stride_ + c / 64] ^= std::uint64_t{1} << (c % 64);
    }

    const std::uint64_t* row_words(std::size_t r) const { return data_.data() + r * stride_; }
    std::uint64_t* row_words(std::size_t r) { return data_.data() + r * stride_; }

    void xor_row(std::size_t dst, std::size_t src) {
        auto* d = row_words(dst);
        const auto* s = row_words(src);
        for (std::size_t w = 0; w < stride_; ++w) d[w] ^= s[w];
    }
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        std::swap_ranges(row_words(a), row_words(a) + stride_, row_words(b));
    }
    bool row_is_zero(std::size_t r) const {
        const auto* p = row_words(r);
        return std::all_of(p, p + stride_, [](std::uint64_t w) { return w == 0; });
    }
    std::size_t row_popcount(std::size_t r) const {
        std::size_t s = 0;
        const auto* p = row_words(r);
        for (std::size_t w = 0; w < stride_; ++w) s += static_cast<std::size_t>(std::popcount(p[w]));
        return s;
    }
    std::size_t popcount() const {
        std::size_t s = 0;
        for (auto w : data_) s += static_cast<std::size_t>(std::popcount(w));
        return s;
    }
    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](std::uint64_t w) { return w == 0; });
    }

    BitMatrix transpose() const {
        BitMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (get(i, j)) t.set(j, i, true);
        return t;
    }

    BitMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("BitMatrix::block");
        BitMatrix b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j)
                if (get(r0 + i, c0 + j)) b.set(i, j, true);
        return b;
    }

    // Column permutation: result column c is this column cols[c].
    BitMatrix select_columns(const std::vector<std::size_t>& cols) const {
        BitMatrix b(rows_, cols.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols.size(); ++j)
                if (get(i, cols[j])) b.set(i, j, true);
        return b;
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) s += get(i, j) ? '1' : '0';
            s += '\n';
        }
        return s;
    }

    friend bool operator==(const BitMatrix& a, const BitMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    void check(std::size_t r, std::size_t c) const {
        if (r >= rows_ || c >= cols_) throw std::out_of_range("BitMatrix index");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t stride_ = 0;
    std::vector<std::uint64_t> data_;
};

inline BitMatrix hstack(const BitMatrix& a, const BitMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
    BitMatrix m(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a.get(i, j)) m.set(i, j, true);
        for (std::size_t j = 0; j < b.cols(); ++j)
            if (b.get(i, j)) m.set(i, a.cols() + j, true);
    }
    return m;
}

inline BitMatrix vstack(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
    BitMatrix m(a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        std::copy_n(a.row_words(i), a.stride(), m.row_words(i));
    for (std::size_t i = 0; i < b.rows(); ++i)
        std::copy_n(b.row_words(i), b.stride(), m.row_words(a.rows() + i));
    return m;
}

inline BitMatrix add_f2(const BitMatrix& a, const BitMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("add_f2: shape mismatch");
    BitMatrix m = a;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto* d = m.row_words(i);
        const auto* s = b.row_words(i);
        for (std::size_t w = 0; w < a.stride(); ++w) d[w] ^= s[w];
    }
    return m;
}

inline BitMatrix matmul_f2(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul_f2: shape mismatch");
    BitMatrix m(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto* d = m.row_words(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (!a.get(i, k)) continue;
            const auto* s = b.row_words(k);
            for (std::size_t w = 0; w < m.stride(); ++w) d[w] ^= s[w];
        }
    }
    return m;
}

struct RrefResult {
    BitMatrix reduced;
    BitMatrix row_ops;  // row_ops * input == reduced
    std::vector<std::size_t> pivots;
};

// Gauss-Jordan elimination; the pivot row for each column is the lowest-index candidate.
inline RrefResult rref(const BitMatrix& m) {
    RrefResult res{m, BitMatrix::identity(m.rows()), {}};
    auto& a = res.reduced;
    auto& r = res.row_ops;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
        std::size_t pr = rank;
        while (pr < a.rows() && !a.get(pr, c)) ++pr;
        if (pr == a.rows()) continue;
        a.swap_rows(rank, pr);
        r.swap_rows(rank, pr);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i != rank && a.get(i, c)) {
                a.xor_row(i, rank);
                r.xor_row(i, rank);
            }
        }
        res.pivots.push_back(c);
        ++rank;
    }
    return res;
}

inline std::size_t rank_f2(const BitMatrix& m) { return rref(m).pivots.size(); }

// True iff every row of `a` lies in the row space of `b` and vice versa.
inline bool same_row_space(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.cols()) return false;
    const auto ra = rank_f2(a);
    return ra == rank_f2(b) && rank_f2(vstack(a, b)) == ra;
}

// Omega = [[0, I], [I, 0]] of size 2n.
inline BitMatrix symplectic_form(std::size_t n) {
    BitMatrix o(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        o.set(i, n + i, true);
        o.set(n + i, i, true);
    }
    return o;
}

inline bool is_symplectic(const BitMatrix& c) {
    if (c.rows() != c.cols()) throw std::invalid_argument("is_symplectic: matrix not square");
    if (c.rows() % 2 != 0) throw std::invalid_argument("is_symplectic: odd dimension");
    const auto omega = symplectic_form(c.rows() / 2);
    return matmul_f2(matmul_f2(c, omega), c.transpose()) == omega;
}

// A BitMatrix known to satisfy C Omega C^T = Omega.
class SymplecticMatrix {
public:
    explicit SymplecticMatrix(BitMatrix c) : inner_(std::move(c)) {
        if (!is_symplectic(inner_)) throw std::invalid_argument("SymplecticMatrix: not symplectic");
    }
    const BitMatrix& inner() const noexcept { return inner_; }
    std::size_t n() const noexcept { return inner_.rows() / 2; }

private:
    BitMatrix inner_;
};

}  // namespace dacos
