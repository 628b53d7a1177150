#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "frames.hpp"
#include "stabilizer.hpp"

namespace dacos {

// Syndrome -> Pauli correction on the kept pairs. Syndrome bit i belongs to measured qubit i
// and is written as character i of the string form ("s1 s2 ...").
struct DecoderTable {
    std::size_t r_s = 0;
    std::size_t k = 0;
    std::map<std::uint64_t, PauliString> entries;  // non-identity corrections only

    PauliString lookup(std::uint64_t syndrome) const {
        auto it = entries.find(syndrome);
        return it == entries.end() ? PauliString(k) : it->second;
    }

    static std::uint64_t parse_syndrome(const std::string& s) {
        if (s.size() > 64) throw std::invalid_argument("syndrome too long");
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] != '0' && s[i] != '1') throw std::invalid_argument("syndrome must be a 0/1 string");
            if (s[i] == '1') v |= std::uint64_t{1} << i;
        }
        return v;
    }
    std::string syndrome_string(std::uint64_t s) const {
        std::string out(r_s, '0');
        for (std::size_t i = 0; i < r_s; ++i)
            if ((s >> i) & 1U) out[i] = '1';
        return out;
    }

    void set(const std::string& syndrome, const std::string& correction) {
        if (syndrome.size() != r_s) throw std::invalid_argument("syndrome length mismatch");
        auto c = PauliString::from_string(correction);
        if (c.n() != k) throw std::invalid_argument("correction length mismatch");
        const auto s = parse_syndrome(syndrome);
        if (c.is_identity()) entries.erase(s);
        else entries[s] = std::move(c);
    }

    friend bool operator==(const DecoderTable&, const DecoderTable&) = default;
};

namespace detail {
inline DecoderTable table_from(std::size_t r, const std::vector<std::pair<const char*, const char*>>& rows) {
    DecoderTable t;
    t.r_s = r;
    t.k = 1;
    for (const auto& [s, c] : rows) t.set(s, c);
    return t;
}
}  // namespace detail

// [[5,1,3]] lookup table for the native compiled circuit.
inline DecoderTable table_513() {
    return detail::table_from(4, {{"0011", "Y"}, {"0101", "Z"}, {"0110", "Y"}, {"0111", "Z"},
                                  {"1001", "Z"}, {"1010", "Z"}, {"1011", "Y"}, {"1100", "Y"},
                                  {"1101", "Y"}, {"1110", "Z"}, {"1111", "X"}});
}

// Steane-code table for the native compiled circuit; redundant syndromes cover likely two-qubit errors.
inline DecoderTable table_713() {
    return detail::table_from(
        6, {{"000011", "X"}, {"000101", "X"}, {"000110", "X"}, {"001011", "X"}, {"001100", "Y"}, {"001101", "Z"},
            {"001110", "Z"}, {"010010", "Y"}, {"010011", "X"}, {"010100", "Y"}, {"010101", "X"}, {"010110", "Z"},
            {"010111", "Y"}, {"011000", "Z"}, {"011001", "X"}, {"011010", "Z"}, {"011100", "Z"}, {"011110", "Y"},
            {"011111", "Z"}, {"100001", "Y"}, {"100011", "X"}, {"100100", "Y"}, {"100101", "Z"}, {"100110", "X"},
            {"100111", "Y"}, {"101000", "Z"}, {"101001", "Z"}, {"101010", "X"}, {"101100", "Z"}, {"101101", "Y"},
            {"101111", "Z"}, {"110000", "Z"}, {"110001", "X"}, {"110010", "X"}, {"110011", "Y"}, {"110100", "Z"},
            {"110101", "Y"}, {"110110", "Y"}, {"110111", "Z"}, {"111011", "Z"}, {"111101", "Z"}, {"111110", "Z"},
            {"111111", "Y"}});
}

inline PauliString class_to_pauli(std::size_t index, std::size_t k) {
    static constexpr char kLabel[4] = {'I', 'X', 'Y', 'Z'};
    std::string s(k, 'I');
    for (std::size_t j = 0; j < k; ++j) s[j] = kLabel[(index >> (2 * (k - 1 - j))) & 3U];
    return PauliString::from_string(s);
}

// Maximum-likelihood class per syndrome under i.i.d. depolarizing input errors
// (weights 1-3p/4, p/4, p/4, p/4). Ties go to the lexicographically smallest class (I < X < Y < Z).
inline DecoderTable generate_ml_decoder(const CompiledCircuit& c, double p_prior = 0.01, std::size_t max_n = 10) {
    if (c.n > max_n) throw std::out_of_range("generate_ml_decoder: n exceeds enumeration cap");
    if (!(p_prior > 0.0 && p_prior <= 1.0)) throw std::invalid_argument("generate_ml_decoder: p_prior in (0, 1]");
    const FrameModel fm(c);
    const std::size_t r = c.r(), k = c.k;
    const std::size_t classes = std::size_t{1} << (2 * k);
    std::vector<double> table((std::size_t{1} << r) * classes, 0.0);
    const double w[4] = {1.0 - 0.75 * p_prior, p_prior / 4, p_prior / 4, p_prior / 4};

    // Depth-first over the 4^n input patterns.
    std::vector<Frame> frame(c.n + 1);
    std::vector<double> prob(c.n + 1, 1.0);
    auto rec = [&](auto&& self, std::size_t q) -> void {
        if (q == c.n) {
            const auto& f = frame[q];
            const std::size_t cls = FrameModel::class_index(fm.logical_x(f), fm.logical_z(f), k);
            table[fm.syndrome(f) * classes + cls] += prob[q];
            return;
        }
        for (unsigned e = 0; e < 4; ++e) {
            frame[q + 1] = frame[q] ^ fm.input_image(q, e);
            prob[q + 1] = prob[q] * w[e];
            self(self, q + 1);
        }
    };
    rec(rec, 0);

    DecoderTable d;
    d.r_s = r;
    d.k = k;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << r); ++s) {
        const double* row = &table[s * classes];
        double best = 0.0;
        for (std::size_t i = 0; i < classes; ++i) best = std::max(best, row[i]);
        if (best <= 0.0) continue;
        std::size_t pick = 0;
        while (row[pick] < best * (1.0 - 1e-12)) ++pick;
        if (pick != 0) d.entries[s] = class_to_pauli(pick, k);
    }
    return d;
}

}  // namespace dacos
