#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "stabilizer.hpp"

namespace dacos {

struct CodePreset {
    std::string name;
    Tableau tableau;
    std::size_t n = 0, k = 0, d = 0;
    // Scan order and Hadamard frame that reproduce the published circuit for this code.
    StandardFormOptions native;
};

// [[n, n-2, 2]]: X^n and Z^n.
inline CodePreset iceberg_preset(std::size_t n) {
    if (n < 4 || n % 2 != 0) throw std::invalid_argument("iceberg code needs even n >= 4");
    CodePreset p;
    p.name = "iceberg" + std::to_string(n);
    p.tableau = Tableau::from_strings({std::string(n, 'X'), std::string(n, 'Z')});
    p.n = n;
    p.k = n - 2;
    p.d = 2;
    // H on the two end qubits gives the LC-equivalent code X1X2Z3..Zn / Z1Z2X3..Xn,
    // whose interaction graph has maximum degree n-2.
    p.native.hadamard_frame = {0, n - 1};
    p.native.column_order = {1, n - 1, 0};
    for (std::size_t q = 2; q + 1 < n; ++q) p.native.column_order.push_back(q);
    return p;
}

inline CodePreset five_one_three_preset() {
    CodePreset p;
    p.name = "five_one_three";
    p.tableau = Tableau::from_strings({"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"});
    p.n = 5;
    p.k = 1;
    p.d = 3;
    // The published block matrices correspond to the code with H applied on the last qubit.
    p.native.hadamard_frame = {4};
    return p;
}

// CSS code from the [7,4] Hamming check matrix.
inline CodePreset steane_preset() {
    const std::vector<std::string> h = {"1101100", "1011010", "0111001"};
    std::vector<std::string> gens;
    for (const auto& row : h) {
        std::string g;
        for (char c : row) g += (c == '1') ? 'X' : 'I';
        gens.push_back(g);
    }
    for (const auto& row : h) {
        std::string g;
        for (char c : row) g += (c == '1') ? 'Z' : 'I';
        gens.push_back(g);
    }
    CodePreset p;
    p.name = "steane";
    p.tableau = Tableau::from_strings(gens);
    p.n = 7;
    p.k = 1;
    p.d = 3;
    p.native.column_order = {4, 5, 6, 3, 2, 1, 0};
    return p;
}

// Accepts "iceberg4", "iceberg(4)", "five_one_three", "steane".
inline CodePreset preset(const std::string& name) {
    if (name == "five_one_three") return five_one_three_preset();
    if (name == "steane") return steane_preset();
    if (name.rfind("iceberg", 0) == 0) {
        std::string digits = name.substr(7);
        if (digits.size() >= 2 && digits.front() == '(' && digits.back() == ')')
            digits = digits.substr(1, digits.size() - 2);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 4)
            throw std::invalid_argument("unknown preset '" + name + "'");
        return iceberg_preset(std::stoul(digits));
    }
    throw std::invalid_argument("unknown preset '" + name + "'");
}

}  // namespace dacos
