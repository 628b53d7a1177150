#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "compiler.hpp"
#include "decoder.hpp"
#include "pauli_sim.hpp"
#include "rates.hpp"
#include "scheduler.hpp"

namespace dacos {

using ordered_json = nlohmann::ordered_json;

namespace detail {
inline ordered_json edge_list(const std::vector<Edge>& edges) {
    ordered_json a = ordered_json::array();
    for (const auto& [i, j] : edges) a.push_back({i, j});
    return a;
}

// Shortest round-trip decimal form, so outputs are byte-stable.
inline std::string num(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}
}  // namespace detail

// {n, k, v_s, v_l, u1, u2, h_blocks, perm}; h_blocks lists Hadamard target sets in time order.
inline ordered_json circuit_json(const CompiledCircuit& c) {
    ordered_json j;
    j["n"] = c.n;
    j["k"] = c.k;
    j["v_s"] = c.v_s;
    j["v_l"] = c.v_l;
    j["u1"] = detail::edge_list(c.u1_edges);
    j["u2"] = detail::edge_list(c.u2_edges);
    j["h_blocks"] = ordered_json::array({c.v_l, c.v_s});
    j["perm"] = c.perm;
    return j;
}

inline ordered_json layers_json(const LayerAssignment& la) {
    ordered_json layers = ordered_json::array();
    for (const auto& l : la.layers) {
        ordered_json a = ordered_json::array();
        for (const auto& e : l) a.push_back({e.u, e.v});
        layers.push_back(a);
    }
    ordered_json j;
    j["layers"] = layers;
    j["exact"] = la.exact;
    return j;
}

inline ordered_json decoder_json(const DecoderTable& d) {
    ordered_json entries = ordered_json::array();
    for (const auto& [s, c] : d.entries) {
        ordered_json e;
        e["s"] = d.syndrome_string(s);
        e["c"] = c.to_string();
        entries.push_back(e);
    }
    ordered_json j;
    j["syndrome_bits"] = d.r_s;
    j["entries"] = entries;
    return j;
}

inline DecoderTable decoder_from_json(const ordered_json& j, std::size_t k) {
    DecoderTable d;
    d.r_s = j.at("syndrome_bits").get<std::size_t>();
    d.k = k;
    for (const auto& e : j.at("entries")) d.set(e.at("s").get<std::string>(), e.at("c").get<std::string>());
    return d;
}

// Undirected multigraph; parallel edges are listed once per copy and labelled by origin.
inline std::string graph_dot(const MultiGraph& g, const CompiledCircuit* c = nullptr) {
    std::ostringstream os;
    os << "graph G {\n";
    for (std::size_t v = 0; v < g.n; ++v) {
        os << "  " << v;
        if (c != nullptr) os << " [label=\"" << v << (v < c->r() ? " S" : " L") << "\"]";
        os << ";\n";
    }
    for (const auto& e : g.edges) {
        os << "  " << e.u << " -- " << e.v;
        if (e.origin == EdgeOrigin::U1) os << " [label=\"U1\"]";
        else if (e.origin == EdgeOrigin::U2) os << " [label=\"U2\"]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

inline std::string sim_csv_header(std::size_t k) {
    std::ostringstream os;
    os << "p,q,shots,p_success,fidelity_joint";
    for (std::size_t i = 0; i < k; ++i) os << ",fidelity_reduced_" << i;
    for (std::size_t i = 0; i < k; ++i) os << ",xx_" << i << ",yy_" << i << ",zz_" << i;
    os << ",stderr_p_success,stderr_fidelity_joint";
    for (std::size_t i = 0; i < k; ++i) os << ",stderr_fidelity_reduced_" << i;
    for (std::size_t i = 0; i < k; ++i) os << ",stderr_xx_" << i << ",stderr_yy_" << i << ",stderr_zz_" << i;
    os << ",mode";
    return os.str();
}

inline std::string sim_csv_row(double p, double q, const SimResult& r) {
    using detail::num;
    std::ostringstream os;
    os << num(p) << ',' << num(q) << ',' << r.shots << ',' << num(r.p_success) << ',' << num(r.fidelity_joint);
    for (double f : r.fidelity_reduced) os << ',' << num(f);
    for (const auto& c : r.correlators) os << ',' << num(c[0]) << ',' << num(c[1]) << ',' << num(c[2]);
    os << ',' << num(r.stderr_p_success) << ',' << num(r.stderr_fidelity_joint);
    for (std::size_t i = 0; i < r.k; ++i)
        os << ',' << num(r.stderr_fidelity_reduced.empty() ? 0.0 : r.stderr_fidelity_reduced[i]);
    for (std::size_t i = 0; i < r.k; ++i) {
        for (std::size_t a = 0; a < 3; ++a)
            os << ',' << num(r.stderr_correlators.empty() ? 0.0 : r.stderr_correlators[i][a]);
    }
    os << ',' << (r.exact ? "exact" : "mc");
    return os.str();
}

inline std::string rates_csv(const std::vector<RateRow>& rows) {
    using detail::num;
    std::ostringstream os;
    os << "p,D_H,Rains,D_R,D_M,D_LS_4,D_LS_6,D_Sh_best_4,D_best_4,r_R,r_M,r_Sh_best_4,r_best_4,best_4_is_LS\n";
    for (const auto& r : rows) {
        os << num(r.p) << ',' << num(r.d_h) << ',' << num(r.rains) << ',' << num(r.d_r.value) << ','
           << num(r.d_m.value) << ',' << num(r.d_ls4) << ',' << num(r.d_ls6) << ',' << num(r.d_sh_best4.value) << ','
           << num(r.d_best4.value) << ',' << r.d_r.rounds << ',' << r.d_m.rounds << ',' << r.d_sh_best4.rounds << ','
           << r.d_best4.rounds << ',' << (r.d_best4.leung_shor ? 1 : 0) << '\n';
    }
    return os.str();
}

struct Series {
    std::string label;
    std::string colour;
    std::vector<double> y;
};

// Static line chart with axes, ticks and a legend.
inline std::string line_chart_svg(const std::vector<double>& x, const std::vector<Series>& series,
                                  const std::string& x_label, const std::string& y_label, bool log_y = false) {
    const double W = 640, H = 420, L = 70, R = 170, T = 20, B = 50;
    const double pw = W - L - R, ph = H - T - B;
    double xmin = x.empty() ? 0 : *std::min_element(x.begin(), x.end());
    double xmax = x.empty() ? 1 : *std::max_element(x.begin(), x.end());
    if (xmax <= xmin) xmax = xmin + 1;
    double ymin = log_y ? 1e-4 : 0.0, ymax = 0.0;
    for (const auto& s : series)
        for (double v : s.y) ymax = std::max(ymax, v);
    if (ymax <= ymin) ymax = ymin + 1;
    auto ty = [&](double v) {
        if (log_y) {
            v = std::max(v, ymin);
            return T + ph * (1 - (std::log10(v) - std::log10(ymin)) / (std::log10(ymax) - std::log10(ymin)));
        }
        return T + ph * (1 - (v - ymin) / (ymax - ymin));
    };
    auto tx = [&](double v) { return L + pw * (v - xmin) / (xmax - xmin); };

    std::ostringstream os;
    os << std::fixed << std::setprecision(2);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    os << "<line x1=\"" << L << "\" y1=\"" << T + ph << "\" x2=\"" << L + pw << "\" y2=\"" << T + ph << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << T + ph << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 5.0;
        os << "<line x1=\"" << tx(xv) << "\" y1=\"" << T + ph << "\" x2=\"" << tx(xv) << "\" y2=\"" << T + ph + 5 << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << tx(xv) << "\" y=\"" << T + ph + 18 << "\" text-anchor=\"middle\">" << std::setprecision(3)
           << xv << std::setprecision(2) << "</text>\n";
        const double yv = log_y ? std::pow(10.0, std::log10(ymin) + (std::log10(ymax) - std::log10(ymin)) * i / 5.0)
                                : ymin + (ymax - ymin) * i / 5.0;
        os << "<line x1=\"" << L - 5 << "\" y1=\"" << ty(yv) << "\" x2=\"" << L << "\" y2=\"" << ty(yv) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << L - 8 << "\" y=\"" << ty(yv) + 4 << "\" text-anchor=\"end\">" << std::setprecision(3) << yv
           << std::setprecision(2) << "</text>\n";
    }
    os << "<text x=\"" << L + pw / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\">" << x_label << "</text>\n";
    os << "<text x=\"15\" y=\"" << T + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 15 " << T + ph / 2
       << ")\">" << y_label << "</text>\n";
    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        os << "<polyline fill=\"none\" stroke=\"" << s.colour << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < x.size() && i < s.y.size(); ++i) os << tx(x[i]) << ',' << ty(s.y[i]) << ' ';
        os << "\"/>\n";
        const double ly = T + 15 + 18.0 * static_cast<double>(si);
        os << "<line x1=\"" << L + pw + 15 << "\" y1=\"" << ly << "\" x2=\"" << L + pw + 40 << "\" y2=\"" << ly
           << "\" stroke=\"" << s.colour << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << L + pw + 45 << "\" y=\"" << ly + 4 << "\">" << s.label << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

inline std::string rates_svg(const std::vector<RateRow>& rows) {
    std::vector<double> x;
    std::vector<Series> s{{"D_H", "#1f77b4", {}},      {"Rains", "#7f7f7f", {}},   {"D_R", "#2ca02c", {}},
                          {"D_M", "#9467bd", {}},      {"D_LS,4", "#ff7f0e", {}},  {"D_LS,6", "#8c564b", {}},
                          {"D_[[4]]", "#d62728", {}}};
    for (const auto& r : rows) {
        x.push_back(r.p);
        s[0].y.push_back(r.d_h);
        s[1].y.push_back(r.rains);
        s[2].y.push_back(r.d_r.value);
        s[3].y.push_back(r.d_m.value);
        s[4].y.push_back(r.d_ls4);
        s[5].y.push_back(r.d_ls6);
        s[6].y.push_back(r.d_best4.value);
    }
    return line_chart_svg(x, s, "p", "distillation rate", true);
}

// Reduced output fidelity for each protocol over the grid.
inline std::string fidelity_svg(const std::vector<double>& grid) {
    std::vector<Series> s{{"input", "#7f7f7f", {}},
                          {"recurrence", "#2ca02c", {}},
                          {"macchiavello2", "#9467bd", {}},
                          {"iceberg4", "#d62728", {}},
                          {"iceberg6", "#1f77b4", {}}};
    for (double p : grid)
        for (auto& ser : s) ser.y.push_back(f_out_red(ser.label, p));
    return line_chart_svg(grid, s, "p", "reduced output fidelity");
}

}  // namespace dacos
