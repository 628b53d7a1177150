#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "compiler.hpp"

namespace dacos {

// Which CZ network an edge came from; matters only for where it may sit relative to H on V_L.
enum class EdgeOrigin : std::uint8_t { Unknown = 0, U1 = 1, U2 = 2 };

struct TaggedEdge {
    std::size_t u = 0, v = 0;
    EdgeOrigin origin = EdgeOrigin::Unknown;
};

// CZ connectivity multigraph. Edge multiplicity is at most 2 for compiled circuits.
struct MultiGraph {
    std::size_t n = 0;
    std::vector<TaggedEdge> edges;

    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
        for (const auto& e : edges) {
            ++a[e.u][e.v];
            ++a[e.v][e.u];
        }
        return a;
    }
    std::vector<std::size_t> degrees() const {
        std::vector<std::size_t> d(n, 0);
        for (const auto& e : edges) {
            ++d[e.u];
            ++d[e.v];
        }
        return d;
    }
    std::size_t max_degree() const {
        const auto d = degrees();
        return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
    }
    // Largest edge multiplicity, optionally ignoring every edge at vertex `skip`.
    std::size_t multiplicity(std::size_t skip = std::numeric_limits<std::size_t>::max()) const {
        const auto a = adjacency();
        int m = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (i != skip && j != skip) m = std::max(m, a[i][j]);
        return static_cast<std::size_t>(m);
    }
    // min{ delta + min_v mu(G - v), floor(3 delta / 2) }
    std::size_t upper_bound() const {
        const std::size_t d = max_degree();
        std::size_t mu = multiplicity();
        for (std::size_t v = 0; v < n; ++v) mu = std::min(mu, multiplicity(v));
        return std::min(d + mu, (3 * d) / 2);
    }
};

inline MultiGraph build_multigraph(const CompiledCircuit& c) {
    MultiGraph g;
    g.n = c.n;
    for (const auto& [a, b] : c.u1_edges) g.edges.push_back({a, b, EdgeOrigin::U1});
    for (const auto& [a, b] : c.u2_edges) g.edges.push_back({a, b, EdgeOrigin::U2});
    return g;
}

struct LayerAssignment {
    std::vector<std::vector<TaggedEdge>> layers;
    bool exact = false;
    std::size_t size() const noexcept { return layers.size(); }
};

struct ScheduleOptions {
    std::size_t exact_limit = 24;
    // Keep U1 edges on V_L and U2 edges on V_L in separate layers (needed for an executable program).
    const CompiledCircuit* hadamard_boundary = nullptr;
};

namespace detail {

// 0 = free, 1 = must precede H on V_L, 2 = must follow it.
inline std::vector<std::uint8_t> edge_sides(const MultiGraph& g, const CompiledCircuit* c) {
    std::vector<std::uint8_t> side(g.edges.size(), 0);
    if (c == nullptr) return side;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto& ed = g.edges[e];
        const bool touches = ed.u >= c->r() || ed.v >= c->r();
        if (!touches) continue;
        if (ed.origin == EdgeOrigin::U1) side[e] = 1;
        else if (ed.origin == EdgeOrigin::U2) side[e] = 2;
    }
    return side;
}

class EdgeColorer {
public:
    EdgeColorer(const MultiGraph& g, std::vector<std::uint8_t> side)
        : g_(g), side_(std::move(side)), order_(g.edges.size()) {
        const auto deg = g.degrees();
        std::iota(order_.begin(), order_.end(), std::size_t{0});
        // Edges at the first max-degree vertex go first so their colours can be fixed to 0..d-1.
        hub_ = deg.empty() ? 0 : static_cast<std::size_t>(std::max_element(deg.begin(), deg.end()) - deg.begin());
        std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
            const auto& ea = g.edges[a];
            const auto& eb = g.edges[b];
            const bool ha = ea.u == hub_ || ea.v == hub_;
            const bool hb = eb.u == hub_ || eb.v == hub_;
            if (ha != hb) return ha;
            return deg[ea.u] + deg[ea.v] > deg[eb.u] + deg[eb.v];
        });
        hub_edges_ = static_cast<std::size_t>(std::count_if(order_.begin(), order_.end(), [&](std::size_t e) {
            return g.edges[e].u == hub_ || g.edges[e].v == hub_;
        }));
    }

    // Depth-first search for a colouring with at most `budget` colours (budget <= 64).
    bool solve(std::size_t budget, std::vector<std::size_t>& colour) {
        budget_ = budget;
        used_.assign(g_.n, 0);
        colour_kind_.assign(budget, 0);
        kind_count_.assign(budget, std::array<std::size_t, 3>{0, 0, 0});
        colour.assign(g_.edges.size(), 0);
        colour_ = &colour;
        return dfs(0, 0);
    }

private:
    bool dfs(std::size_t pos, std::size_t used_colours) {
        if (pos == order_.size()) return true;
        const std::size_t e = order_[pos];
        const auto& ed = g_.edges[e];
        const std::uint64_t blocked = used_[ed.u] | used_[ed.v];
        std::size_t lo = 0, hi = std::min(budget_, used_colours + 1);
        if (pos < hub_edges_) {  // hub edges get colours 0, 1, 2, ...
            lo = pos;
            hi = pos + 1;
        }
        for (std::size_t c = lo; c < hi; ++c) {
            if ((blocked >> c) & 1U) continue;
            const std::uint8_t s = side_[e];
            if (s != 0 && colour_kind_[c] != 0 && colour_kind_[c] != s) continue;
            place(e, c, s);
            if (dfs(pos + 1, std::max(used_colours, c + 1))) return true;
            unplace(e, c, s);
        }
        return false;
    }
    void place(std::size_t e, std::size_t c, std::uint8_t s) {
        const auto& ed = g_.edges[e];
        used_[ed.u] |= std::uint64_t{1} << c;
        used_[ed.v] |= std::uint64_t{1} << c;
        (*colour_)[e] = c;
        if (s != 0) {
            ++kind_count_[c][s];
            colour_kind_[c] = s;
        }
    }
    void unplace(std::size_t e, std::size_t c, std::uint8_t s) {
        const auto& ed = g_.edges[e];
        used_[ed.u] &= ~(std::uint64_t{1} << c);
        used_[ed.v] &= ~(std::uint64_t{1} << c);
        if (s != 0 && --kind_count_[c][s] == 0) colour_kind_[c] = 0;
    }

    const MultiGraph& g_;
    std::vector<std::uint8_t> side_;
    std::vector<std::size_t> order_;
    std::size_t hub_ = 0, hub_edges_ = 0, budget_ = 0;
    std::vector<std::uint64_t> used_;
    std::vector<std::uint8_t> colour_kind_;
    std::vector<std::array<std::size_t, 3>> kind_count_;
    std::vector<std::size_t>* colour_ = nullptr;
};

// Greedy colouring with Kempe-chain recolouring; returns false if `budget` colours do not suffice.
inline bool kempe_colour(const MultiGraph& g, std::size_t budget, std::vector<std::size_t>& colour) {
    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    // at[v][c] = edge index of colour c at v, or kNone.
    std::vector<std::vector<std::size_t>> at(g.n, std::vector<std::size_t>(budget, kNone));
    colour.assign(g.edges.size(), kNone);
    auto other = [&](std::size_t e, std::size_t v) { return g.edges[e].u == v ? g.edges[e].v : g.edges[e].u; };
    auto free_at = [&](std::size_t v, std::size_t c) { return at[v][c] == kNone; };
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const std::size_t u = g.edges[e].u, v = g.edges[e].v;
        std::size_t pick = kNone;
        for (std::size_t c = 0; c < budget && pick == kNone; ++c)
            if (free_at(u, c) && free_at(v, c)) pick = c;
        if (pick == kNone) {
            std::size_t a = kNone, b = kNone;
            for (std::size_t c = 0; c < budget; ++c) {
                if (a == kNone && free_at(u, c)) a = c;
                if (b == kNone && free_at(v, c)) b = c;
            }
            if (a == kNone || b == kNone) return false;
            // Walk the a/b alternating path from v starting with colour a.
            std::vector<std::size_t> path;
            std::size_t cur = v, want = a;
            bool hits_u = false;
            while (at[cur][want] != kNone) {
                const std::size_t pe = at[cur][want];
                path.push_back(pe);
                cur = other(pe, cur);
                if (cur == u) {
                    hits_u = true;
                    break;
                }
                want = (want == a) ? b : a;
                if (path.size() > g.edges.size()) break;
            }
            if (hits_u || path.size() > g.edges.size()) return false;
            for (auto pe : path) {
                at[g.edges[pe].u][colour[pe]] = kNone;
                at[g.edges[pe].v][colour[pe]] = kNone;
            }
            for (auto pe : path) {
                colour[pe] = (colour[pe] == a) ? b : a;
                at[g.edges[pe].u][colour[pe]] = pe;
                at[g.edges[pe].v][colour[pe]] = pe;
            }
            if (!free_at(u, a) || !free_at(v, a)) return false;
            pick = a;
        }
        colour[e] = pick;
        at[u][pick] = e;
        at[v][pick] = e;
    }
    return true;
}

inline LayerAssignment to_layers(const MultiGraph& g, const std::vector<std::size_t>& colour, std::size_t count,
                                 bool exact) {
    LayerAssignment la;
    la.exact = exact;
    la.layers.resize(count);
    for (std::size_t e = 0; e < g.edges.size(); ++e) la.layers[colour[e]].push_back(g.edges[e]);
    la.layers.erase(std::remove_if(la.layers.begin(), la.layers.end(), [](const auto& l) { return l.empty(); }),
                    la.layers.end());
    for (auto& l : la.layers)
        std::sort(l.begin(), l.end(), [](const TaggedEdge& a, const TaggedEdge& b) {
            return std::tie(a.u, a.v, a.origin) < std::tie(b.u, b.v, b.origin);
        });
    return la;
}

}  // namespace detail

// Minimum number of vertex-disjoint CZ layers. Exact search when the edge count is at most
// exact_limit, otherwise a Kempe-chain heuristic (flagged exact = false).
inline LayerAssignment chromatic_index(const MultiGraph& g, const ScheduleOptions& opts = {}) {
    if (g.edges.empty()) return {};
    for (const auto& e : g.edges)
        if (e.u == e.v || e.u >= g.n || e.v >= g.n) throw std::invalid_argument("chromatic_index: bad edge");
    const std::size_t lower = g.max_degree();
    std::vector<std::size_t> colour;
    if (g.edges.size() <= opts.exact_limit) {
        detail::EdgeColorer solver(g, detail::edge_sides(g, opts.hadamard_boundary));
        const std::size_t cap = std::min<std::size_t>(g.edges.size(), 64);
        for (std::size_t b = lower; b <= cap; ++b)
            if (solver.solve(b, colour)) return detail::to_layers(g, colour, b, true);
        throw std::logic_error("chromatic_index: no colouring found");
    }
    for (std::size_t b = lower; b <= 2 * lower; ++b)
        if (detail::kempe_colour(g, b, colour)) return detail::to_layers(g, colour, b, false);
    throw std::logic_error("chromatic_index: heuristic failed");
}

inline LayerAssignment chromatic_index(const MultiGraph& g, std::size_t exact_limit) {
    ScheduleOptions o;
    o.exact_limit = exact_limit;
    return chromatic_index(g, o);
}

// Layer invariants plus delta(G) <= l <= min{delta + min_v mu(G - v), floor(3 delta / 2)}.
inline bool verify_layers(const MultiGraph& g, const LayerAssignment& la) {
    std::vector<std::vector<int>> want = g.adjacency(), got(g.n, std::vector<int>(g.n, 0));
    for (const auto& layer : la.layers) {
        std::vector<std::uint8_t> used(g.n, 0);
        for (const auto& e : layer) {
            if (e.u >= g.n || e.v >= g.n || e.u == e.v || used[e.u] || used[e.v]) return false;
            used[e.u] = used[e.v] = 1;
            ++got[e.u][e.v];
            ++got[e.v][e.u];
        }
    }
    if (got != want) return false;
    if (g.edges.empty()) return la.size() == 0;
    return la.size() >= g.max_degree() && la.size() <= g.upper_bound();
}

// Executable program: layers before H on V_L, H on V_L, layers after, H on V_S, measure V_S.
// A layer holding both U1 and U2 edges on V_L is split in two.
inline GateProgram build_program(const CompiledCircuit& c, const LayerAssignment& la) {
    std::vector<CZLayer> pre, post;
    for (const auto& layer : la.layers) {
        CZLayer before, after;
        bool has_after = false;
        for (const auto& e : layer) {
            const bool touches = e.u >= c.r() || e.v >= c.r();
            if (touches && e.origin == EdgeOrigin::Unknown)
                throw std::invalid_argument("build_program: edge origin needed for edges on V_L");
            if (touches && e.origin == EdgeOrigin::U2) {
                after.pairs.emplace_back(e.u, e.v);
                has_after = true;
            } else {
                before.pairs.emplace_back(e.u, e.v);
            }
        }
        const bool has_pre_only = std::any_of(layer.begin(), layer.end(), [&](const TaggedEdge& e) {
            return (e.u >= c.r() || e.v >= c.r()) && e.origin == EdgeOrigin::U1;
        });
        if (!has_after) {
            pre.push_back(before);
        } else if (!has_pre_only) {
            // U2-side layer: free edges travel with it.
            for (auto& p : before.pairs) after.pairs.push_back(p);
            post.push_back(after);
        } else {
            pre.push_back(before);
            post.push_back(after);
        }
    }
    GateProgram g;
    g.n = c.n;
    for (auto& l : pre) g.instructions.emplace_back(std::move(l));
    if (!c.v_l.empty()) g.instructions.emplace_back(GlobalH{c.v_l});
    for (auto& l : post) g.instructions.emplace_back(std::move(l));
    if (!c.v_s.empty()) {
        g.instructions.emplace_back(GlobalH{c.v_s});
        g.instructions.emplace_back(MeasureZ{c.v_s});
    }
    return g;
}

// Minimal executable program for a compiled circuit.
inline GateProgram schedule_program(const CompiledCircuit& c, std::size_t exact_limit = 24) {
    ScheduleOptions o;
    o.exact_limit = exact_limit;
    o.hadamard_boundary = &c;
    return build_program(c, chromatic_index(build_multigraph(c), o));
}

}  // namespace dacos
