#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "ferrers/diagram.hpp"

namespace ferrers {

enum class Orientation { FirstToSecond, SecondToFirst };

// Orientation of the edge between diagrams that differ in exactly one point.
// With D the larger and D' the smaller: D' -> D iff nu_min agrees, else D -> D'.
inline Orientation reduction_direction(const FerrersDiagram& d1, const FerrersDiagram& d2, int d) {
    require(d >= 1, "d must be positive");
    bool first_larger = d1.size() == d2.size() + 1 && d1.contains(d2);
    bool second_larger = d2.size() == d1.size() + 1 && d2.contains(d1);
    require(first_larger || second_larger, "diagrams must differ in exactly one point");
    const auto& big = first_larger ? d1 : d2;
    const auto& small = first_larger ? d2 : d1;
    bool small_to_big = nu_min_value(small, d) == nu_min_value(big, d);
    bool first_is_source = small_to_big ? !first_larger : first_larger;
    return first_is_source ? Orientation::FirstToSecond : Orientation::SecondToFirst;
}

struct YoungDigraph {
    int n = 0;
    int d = 0;
    bool restricted = false;
    std::vector<FerrersDiagram> vertices;
    std::vector<int> nu_min;
    std::vector<std::vector<int>> out;
    std::vector<std::vector<int>> in;
    std::unordered_map<std::uint64_t, int> index;

    int find(const FerrersDiagram& D) const {
        if (D.order() > n) return -1;
        auto it = index.find(D.key());
        return it == index.end() ? -1 : it->second;
    }

    std::size_t edge_count() const {
        std::size_t m = 0;
        for (const auto& o : out) m += o.size();
        return m;
    }
};

inline constexpr int kMaxUnrestrictedOrder = 14;
inline constexpr int kMaxOrder = 15;

// Diagrams inside [n]x[n] that contain the staircase T_d, in colex order.
inline std::vector<FerrersDiagram> diagrams_containing_triangle(int n, int d) {
    require(n >= 0 && d >= 0, "order and d must be non-negative");
    std::vector<FerrersDiagram> out;
    if (d > n) return out;
    std::vector<int> cols(n, 0);
    auto rec = [&](auto&& self, int pos, int cap) -> void {
        if (pos == n) {
            out.emplace_back(cols);
            return;
        }
        int lo = std::max(0, d - pos);
        for (int h = lo; h <= cap; ++h) {
            cols[pos] = h;
            self(self, pos + 1, h);
        }
        cols[pos] = 0;
    };
    rec(rec, 0, n);
    std::sort(out.begin(), out.end(), colex_less);
    return out;
}

// Order-n slice of the d-Young digraph, optionally restricted to diagrams containing T_d.
inline YoungDigraph build_digraph(int n, int d, bool restricted, bool force = false) {
    require(n >= 0 && d >= 1, "need n >= 0 and d >= 1");
    if (n > kMaxOrder) throw ResourceError("order above " + std::to_string(kMaxOrder) + " is not supported");
    if (!restricted && n > kMaxUnrestrictedOrder && !force)
        throw ResourceError("unrestricted digraph of order " + std::to_string(n) + " exceeds the memory guard; lower n");
    YoungDigraph g;
    g.n = n;
    g.d = d;
    g.restricted = restricted;
    g.vertices = restricted ? diagrams_containing_triangle(n, d) : diagrams_of_order(n);
    std::size_t N = g.vertices.size();
    g.nu_min.resize(N);
    g.out.assign(N, {});
    g.in.assign(N, {});
    g.index.reserve(N * 2);
    for (std::size_t v = 0; v < N; ++v) {
        g.index.emplace(g.vertices[v].key(), static_cast<int>(v));
        g.nu_min[v] = nu_min_value(g.vertices[v], d);
    }
    for (std::size_t v = 0; v < N; ++v) {
        for (Point p : addible_points(g.vertices[v])) {
            if (p.row > n || p.col > n) continue;
            int w = g.find(add_point(g.vertices[v], p));
            if (w < 0) continue;
            int vi = static_cast<int>(v);
            if (g.nu_min[v] == g.nu_min[w]) {
                g.out[v].push_back(w);
                g.in[w].push_back(vi);
            } else {
                g.out[w].push_back(vi);
                g.in[v].push_back(w);
            }
        }
    }
    for (auto& o : g.out) std::sort(o.begin(), o.end());
    for (auto& i : g.in) std::sort(i.begin(), i.end());
    return g;
}

inline std::vector<int> source_indices(const YoungDigraph& g) {
    std::vector<int> s;
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
        if (g.in[v].empty()) s.push_back(static_cast<int>(v));
    return s;
}

inline std::vector<int> sink_indices(const YoungDigraph& g) {
    std::vector<int> s;
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
        if (g.out[v].empty()) s.push_back(static_cast<int>(v));
    return s;
}

inline std::vector<FerrersDiagram> sources(const YoungDigraph& g) {
    std::vector<FerrersDiagram> s;
    for (int v : source_indices(g)) s.push_back(g.vertices[v]);
    return s;
}

inline std::vector<FerrersDiagram> sinks(const YoungDigraph& g) {
    std::vector<FerrersDiagram> s;
    for (int v : sink_indices(g)) s.push_back(g.vertices[v]);
    return s;
}

// Kahn's algorithm; returns an empty vector when the graph has a cycle.
inline std::vector<int> topological_order(const YoungDigraph& g) {
    std::vector<int> indeg(g.vertices.size());
    for (std::size_t v = 0; v < g.vertices.size(); ++v) indeg[v] = static_cast<int>(g.in[v].size());
    std::deque<int> queue;
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
        if (indeg[v] == 0) queue.push_back(static_cast<int>(v));
    std::vector<int> order;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        order.push_back(v);
        for (int w : g.out[v])
            if (--indeg[w] == 0) queue.push_back(w);
    }
    if (order.size() != g.vertices.size()) return {};
    return order;
}

inline bool is_acyclic(const YoungDigraph& g) { return topological_order(g).size() == g.vertices.size(); }

// Shortest directed path from a source to target, found by reverse BFS in index order.
inline std::vector<FerrersDiagram> path_from_irreducible(const YoungDigraph& g, const FerrersDiagram& target) {
    int t = g.find(target);
    require(t >= 0, "target " + target.to_string() + " is not a vertex of the digraph");
    std::vector<int> next(g.vertices.size(), -2);
    std::deque<int> queue{t};
    next[t] = -1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        if (g.in[v].empty()) {
            std::vector<FerrersDiagram> path;
            for (int u = v; u != -1; u = next[u]) path.push_back(g.vertices[u]);
            return path;
        }
        for (int u : g.in[v])
            if (next[u] == -2) {
                next[u] = v;
                queue.push_back(u);
            }
    }
    throw InvariantError("no source reaches " + target.to_string() + "; the digraph has a cycle");
}

// Shortest directed path from one vertex to another by forward BFS in index order.
inline std::vector<FerrersDiagram> path_between(const YoungDigraph& g, const FerrersDiagram& from,
                                                const FerrersDiagram& to) {
    int s = g.find(from), t = g.find(to);
    require(s >= 0, "start " + from.to_string() + " is not a vertex of the digraph");
    require(t >= 0, "target " + to.to_string() + " is not a vertex of the digraph");
    std::vector<int> prev(g.vertices.size(), -2);
    std::deque<int> queue{s};
    prev[s] = -1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        if (v == t) {
            std::vector<FerrersDiagram> path;
            for (int u = v; u != -1; u = prev[u]) path.push_back(g.vertices[u]);
            std::reverse(path.begin(), path.end());
            return path;
        }
        for (int w : g.out[v])
            if (prev[w] == -2) {
                prev[w] = v;
                queue.push_back(w);
            }
    }
    auto label = [](const FerrersDiagram& D) { return D.empty() ? std::string("-") : D.to_string(); };
    throw DomainError("no directed path from " + label(from) + " to " + label(to));
}

// Walks along out-edges from start until a sink, choosing each step from a seeded mt19937_64
// (raw output modulo the out-degree, so the walks are identical on every platform).
inline std::vector<std::vector<FerrersDiagram>> deterministic_walks(const YoungDigraph& g, const FerrersDiagram& start,
                                                                    int count, std::uint64_t seed) {
    int s = g.find(start);
    require(s >= 0, "start " + start.to_string() + " is not a vertex of the digraph");
    std::mt19937_64 rng(seed);
    std::vector<std::vector<FerrersDiagram>> walks;
    for (int w = 0; w < count; ++w) {
        std::vector<FerrersDiagram> path{g.vertices[s]};
        for (int v = s; !g.out[v].empty();) {
            v = g.out[v][rng() % g.out[v].size()];
            path.push_back(g.vertices[v]);
        }
        walks.push_back(std::move(path));
    }
    return walks;
}

inline long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

struct CountReport {
    long long N = 0;
    long long M = 0;
    long long enumerated_N = 0;
    long long enumerated_M = 0;
    bool match = false;
};

// Vertex and edge counts of the order-n slice against C(2n,n) and n*C(2n-1,n).
inline CountReport verify_counts(int n, bool force = false) {
    require(n >= 1, "need n >= 1");
    auto g = build_digraph(n, 1, false, force);
    CountReport r;
    r.N = binomial(2 * n, n);
    r.M = n * binomial(2 * n - 1, n);
    r.enumerated_N = static_cast<long long>(g.vertices.size());
    r.enumerated_M = static_cast<long long>(g.edge_count());
    r.match = r.N == r.enumerated_N && r.M == r.enumerated_M;
    return r;
}

inline std::string diagram_label(const FerrersDiagram& D) { return D.empty() ? std::string("-") : D.to_string(); }

// DOT text with stable node ids v{index}; sources and sinks get fill colors.
inline std::string to_dot(const YoungDigraph& g) {
    std::ostringstream os;
    os << "digraph young_n" << g.n << "_d" << g.d << " {\n";
    os << "  node [shape=box, style=filled, fillcolor=white];\n";
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        os << "  v" << v << " [label=\"" << diagram_label(g.vertices[v]) << "\"";
        if (g.in[v].empty())
            os << ", fillcolor=lightblue";
        else if (g.out[v].empty())
            os << ", fillcolor=lightgray";
        os << "];\n";
    }
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
        for (int w : g.out[v]) os << "  v" << v << " -> v" << w << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace ferrers
