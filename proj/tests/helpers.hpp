#pragma once

#include "submodgap/graph.hpp"
#include "submodgap/instances.hpp"
#include "submodgap/setfn.hpp"
#include "submodgap/solvers.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

namespace testutil {

using namespace submodgap;

using Rng = std::mt19937_64;

inline int rand_int(Rng& rng, int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline Rat rand_rat(Rng& rng, int max_num = 40, int max_den = 12) {
    return rat(rand_int(rng, 1, max_num), rand_int(rng, 1, max_den));
}

// Random connected graph with exact rational lengths: a random spanning tree
// plus a few extra edges.
inline WeightedGraph rand_graph(Rng& rng, int n, int extra_edges) {
    WeightedGraph g;
    g.vertex_count = n;
    for (int v = 1; v < n; ++v)
        g.edges.push_back({rand_int(rng, 0, v - 1), v, rand_rat(rng)});
    for (int e = 0; e < extra_edges; ++e) {
        int u = rand_int(rng, 0, n - 1), v = rand_int(rng, 0, n - 1);
        if (u != v) g.edges.push_back({std::min(u, v), std::max(u, v), rand_rat(rng)});
    }
    return g;
}

// Metric with all distances in [1, 2): always satisfies the triangle inequality.
inline Metric rand_uniform_metric(Rng& rng, int n) {
    std::vector<Rat> d(static_cast<size_t>(n) * n, Rat(0));
    Metric m(n, std::move(d));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            m.set(i, j, Rat(1) + rat(rand_int(rng, 0, 63), 64));
    return m;
}

// Independent Steiner oracle: minimum over all vertex supersets of the
// terminals of the MST in the metric closure. Valid for <= 8 points.
inline Rat steiner_brute_force(const Metric& metric, std::vector<int> terminals) {
    std::sort(terminals.begin(), terminals.end());
    terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
    if (terminals.size() <= 1) return Rat(0);
    const int n = metric.size();
    std::uint32_t term_mask = 0;
    for (int t : terminals) term_mask |= 1u << t;
    bool have = false;
    Rat best;
    for (std::uint32_t sup = 0; sup < (1u << n); ++sup) {
        if ((sup & term_mask) != term_mask) continue;
        std::vector<int> pts;
        for (int v = 0; v < n; ++v)
            if (sup & (1u << v)) pts.push_back(v);
        WeightedGraph complete;
        complete.vertex_count = static_cast<int>(pts.size());
        for (size_t a = 0; a < pts.size(); ++a)
            for (size_t b = a + 1; b < pts.size(); ++b)
                complete.edges.push_back({static_cast<int>(a), static_cast<int>(b),
                                          metric.at(pts[a], pts[b])});
        Rat cost = mst_cost(complete);
        if (!have || cost < best) {
            have = true;
            best = cost;
        }
    }
    return best;
}

// Exhaustive maximum matching by recursion over left vertices.
inline int matching_brute_force(const BipGraph& g) {
    std::vector<char> used(g.n_right, 0);
    std::function<int(int)> go = [&](int l) -> int {
        if (l == g.n_left) return 0;
        int best = go(l + 1);
        for (int r : g.adj[l])
            if (!used[r]) {
                used[r] = 1;
                best = std::max(best, 1 + go(l + 1));
                used[r] = 0;
            }
        return best;
    };
    return go(0);
}

// "Missed by some maximum matching" via the deletion characterization.
inline std::vector<int> even_brute_force(const BipGraph& g) {
    const int nu = max_matching(g);
    std::vector<int> even;
    for (int l = 0; l < g.n_left; ++l) {
        BipGraph h = g;
        h.adj[l].clear();  // isolating = deleting for matching purposes
        if (max_matching(h) == nu) even.push_back(l);
    }
    for (int r = 0; r < g.n_right; ++r) {
        BipGraph h = g;
        for (auto& a : h.adj) a.erase(std::remove(a.begin(), a.end(), r), a.end());
        if (max_matching(h) == nu) even.push_back(g.n_left + r);
    }
    return even;
}

inline BipGraph rand_bipgraph(Rng& rng, int max_left, int max_right) {
    BipGraph g;
    g.n_left = rand_int(rng, 1, max_left);
    g.n_right = rand_int(rng, 1, max_right);
    g.adj.resize(g.n_left);
    for (int l = 0; l < g.n_left; ++l)
        for (int r = 0; r < g.n_right; ++r)
            if (rng() % 100 < 40) g.adj[l].push_back(r);
    return g;
}

// Random weighted coverage function: submodular, monotone, f(empty) = 0.
inline SetFunction rand_coverage(Rng& rng, int n) {
    const int universe = rand_int(rng, 1, 6);
    std::vector<Rat> weight(universe);
    std::vector<std::uint32_t> covers(n);
    for (int e = 0; e < universe; ++e) weight[e] = rand_rat(rng, 20, 8);
    for (int i = 0; i < n; ++i) covers[i] = rng() % (1u << universe);
    std::vector<int> labels(n);
    std::iota(labels.begin(), labels.end(), 0);
    return tabulate(
        [&](std::uint32_t mask) {
            std::uint32_t covered = 0;
            for (int i = 0; i < n; ++i)
                if (mask & (1u << i)) covered |= covers[i];
            Rat total(0);
            for (int e = 0; e < universe; ++e)
                if (covered & (1u << e)) total += weight[e];
            return total;
        },
        labels);
}

// Random monotone function with f(empty) = 0 (rarely submodular for n >= 3):
// each value is the max over immediate subsets plus a random increment.
inline SetFunction rand_monotone(Rng& rng, int n) {
    SetFunction f;
    f.n = n;
    f.labels.resize(n);
    std::iota(f.labels.begin(), f.labels.end(), 0);
    f.values.assign(size_t{1} << n, Rat(0));
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        Rat base(0);
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) base = std::max(base, f.values[mask ^ (1u << i)]);
        f.values[mask] = base + rat(rand_int(rng, 0, 12), 4);
    }
    return f;
}

// Exhaustive facility location oracle: every nonempty facility subset with
// nearest-facility assignment over the exact tree metric.
inline Rat ufl_brute_force(const HstInstance& inst, const std::vector<int>& clients) {
    if (clients.empty()) return Rat(0);
    Metric m = metric_closure(inst.tree);
    const int f = static_cast<int>(inst.facilities.size());
    bool have = false;
    Rat best;
    for (std::uint32_t open = 1; open < (1u << f); ++open) {
        Rat cost(0);
        int opened = 0;
        for (int i = 0; i < f; ++i)
            if (open & (1u << i)) ++opened;
        cost = Rat(opened) * inst.facility_cost;
        for (int w : clients) {
            bool first = true;
            Rat nearest;
            for (int i = 0; i < f; ++i)
                if (open & (1u << i)) {
                    Rat d = m.at(w, inst.facilities[i]);
                    if (first || d < nearest) {
                        first = false;
                        nearest = d;
                    }
                }
            cost += inst.clients_of[w] * nearest;
        }
        if (!have || cost < best) {
            have = true;
            best = cost;
        }
    }
    return best;
}

} // namespace testutil
