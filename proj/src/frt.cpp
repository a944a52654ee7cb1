#include "submodgap/frt.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace submodgap {

int FrtTree::lca(int a, int b) const {
    while (a != b) {
        if (level_of[a] < level_of[b])
            a = parent[a];
        else if (level_of[b] < level_of[a])
            b = parent[b];
        else {
            a = parent[a];
            b = parent[b];
        }
    }
    return a;
}

Rat FrtTree::distance(int point_i, int point_j) const {
    if (point_i == point_j) return Rat(0);
    int a = leaf_of_point[point_i], b = leaf_of_point[point_j];
    int meet = lca(a, b);
    Rat total(0);
    for (int x : {a, b})
        while (x != meet) {
            total += pow2(level_of[x] + 1) * unit;
            x = parent[x];
        }
    return total;
}

Rat FrtTree::sandwich_bound(int point_i, int point_j) const {
    int meet = lca(leaf_of_point[point_i], leaf_of_point[point_j]);
    return pow2(level_of[meet] + 1) * unit;
}

FrtTree sample_frt_tree(const Metric& metric, std::uint64_t seed) {
    const int n = metric.size();
    if (n < 2) throw PreconditionError("frt: need at least two points");
    Rat min_d = metric.at(0, 1), max_d = metric.at(0, 1);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const Rat& d = metric.at(i, j);
            if (!(d > 0)) throw PreconditionError("frt: degenerate metric");
            min_d = std::min(min_d, d);
            max_d = std::max(max_d, d);
        }

    // Scale so the minimum distance exceeds 1, with a power of two.
    Rat scale(1);
    while (scale * min_d <= 1) scale *= 2;
    // Smallest delta with 2^{delta-2} >= scaled diameter; then the top-level
    // ball of radius beta 2^{delta-2} covers everything for any beta >= 1.
    int top = 0;
    while (pow2(top) < scale * max_d) ++top;
    const int delta = top + 2;

    std::mt19937_64 rng(seed);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    for (int i = n - 1; i > 0; --i)
        std::swap(order[i], order[rng() % static_cast<std::uint64_t>(i + 1)]);
    // beta = 2^u with u uniform in [0,1): inverse CDF of the density
    // 1/(x ln 2) on [1,2), as a dyadic rational with 32 fractional bits.
    const double u = static_cast<double>(rng() >> 11) * 0x1p-53;
    const double b = std::exp2(u);
    long scaled = std::lround(std::floor(b * 4294967296.0));
    scaled = std::clamp(scaled, 4294967296L, 8589934591L);
    const Rat beta = rat(scaled, 4294967296L);

    FrtTree t;
    t.seed = seed;
    t.unit = Rat(1) / (Rat(2) * scale);
    t.leaf_of_point.assign(n, -1);

    // Hierarchical ball cutting: clusters refine level by level; every point
    // joins the first point in the permutation whose radius ball covers it.
    std::vector<std::vector<int>> clusters = {std::vector<int>(order.begin(), order.end())};
    std::vector<int> cluster_node = {0};
    t.level_of.push_back(delta);
    t.parent.push_back(-1);
    t.point_of_leaf.push_back(-1);

    std::vector<int> label(n);
    for (int level = delta - 1; level >= 0; --level) {
        const Rat radius = beta * pow2(level - 2) / scale;  // in original units
        std::vector<std::vector<int>> next_clusters;
        std::vector<int> next_nodes;
        for (size_t ci = 0; ci < clusters.size(); ++ci) {
            for (int p : clusters[ci]) {
                for (int rank = 0; rank < n; ++rank)
                    if (metric.at(order[rank], p) <= radius) {
                        label[p] = rank;
                        break;
                    }
            }
            // Children in permutation-rank order of their center.
            std::vector<int> ranks;
            for (int p : clusters[ci])
                if (std::find(ranks.begin(), ranks.end(), label[p]) == ranks.end())
                    ranks.push_back(label[p]);
            std::sort(ranks.begin(), ranks.end());
            for (int rank : ranks) {
                std::vector<int> members;
                for (int p : clusters[ci])
                    if (label[p] == rank) members.push_back(p);
                int node = static_cast<int>(t.level_of.size());
                t.level_of.push_back(level);
                t.parent.push_back(cluster_node[ci]);
                t.point_of_leaf.push_back(level == 0 ? members.front() : -1);
                if (level == 0) t.leaf_of_point[members.front()] = node;
                next_nodes.push_back(node);
                next_clusters.push_back(std::move(members));
            }
        }
        clusters = std::move(next_clusters);
        cluster_node = std::move(next_nodes);
    }
    for (size_t ci = 0; ci < clusters.size(); ++ci)
        if (clusters[ci].size() != 1)
            throw InvariantError("frt: level-0 clusters must be singletons");

    t.tree.vertex_count = static_cast<int>(t.level_of.size());
    for (int v = 1; v < t.tree.vertex_count; ++v)
        t.tree.edges.push_back({t.parent[v], v, pow2(t.level_of[v] + 1) * t.unit});
    return t;
}

Rat tree_steiner_cost(const FrtTree& t, const std::vector<int>& points) {
    const int nodes = t.tree.vertex_count;
    std::vector<int> below(nodes, 0);
    int total = 0;
    std::vector<char> used(t.leaf_of_point.size(), 0);
    for (int p : points) {
        if (p < 0 || p >= static_cast<int>(t.leaf_of_point.size()))
            throw PreconditionError("tree steiner: point out of range");
        if (used[p]) continue;
        used[p] = 1;
        below[t.leaf_of_point[p]] = 1;
        ++total;
    }
    if (total <= 1) return Rat(0);
    // Node ids grow top-down, so a reverse sweep accumulates leaf counts.
    for (int v = nodes - 1; v >= 1; --v) below[t.parent[v]] += below[v];
    Rat cost(0);
    for (int v = 1; v < nodes; ++v)
        if (below[v] > 0 && below[v] < total) cost += pow2(t.level_of[v] + 1) * t.unit;
    return cost;
}

ProxyFunction proxy_function(const Metric& metric, const std::vector<int>& ground,
                             int num_samples, std::uint64_t seed,
                             std::optional<int> root) {
    if (ground.size() > 16) throw SizeLimitError("proxy ground set larger than 16");
    if (num_samples < 1) throw PreconditionError("proxy needs at least one sample");
    for (int p : ground)
        if (p < 0 || p >= metric.size()) throw PreconditionError("proxy: point out of range");
    if (root) {
        if (*root < 0 || *root >= metric.size())
            throw PreconditionError("proxy: root out of range");
        for (int p : ground)
            if (p == *root) throw PreconditionError("proxy: root may not be a ground element");
    }

    ProxyFunction proxy;
    proxy.seed = seed;
    proxy.root = root;
    const int g = static_cast<int>(ground.size());
    const std::uint32_t count = 1u << g;
    std::vector<long long> acc(count, 0);
    Rat unit;
    for (int s = 0; s < num_samples; ++s) {
        FrtTree t = sample_frt_tree(metric, seed + static_cast<std::uint64_t>(s));
        unit = t.unit;
        const int nodes = t.tree.vertex_count;
        // Ground-subset mask (and root flag) below each node.
        std::vector<std::uint32_t> below(nodes, 0);
        std::vector<char> root_below(nodes, 0);
        for (int b = 0; b < g; ++b) below[t.leaf_of_point[ground[b]]] |= 1u << b;
        if (root) root_below[t.leaf_of_point[*root]] = 1;
        for (int v = nodes - 1; v >= 1; --v) {
            below[t.parent[v]] |= below[v];
            root_below[t.parent[v]] |= root_below[v];
        }
        const std::uint32_t full = count - 1;
        for (int v = 1; v < nodes; ++v) {
            const std::uint32_t bm = below[v] & full;
            if (bm == 0 && !root_below[v]) continue;
            const long long w = 1LL << (t.level_of[v] + 1);
            // Edge on the spanning subtree iff both sides hold a terminal.
            for (std::uint32_t mask = 0; mask < count; ++mask) {
                const bool inside = (mask & bm) != 0 || root_below[v];
                const bool outside = (mask & ~bm & full) != 0 || (root && !root_below[v]);
                if (inside && outside) acc[mask] += w;
            }
        }
        proxy.samples.push_back(std::move(t));
    }
    proxy.tabulation.n = g;
    proxy.tabulation.labels = ground;
    proxy.tabulation.values.resize(count);
    const Rat denom = Rat(num_samples);
    for (std::uint32_t mask = 0; mask < count; ++mask)
        proxy.tabulation.values[mask] = Rat(Rat(static_cast<long>(acc[mask])) * unit / denom);
    return proxy;
}

namespace {

void extract_rec(const FrtTree& t, std::vector<int> points, const Metric& metric,
                 std::vector<std::pair<int, int>>& out) {
    if (points.size() < 2) return;
    int best_level = -1, best_i = -1, best_j = -1;
    Rat best_cost;
    for (size_t a = 0; a < points.size(); ++a)
        for (size_t b = a + 1; b < points.size(); ++b) {
            int meet = t.lca(t.leaf_of_point[points[a]], t.leaf_of_point[points[b]]);
            int level = t.level_of[meet];
            const Rat& cost = metric.at(points[a], points[b]);
            if (level > best_level ||
                (level == best_level && cost < best_cost)) {
                best_level = level;
                best_i = points[a];
                best_j = points[b];
                best_cost = cost;
            }
        }
    out.emplace_back(std::min(best_i, best_j), std::max(best_i, best_j));

    // Split at the LCA: peel off the child subtree holding one endpoint;
    // keep the smaller side apart so hubs stay with the rest.
    auto child_under = [&](int point, int meet) {
        int x = t.leaf_of_point[point];
        while (t.parent[x] != meet) x = t.parent[x];
        return x;
    };
    int meet = t.lca(t.leaf_of_point[best_i], t.leaf_of_point[best_j]);
    auto side_points = [&](int child) {
        std::vector<int> side;
        for (int p : points) {
            int x = t.leaf_of_point[p];
            while (x != meet && x != child) x = t.parent[x];
            if (x == child) side.push_back(p);
        }
        return side;
    };
    std::vector<int> side_i = side_points(child_under(best_i, meet));
    std::vector<int> side_j = side_points(child_under(best_j, meet));
    const std::vector<int>& peeled = side_i.size() <= side_j.size() ? side_i : side_j;
    std::vector<int> rest;
    for (int p : points)
        if (std::find(peeled.begin(), peeled.end(), p) == peeled.end()) rest.push_back(p);
    extract_rec(t, peeled, metric, out);
    extract_rec(t, std::move(rest), metric, out);
}

} // namespace

std::vector<std::pair<int, int>> extract_spanning_subgraph(const FrtTree& t,
                                                           const std::vector<int>& points,
                                                           const Metric& metric) {
    std::vector<int> distinct = points;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (int p : distinct)
        if (p < 0 || p >= metric.size())
            throw PreconditionError("extract: point out of range");
    std::vector<std::pair<int, int>> out;
    extract_rec(t, std::move(distinct), metric, out);
    return out;
}

} // namespace submodgap
