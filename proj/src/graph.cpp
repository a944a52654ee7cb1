#include "submodgap/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace submodgap {

void WeightedGraph::validate() const {
    for (const Edge& e : edges) {
        if (e.u < 0 || e.u >= vertex_count || e.v < 0 || e.v >= vertex_count)
            throw InvariantError("edge endpoint out of range");
        if (e.u == e.v) throw InvariantError("self loop");
        if (!(e.length > 0)) throw InvariantError("non-positive edge length");
    }
}

bool WeightedGraph::connected() const {
    if (vertex_count == 0) return true;
    std::vector<std::vector<int>> adj(vertex_count);
    for (const Edge& e : edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<char> seen(vertex_count, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int w : adj[u])
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                q.push(w);
            }
    }
    return count == vertex_count;
}

Metric::Metric(int size, std::vector<Rat> dist) : size_(size), dist_(std::move(dist)) {
    if (static_cast<size_t>(size_) * size_ != dist_.size())
        throw PreconditionError("metric size mismatch");
}

void Metric::set(int i, int j, const Rat& d) {
    dist_[static_cast<size_t>(i) * size_ + j] = d;
    dist_[static_cast<size_t>(j) * size_ + i] = d;
}

void Metric::validate() const {
    for (int i = 0; i < size_; ++i) {
        if (at(i, i) != 0) throw InvariantError("nonzero diagonal");
        for (int j = i + 1; j < size_; ++j) {
            if (at(i, j) != at(j, i)) throw InvariantError("asymmetric metric");
            if (!(at(i, j) > 0)) throw InvariantError("non-positive off-diagonal distance");
        }
    }
    for (int i = 0; i < size_; ++i)
        for (int j = 0; j < size_; ++j)
            for (int k = 0; k < size_; ++k)
                if (at(i, j) > at(i, k) + at(k, j))
                    throw InvariantError("triangle inequality violated");
}

Metric metric_closure(const WeightedGraph& g) {
    g.validate();
    if (!g.connected()) throw PreconditionError("metric closure of a disconnected graph");
    const int n = g.vertex_count;
    // Floyd-Warshall with an explicit reachability flag; lengths are exact.
    std::vector<Rat> d(static_cast<size_t>(n) * n, Rat(0));
    std::vector<char> has(static_cast<size_t>(n) * n, 0);
    auto idx = [n](int i, int j) { return static_cast<size_t>(i) * n + j; };
    for (int i = 0; i < n; ++i) has[idx(i, i)] = 1;
    for (const Edge& e : g.edges) {
        if (!has[idx(e.u, e.v)] || e.length < d[idx(e.u, e.v)]) {
            d[idx(e.u, e.v)] = e.length;
            d[idx(e.v, e.u)] = e.length;
            has[idx(e.u, e.v)] = has[idx(e.v, e.u)] = 1;
        }
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            if (!has[idx(i, k)]) continue;
            for (int j = 0; j < n; ++j) {
                if (!has[idx(k, j)]) continue;
                Rat via = d[idx(i, k)] + d[idx(k, j)];
                if (!has[idx(i, j)] || via < d[idx(i, j)]) {
                    d[idx(i, j)] = via;
                    has[idx(i, j)] = 1;
                }
            }
        }
    return Metric(n, std::move(d));
}

namespace {

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

} // namespace

Rat mst_cost(const WeightedGraph& g) {
    g.validate();
    if (!g.connected()) throw PreconditionError("spanning tree of a disconnected graph");
    std::vector<int> order(g.edges.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return g.edges[a].length < g.edges[b].length;
    });
    DisjointSet ds(g.vertex_count);
    Rat total(0);
    for (int id : order)
        if (ds.unite(g.edges[id].u, g.edges[id].v)) total += g.edges[id].length;
    return total;
}

} // namespace submodgap
