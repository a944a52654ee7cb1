#pragma once

#include "submodgap/rational.hpp"

#include <vector>

namespace submodgap {

struct Edge {
    int u = 0;
    int v = 0;
    Rat length;
};

// Undirected graph with exact, strictly positive edge lengths.
struct WeightedGraph {
    int vertex_count = 0;
    std::vector<Edge> edges;

    void validate() const;
    bool connected() const;
};

// Dense exact metric (the space X). Invariants: symmetric, zero diagonal,
// triangle inequality holds exactly.
class Metric {
public:
    Metric() = default;
    Metric(int size, std::vector<Rat> dist);

    int size() const { return size_; }
    const Rat& at(int i, int j) const { return dist_[static_cast<size_t>(i) * size_ + j]; }
    void set(int i, int j, const Rat& d);

    // Exact checks of all Metric invariants; throws InvariantError.
    void validate() const;

private:
    int size_ = 0;
    std::vector<Rat> dist_;
};

// All-pairs shortest paths of a connected graph; throws PreconditionError if
// the graph is disconnected.
Metric metric_closure(const WeightedGraph& g);

// Kruskal. Throws PreconditionError if the graph is disconnected.
Rat mst_cost(const WeightedGraph& g);

} // namespace submodgap
