#pragma once

#include "submodgap/graph.hpp"
#include "submodgap/setfn.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace submodgap {

// One sampled dominating 2-HST over a finite metric. Node 0 is the root;
// leaves sit at level 0 and biject with the metric points. The edge from a
// level-i node to its parent has length 2^{i+1} * unit, where unit = 1/(2s)
// and s is the power-of-two scale that makes the minimum metric distance
// exceed 1. Under this normalization the sandwich
//     X_ij <= 2^{l(LCA)+1} * unit <= T_ij
// holds exactly for every pair.
struct FrtTree {
    WeightedGraph tree;
    std::vector<int> level_of;       // per tree node
    std::vector<int> parent;         // per tree node, -1 at root
    std::vector<int> leaf_of_point;  // metric point -> leaf node
    std::vector<int> point_of_leaf;  // tree node -> metric point, -1 internal
    Rat unit;
    std::uint64_t seed = 0;

    int lca(int node_a, int node_b) const;
    Rat distance(int point_i, int point_j) const;        // T_ij
    Rat sandwich_bound(int point_i, int point_j) const;  // 2^{l(LCA)+1} * unit
};

// Random-permutation, random-radius hierarchical ball cutting. Identical
// seeds give identical trees. Throws PreconditionError on metrics with
// fewer than 2 points or a zero distance between distinct points.
FrtTree sample_frt_tree(const Metric& metric, std::uint64_t seed);

// Total length of the minimal subtree spanning the leaves of the given
// points; 0 for empty or singleton input.
Rat tree_steiner_cost(const FrtTree& tree, const std::vector<int>& points);

struct ProxyFunction {
    std::vector<FrtTree> samples;
    SetFunction tabulation;  // average of the per-tree costs, exact rationals
    std::uint64_t seed = 0;
    std::optional<int> root;
};

// Empirical average of the per-tree spanning costs over num_samples trees
// with derived seeds (seed + index). With a root (which must not be in the
// ground set), entry [mask] averages the cost of subset + root: each
// per-tree cost is then submodular including the empty/singleton boundary,
// so the average is exactly submodular, and it dominates both the rooted and
// the unrooted metric Steiner tabulations pointwise. Without a root the
// average is the plain spanning cost (not submodular on singletons).
// |ground| <= 16.
ProxyFunction proxy_function(const Metric& metric, const std::vector<int>& ground,
                             int num_samples, std::uint64_t seed,
                             std::optional<int> root = std::nullopt);

// The recursive spanning-subgraph extraction: repeatedly connect a cheapest
// pair among those maximizing the LCA level, split at the LCA, recurse.
// Returns metric edges connecting `points`; total cost <= tree_steiner_cost.
std::vector<std::pair<int, int>> extract_spanning_subgraph(const FrtTree& tree,
                                                           const std::vector<int>& points,
                                                           const Metric& metric);

} // namespace submodgap
