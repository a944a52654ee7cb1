#pragma once

#include "submodgap/instances.hpp"
#include "submodgap/setfn.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace submodgap {

struct SteinerSolution {
    Rat cost;
    std::vector<std::pair<int, int>> tree_edges;  // metric pairs
};

// Exact Steiner tree over the metric closure (Steiner points may be any
// metric point), by dynamic programming over terminal subsets. When a root
// is given it is always spanned. |terminals + root| <= 14.
SteinerSolution steiner_exact(const Metric& metric, std::vector<int> terminals,
                              std::optional<int> root = std::nullopt);

// One DP run tabulating the optimal cost of every subset of `ground`.
// Entry [mask] is the cost of spanning subset(mask) + root (rooted form) or
// of subset(mask) alone (unrooted; empty and singleton sets cost 0).
std::vector<Rat> steiner_cost_table(const Metric& metric, const std::vector<int>& ground,
                                    std::optional<int> root = std::nullopt);

// MST cost of the diamond subgraph D_j; equals (|V(D_j)|-1) * 2^{-j}.
Rat spanning_tree_cost(const DiamondInstance& inst, int j);

struct UflSolution {
    Rat cost;
    std::vector<int> open_facilities;
    std::vector<std::pair<int, int>> assignment;  // (client vertex, facility)
};

// Exact uncapacitated facility location on the HST: facilities at leaves
// (uniform cost 2/alpha), client vertices carry their depth-determined
// multiplicities alpha^{-k}. Tree DP over (vertex, nearest-open-facility
// position); verified against facility-subset enumeration in tests.
UflSolution ufl_exact(const HstInstance& inst, const std::vector<int>& client_vertices);

// Bipartite graph for the matching routines; left vertices are request
// copies, right vertices indexed 0..n_right-1.
struct BipGraph {
    int n_left = 0;
    int n_right = 0;
    std::vector<std::vector<int>> adj;  // per left vertex
};

struct MatchingDecomposition {
    // Vertex ids: left i -> i, right u -> n_left + u.
    std::vector<int> even, odd, free_vertices;
    std::vector<std::pair<int, int>> matching;  // (left, right)
    int size = 0;
};

int max_matching(const BipGraph& g);                    // Hopcroft-Karp
MatchingDecomposition even_odd_free(const BipGraph& g); // alternating reachability

BipGraph request_graph(const BipartiteInstance& inst, const std::vector<int>& requests);
int max_matching(const BipartiteInstance& inst, const std::vector<int>& requests);
MatchingDecomposition even_odd_free(const BipartiteInstance& inst,
                                    const std::vector<int>& requests);

// True iff u (a U-vertex index) is matched by every maximum matching;
// monotone under adding requests.
bool always_matched(const BipartiteInstance& inst, const std::vector<int>& requests, int u);

// Tabulations feeding the gap experiments and the CLI.
// With a root, entry [mask] is the cost of spanning subset(mask) + root
// (the ground set must exclude the root); without one it is the plain
// spanning cost, which is not submodular at the singleton level.
SetFunction steiner_setfn(const Metric& metric, const std::vector<int>& ground,
                          std::optional<int> root);
SetFunction rooted_steiner_setfn(const DiamondInstance& inst);
SetFunction unrooted_steiner_setfn(const Metric& metric, const std::vector<int>& ground);
SetFunction matching_setfn(const BipartiteInstance& inst, const std::vector<int>& requests);
SetFunction ufl_setfn(const HstInstance& inst);  // ground = V(H_d), depth <= 3

} // namespace submodgap
