#pragma once

#include "submodgap/graph.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace submodgap {

enum class Side { none, left, right };

// One edge in the diamond construction history. Subdividing an edge spawns a
// left and a right vertex and four child edges; we keep the whole genealogy
// because path enumeration and the automorphism generators walk it.
struct DiamondEdgeRec {
    int level = 0;
    int u = 0, v = 0;                              // v is the endpoint closer to R along SR-paths
    int parent = -1;                               // edge rec id, -1 for the D_0 edge
    int left_vertex = -1, right_vertex = -1;       // set once subdivided
    std::array<int, 4> children{-1, -1, -1, -1};   // (u,l) (l,v) (u,r) (r,v)
};

struct DiamondInstance {
    WeightedGraph graph;            // edges of level == depth (the graph D_k)
    std::vector<int> level_of;      // per vertex; S,R at level 0
    std::vector<Side> side_of;
    int source = 0;                 // S
    int root = 1;                   // R
    int depth = 0;                  // k
    std::vector<DiamondEdgeRec> edge_recs;
    std::vector<std::vector<int>> edges_at_level;  // rec ids per level
    std::vector<int> parent_edge_of_vertex;        // rec id subdivided to create v; -1 for S,R

    int vertex_count_at_level(int j) const;        // |V(D_j)| = 2(4^j-1)/3 + 2
};

// D_k for 0 <= k <= 8. Vertex ids are stable under extension: V(D_j) is
// exactly {0, ..., |V(D_j)|-1} inside any deeper instance.
DiamondInstance build_diamond(int k);

// The graph D_j reconstructed from the instance's history, j <= depth.
WeightedGraph diamond_subgraph(const DiamondInstance& inst, int j);

// The 2^i SR-paths of the family at level i, as ordered vertex sequences
// from S to R. Each has 2^i + 1 vertices and total length 1.
std::vector<std::vector<int>> enumerate_sr_paths(const DiamondInstance& inst, int i);

// Automorphisms fixing S and R, as vertex permutations. Full group for
// depth <= 2 (sizes 1, 2, 32); the generating set (one branch swap per
// subdivided edge) for deeper instances.
std::vector<std::vector<int>> diamond_automorphisms(const DiamondInstance& inst);

// Hierarchically well-separated tree H_d: full binary tree in heap layout
// (root 0, children of v are 2v+1, 2v+2). Edges of depth e < d-1 have length
// alpha^e; the leaf edges (depth d-1) have length beta, chosen so every
// root-leaf path has length exactly 1/(1-alpha).
struct HstInstance {
    WeightedGraph tree;
    int depth = 0;                // d
    Rat alpha;                    // 1/m, m >= 2
    Rat beta;
    Rat facility_cost;            // 2/alpha
    std::vector<int> depth_of;
    std::vector<Rat> clients_of;  // alpha^{-k} at depth k (always integral)
    std::vector<int> facilities;  // the leaves

    int parent_of(int v) const { return v == 0 ? -1 : (v - 1) / 2; }
    bool is_leaf(int v) const;
    Rat edge_length(int edge_depth) const;
    Rat leaf_distance(int depth) const;  // depth-k vertex to any leaf below: alpha^k/(1-alpha)
};

// Requires alpha = 1/m for an integer m >= 2 and 1 <= d <= 8.
HstInstance build_hst(int d, const Rat& alpha);

// The 2^i rooted downward paths with exactly i edges, as vertex sequences.
std::vector<std::vector<int>> rooted_paths_hst(const HstInstance& inst, int i);

// Matching universe: U of size u, and one V-vertex per nonempty subset of U.
// v_masks[i] is the adjacency set of V-vertex i as a bitmask over U.
struct BipartiteInstance {
    int u_size = 0;
    std::vector<std::uint32_t> v_masks;
    std::vector<int> requests;   // multiset of V indices
};

// 1 <= u_size <= 5; requests initially empty.
BipartiteInstance build_matching_universe(int u_size);

} // namespace submodgap
