#include "submodgap/instances.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace submodgap {

namespace {

Rat rat_pow(const Rat& base, int e) {
    Rat r(1);
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

} // namespace

int DiamondInstance::vertex_count_at_level(int j) const {
    long long pow4 = 1;
    for (int i = 0; i < j; ++i) pow4 *= 4;
    return static_cast<int>(2 * (pow4 - 1) / 3 + 2);
}

DiamondInstance build_diamond(int k) {
    if (k < 0 || k > 8) throw SizeLimitError("diamond depth must be in [0, 8]");
    DiamondInstance inst;
    inst.depth = k;
    inst.level_of = {0, 0};
    inst.side_of = {Side::none, Side::none};
    inst.parent_edge_of_vertex = {-1, -1};

    DiamondEdgeRec root_edge;
    root_edge.level = 0;
    root_edge.u = 0;  // S
    root_edge.v = 1;  // R
    inst.edge_recs.push_back(root_edge);
    inst.edges_at_level.assign(1, {0});

    int next_vertex = 2;
    for (int level = 1; level <= k; ++level) {
        std::vector<int> created;
        for (int eid : inst.edges_at_level[level - 1]) {
            // Copy endpoints up front: push_back below may reallocate recs.
            const int eu = inst.edge_recs[eid].u;
            const int ev = inst.edge_recs[eid].v;
            const int left = next_vertex++;
            const int right = next_vertex++;
            inst.level_of.push_back(level);
            inst.level_of.push_back(level);
            inst.side_of.push_back(Side::left);
            inst.side_of.push_back(Side::right);
            inst.parent_edge_of_vertex.push_back(eid);
            inst.parent_edge_of_vertex.push_back(eid);

            std::array<int, 4> kids{};
            const int mids[4] = {left, left, right, right};
            for (int t = 0; t < 4; ++t) {
                DiamondEdgeRec child;
                child.level = level;
                child.u = (t % 2 == 0) ? eu : mids[t];
                child.v = (t % 2 == 0) ? mids[t] : ev;
                child.parent = eid;
                kids[t] = static_cast<int>(inst.edge_recs.size());
                inst.edge_recs.push_back(child);
                created.push_back(kids[t]);
            }
            inst.edge_recs[eid].children = kids;
            inst.edge_recs[eid].left_vertex = left;
            inst.edge_recs[eid].right_vertex = right;
        }
        inst.edges_at_level.push_back(std::move(created));
    }

    inst.graph.vertex_count = next_vertex;
    Rat len = pow2(-k);
    for (int eid : inst.edges_at_level[k])
        inst.graph.edges.push_back({inst.edge_recs[eid].u, inst.edge_recs[eid].v, len});
    return inst;
}

WeightedGraph diamond_subgraph(const DiamondInstance& inst, int j) {
    if (j < 0 || j > inst.depth) throw std::out_of_range("diamond level out of range");
    WeightedGraph g;
    g.vertex_count = inst.vertex_count_at_level(j);
    Rat len = pow2(-j);
    for (int eid : inst.edges_at_level[j])
        g.edges.push_back({inst.edge_recs[eid].u, inst.edge_recs[eid].v, len});
    return g;
}

std::vector<std::vector<int>> enumerate_sr_paths(const DiamondInstance& inst, int i) {
    if (i < 0 || i > inst.depth) throw std::out_of_range("path level exceeds instance depth");
    // Paths as S->R ordered edge id lists; every edge rec is oriented with u
    // toward S, so extension is a per-edge substitution.
    std::vector<std::vector<int>> edge_paths = {{0}};
    for (int level = 1; level <= i; ++level) {
        std::vector<std::vector<int>> next;
        next.reserve(edge_paths.size() * 2);
        for (const auto& path : edge_paths) {
            std::vector<int> left_path, right_path;
            left_path.reserve(path.size() * 2);
            right_path.reserve(path.size() * 2);
            for (int eid : path) {
                const auto& kids = inst.edge_recs[eid].children;
                left_path.push_back(kids[0]);
                left_path.push_back(kids[1]);
                right_path.push_back(kids[2]);
                right_path.push_back(kids[3]);
            }
            next.push_back(std::move(left_path));
            next.push_back(std::move(right_path));
        }
        edge_paths = std::move(next);
    }
    std::vector<std::vector<int>> vertex_paths;
    vertex_paths.reserve(edge_paths.size());
    for (const auto& path : edge_paths) {
        std::vector<int> vs;
        vs.reserve(path.size() + 1);
        vs.push_back(inst.edge_recs[path.front()].u);
        for (int eid : path) vs.push_back(inst.edge_recs[eid].v);
        vertex_paths.push_back(std::move(vs));
    }
    return vertex_paths;
}

namespace {

// Swap the two branches rooted at paired edges, recursively.
void pair_branches(const DiamondInstance& inst, int e1, int e2, std::vector<int>& perm) {
    const auto& r1 = inst.edge_recs[e1];
    const auto& r2 = inst.edge_recs[e2];
    if (r1.left_vertex < 0) return;  // not subdivided
    perm[r1.left_vertex] = r2.left_vertex;
    perm[r2.left_vertex] = r1.left_vertex;
    perm[r1.right_vertex] = r2.right_vertex;
    perm[r2.right_vertex] = r1.right_vertex;
    for (int t = 0; t < 4; ++t) pair_branches(inst, r1.children[t], r2.children[t], perm);
}

std::vector<int> branch_swap(const DiamondInstance& inst, int eid) {
    std::vector<int> perm(inst.graph.vertex_count);
    for (int v = 0; v < inst.graph.vertex_count; ++v) perm[v] = v;
    const auto& rec = inst.edge_recs[eid];
    perm[rec.left_vertex] = rec.right_vertex;
    perm[rec.right_vertex] = rec.left_vertex;
    pair_branches(inst, rec.children[0], rec.children[2], perm);
    pair_branches(inst, rec.children[1], rec.children[3], perm);
    return perm;
}

} // namespace

std::vector<std::vector<int>> diamond_automorphisms(const DiamondInstance& inst) {
    const int n = inst.graph.vertex_count;
    std::vector<int> identity(n);
    for (int v = 0; v < n; ++v) identity[v] = v;

    std::vector<std::vector<int>> generators;
    for (int level = 0; level < inst.depth; ++level)
        for (int eid : inst.edges_at_level[level]) generators.push_back(branch_swap(inst, eid));

    if (inst.depth > 2) return generators;

    // Close into the full group; sizes are 1, 2 and 32.
    std::set<std::vector<int>> group;
    group.insert(identity);
    std::vector<std::vector<int>> frontier = {identity};
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& g : frontier)
            for (const auto& s : generators) {
                std::vector<int> composed(n);
                for (int v = 0; v < n; ++v) composed[v] = s[g[v]];
                if (group.insert(composed).second) next.push_back(std::move(composed));
            }
        frontier = std::move(next);
    }
    return {group.begin(), group.end()};
}

bool HstInstance::is_leaf(int v) const { return v >= (1 << depth) - 1; }

Rat HstInstance::edge_length(int edge_depth) const {
    if (edge_depth < 0 || edge_depth >= depth) throw std::out_of_range("edge depth out of range");
    return edge_depth == depth - 1 ? beta : rat_pow(alpha, edge_depth);
}

Rat HstInstance::leaf_distance(int d) const {
    if (d >= depth) return Rat(0);  // the vertex is itself a leaf
    return rat_pow(alpha, d) / (1 - alpha);
}

HstInstance build_hst(int d, const Rat& alpha) {
    if (d < 1 || d > 8) throw SizeLimitError("hst depth must be in [1, 8]");
    if (!(alpha > 0) || !(alpha < 1) ||
        mpz_cmp_ui(mpq_numref(alpha.get_mpq_t()), 1) != 0)
        throw PreconditionError("alpha must be 1/m for an integer m >= 2");

    HstInstance inst;
    inst.depth = d;
    inst.alpha = alpha;
    inst.beta = rat_pow(alpha, d - 1) + rat_pow(alpha, d) / (1 - alpha);
    inst.facility_cost = Rat(2) / alpha;

    const int n = (1 << (d + 1)) - 1;
    inst.tree.vertex_count = n;
    inst.depth_of.resize(n);
    inst.clients_of.resize(n);
    const Rat inv_alpha = Rat(1) / alpha;
    for (int v = 0; v < n; ++v) {
        int depth = 0;
        for (int w = v; w > 0; w = (w - 1) / 2) ++depth;
        inst.depth_of[v] = depth;
        inst.clients_of[v] = rat_pow(inv_alpha, depth);
        if (v > 0) inst.tree.edges.push_back({(v - 1) / 2, v, Rat(0)});
    }
    for (Edge& e : inst.tree.edges) e.length = inst.edge_length(inst.depth_of[e.v] - 1);
    for (int v = (1 << d) - 1; v < n; ++v) inst.facilities.push_back(v);
    return inst;
}

std::vector<std::vector<int>> rooted_paths_hst(const HstInstance& inst, int i) {
    if (i < 0 || i > inst.depth) throw std::out_of_range("path length exceeds hst depth");
    std::vector<std::vector<int>> paths = {{0}};
    for (int step = 0; step < i; ++step) {
        std::vector<std::vector<int>> next;
        next.reserve(paths.size() * 2);
        for (const auto& p : paths)
            for (int child = 1; child <= 2; ++child) {
                std::vector<int> q = p;
                q.push_back(2 * p.back() + child);
                next.push_back(std::move(q));
            }
        paths = std::move(next);
    }
    return paths;
}

BipartiteInstance build_matching_universe(int u_size) {
    if (u_size < 1 || u_size > 5) throw SizeLimitError("matching universe size must be in [1, 5]");
    BipartiteInstance inst;
    inst.u_size = u_size;
    for (std::uint32_t mask = 1; mask < (1u << u_size); ++mask) inst.v_masks.push_back(mask);
    return inst;
}

} // namespace submodgap
