#include "submodgap/solvers.hpp"

#include "submodgap/graph.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <queue>
#include <set>

namespace submodgap {

//==========================================================================
// Steiner tree: dynamic programming over terminal subsets in the metric
// closure. dp[mask][v] = optimal cost of a tree spanning subset(mask) + v;
// Steiner points range over all metric points. One merge pass per subset
// plus a single extension relaxation (sufficient under the triangle
// inequality).
//==========================================================================

namespace {

struct DwTables {
    int n = 0;
    int t = 0;
    std::vector<Rat> dp;        // (1<<t) * n
    std::vector<std::int32_t> ext_from;   // chosen u in the extension step
    std::vector<std::uint32_t> split;     // chosen submask at the merge step (0 = none)
    bool with_choices = false;

    size_t idx(std::uint32_t mask, int v) const { return static_cast<size_t>(mask) * n + v; }
};

DwTables dreyfus_wagner(const Metric& metric, const std::vector<int>& terminals,
                        bool with_choices) {
    const int n = metric.size();
    const int t = static_cast<int>(terminals.size());
    DwTables tab;
    tab.n = n;
    tab.t = t;
    tab.with_choices = with_choices;
    tab.dp.assign(size_t{1} << t, Rat(0));
    tab.dp.resize((size_t{1} << t) * n, Rat(0));
    if (with_choices) {
        tab.ext_from.assign((size_t{1} << t) * n, -1);
        tab.split.assign((size_t{1} << t) * n, 0);
    }
    std::vector<Rat> merged(n);
    for (int i = 0; i < t; ++i)
        for (int v = 0; v < n; ++v) {
            tab.dp[tab.idx(1u << i, v)] = metric.at(terminals[i], v);
            if (with_choices) tab.ext_from[tab.idx(1u << i, v)] = terminals[i];
        }
    for (std::uint32_t mask = 1; mask < (1u << t); ++mask) {
        if ((mask & (mask - 1)) == 0) continue;  // singletons initialized above
        const std::uint32_t low = mask & ~(mask - 1);
        std::vector<std::uint32_t> merge_choice(with_choices ? n : 0, 0);
        for (int v = 0; v < n; ++v) {
            bool has = false;
            Rat best;
            std::uint32_t best_split = 0;
            // Splits with the lowest terminal pinned to one side.
            for (std::uint32_t sub = (mask - 1) & mask; sub > 0; sub = (sub - 1) & mask) {
                if (!(sub & low)) continue;
                Rat cand = tab.dp[tab.idx(sub, v)] + tab.dp[tab.idx(mask ^ sub, v)];
                if (!has || cand < best) {
                    has = true;
                    best = std::move(cand);
                    best_split = sub;
                }
            }
            merged[v] = std::move(best);
            if (with_choices) merge_choice[v] = best_split;
        }
        for (int v = 0; v < n; ++v) {
            int best_u = v;
            Rat best = merged[v];
            for (int u = 0; u < n; ++u) {
                if (u == v) continue;
                Rat cand = merged[u] + metric.at(u, v);
                if (cand < best) {
                    best = std::move(cand);
                    best_u = u;
                }
            }
            tab.dp[tab.idx(mask, v)] = std::move(best);
            if (with_choices) {
                tab.ext_from[tab.idx(mask, v)] = best_u;
                tab.split[tab.idx(mask, v)] = merge_choice[best_u];
            }
        }
    }
    return tab;
}

void reconstruct(const DwTables& tab, const std::vector<int>& terminals, std::uint32_t mask,
                 int v, std::set<std::pair<int, int>>& edges) {
    if (mask == 0) return;
    if ((mask & (mask - 1)) == 0) {
        int term = terminals[static_cast<int>(std::countr_zero(mask))];
        if (term != v) edges.insert(std::minmax(term, v));
        return;
    }
    int u = tab.ext_from[tab.idx(mask, v)];
    if (u != v) edges.insert(std::minmax(u, v));
    std::uint32_t sub = tab.split[tab.idx(mask, v)];
    reconstruct(tab, terminals, sub, u, edges);
    reconstruct(tab, terminals, mask ^ sub, u, edges);
}

std::vector<int> dedup_points(std::vector<int> points, int metric_size, const char* what) {
    for (int p : points)
        if (p < 0 || p >= metric_size)
            throw PreconditionError(std::string(what) + ": point id out of range");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return points;
}

} // namespace

SteinerSolution steiner_exact(const Metric& metric, std::vector<int> terminals,
                              std::optional<int> root) {
    std::vector<int> points = dedup_points(std::move(terminals), metric.size(), "steiner");
    if (root) {
        if (*root < 0 || *root >= metric.size())
            throw PreconditionError("steiner: root out of range");
        if (std::find(points.begin(), points.end(), *root) == points.end())
            points.push_back(*root);
    }
    if (points.size() > 14) throw SizeLimitError("steiner: more than 14 terminals");
    if (points.size() <= 1) return {Rat(0), {}};

    // Root the DP at the last point; the remaining ones form the subset universe.
    int anchor = points.back();
    points.pop_back();
    DwTables tab = dreyfus_wagner(metric, points, /*with_choices=*/true);
    std::uint32_t full = (1u << points.size()) - 1;
    SteinerSolution sol;
    sol.cost = tab.dp[tab.idx(full, anchor)];
    std::set<std::pair<int, int>> edges;
    reconstruct(tab, points, full, anchor, edges);
    sol.tree_edges.assign(edges.begin(), edges.end());
    return sol;
}

std::vector<Rat> steiner_cost_table(const Metric& metric, const std::vector<int>& ground,
                                    std::optional<int> root) {
    std::vector<int> seen = dedup_points(ground, metric.size(), "steiner table");
    if (seen.size() != ground.size())
        throw PreconditionError("steiner table: ground set has duplicates");
    if (ground.size() > 14) throw SizeLimitError("steiner table: ground set larger than 14");
    if (root) {
        if (*root < 0 || *root >= metric.size())
            throw PreconditionError("steiner table: root out of range");
        if (std::find(ground.begin(), ground.end(), *root) != ground.end())
            throw PreconditionError("steiner table: root may not be a ground element");
    }
    DwTables tab = dreyfus_wagner(metric, ground, /*with_choices=*/false);
    std::vector<Rat> table(size_t{1} << ground.size(), Rat(0));
    for (std::uint32_t mask = 1; mask < (1u << ground.size()); ++mask) {
        if (root) {
            table[mask] = tab.dp[tab.idx(mask, *root)];
        } else if ((mask & (mask - 1)) != 0) {
            int low = static_cast<int>(std::countr_zero(mask));
            table[mask] = tab.dp[tab.idx(mask ^ (1u << low), ground[low])];
        }
        // unrooted singletons stay 0
    }
    return table;
}

Rat spanning_tree_cost(const DiamondInstance& inst, int j) {
    return mst_cost(diamond_subgraph(inst, j));
}

//==========================================================================
// Facility location on the HST. Facilities live in leaves with uniform
// opening cost 2/alpha; every leaf below a vertex is equidistant from it,
// and with alpha <= 1/2 an open facility inside a subtree is strictly
// closer to its root than any facility outside. The DP is therefore
// per vertex: either some facility opens below (dp_in), or all selected
// clients below route out through the ancestor branching j levels up
// (dp_out[j]), or the subtree holds no clients at all (dp_none).
//==========================================================================

namespace {

struct UflState {
    bool feasible = false;
    Rat cost;
};

UflState better(const UflState& a, const UflState& b) {
    if (!a.feasible) return b;
    if (!b.feasible) return a;
    return b.cost < a.cost ? b : a;
}

// Distance from a depth-k vertex to the nearest leaf reachable by climbing
// exactly j edges and descending on the branch side.
Rat out_distance(const HstInstance& inst, int k, int j) {
    Rat d(0);
    for (int t = 1; t <= j; ++t) d += inst.edge_length(k - t);
    return d + inst.leaf_distance(k - j);
}

Rat tree_distance(const HstInstance& inst, int a, int b) {
    Rat d(0);
    int x = a, y = b;
    while (x != y) {
        if (inst.depth_of[x] >= inst.depth_of[y]) {
            d += inst.edge_length(inst.depth_of[x] - 1);
            x = inst.parent_of(x);
        } else {
            d += inst.edge_length(inst.depth_of[y] - 1);
            y = inst.parent_of(y);
        }
    }
    return d;
}

} // namespace

UflSolution ufl_exact(const HstInstance& inst, const std::vector<int>& client_vertices) {
    const int n = inst.tree.vertex_count;
    std::vector<char> is_client(n, 0);
    for (int v : client_vertices) {
        if (v < 0 || v >= n) throw PreconditionError("ufl: client vertex out of range");
        is_client[v] = 1;
    }
    if (std::none_of(is_client.begin(), is_client.end(), [](char c) { return c != 0; }))
        return {Rat(0), {}, {}};

    std::vector<char> has_clients(n, 0);
    for (int v = n - 1; v >= 0; --v) {
        has_clients[v] = is_client[v];
        if (!inst.is_leaf(v))
            has_clients[v] = has_clients[v] || has_clients[2 * v + 1] || has_clients[2 * v + 2];
    }

    std::vector<UflState> dp_in(n);
    std::vector<std::vector<UflState>> dp_out(n);
    // dp_in choice per vertex: 0 = open in left child subtree only,
    // 1 = right only, 2 = both, 3 = leaf opens itself.
    std::vector<int> in_choice(n, -1);

    for (int v = n - 1; v >= 0; --v) {
        const int k = inst.depth_of[v];
        dp_out[v].assign(k + 1, UflState{});
        if (inst.is_leaf(v)) {
            dp_in[v] = {true, inst.facility_cost};
            in_choice[v] = 3;
            for (int j = 1; j <= k; ++j) {
                Rat c = is_client[v] ? Rat(inst.clients_of[v] * out_distance(inst, k, j)) : Rat(0);
                dp_out[v][j] = {true, std::move(c)};
            }
            continue;
        }
        const int l = 2 * v + 1, r = 2 * v + 2;
        Rat own_in = is_client[v] ? Rat(inst.clients_of[v] * inst.leaf_distance(k)) : Rat(0);

        auto closed = [&](int child, int j) {
            // child subtree with no facility: clients gone (none) or routed out.
            UflState none = has_clients[child] ? UflState{} : UflState{true, Rat(0)};
            return better(none, dp_out[child][j]);
        };
        UflState left_only = dp_in[l];
        UflState right_branch = closed(r, 1);
        left_only.feasible = left_only.feasible && right_branch.feasible;
        if (left_only.feasible) left_only.cost += right_branch.cost;

        UflState right_only = dp_in[r];
        UflState left_branch = closed(l, 1);
        right_only.feasible = right_only.feasible && left_branch.feasible;
        if (right_only.feasible) right_only.cost += left_branch.cost;

        UflState both = {dp_in[l].feasible && dp_in[r].feasible, Rat(0)};
        if (both.feasible) both.cost = dp_in[l].cost + dp_in[r].cost;

        UflState best = left_only;
        int choice = 0;
        if (right_only.feasible && (!best.feasible || right_only.cost < best.cost)) {
            best = right_only;
            choice = 1;
        }
        if (both.feasible && (!best.feasible || both.cost < best.cost)) {
            best = both;
            choice = 2;
        }
        best.cost += own_in;
        dp_in[v] = best;
        in_choice[v] = choice;

        for (int j = 1; j <= k; ++j) {
            UflState lo = closed(l, j + 1);
            UflState ro = closed(r, j + 1);
            UflState out{lo.feasible && ro.feasible, Rat(0)};
            if (out.feasible) {
                Rat own_out = is_client[v] ? Rat(inst.clients_of[v] * out_distance(inst, k, j))
                                           : Rat(0);
                out.cost = lo.cost + ro.cost + own_out;
            }
            dp_out[v][j] = out;
        }
    }

    UflSolution sol;
    sol.cost = dp_in[0].cost;

    // Collect the open set by walking the dp_in choices.
    std::vector<int> stack = {0};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        switch (in_choice[v]) {
            case 3: sol.open_facilities.push_back(v); break;
            case 0: stack.push_back(2 * v + 1); break;
            case 1: stack.push_back(2 * v + 2); break;
            default:
                stack.push_back(2 * v + 2);
                stack.push_back(2 * v + 1);
        }
    }
    std::sort(sol.open_facilities.begin(), sol.open_facilities.end());

    // Nearest-open assignment (smallest facility id on ties).
    for (int v = 0; v < n; ++v) {
        if (!is_client[v]) continue;
        int best_f = -1;
        Rat best_d;
        for (int f : sol.open_facilities) {
            Rat dist = tree_distance(inst, v, f);
            if (best_f < 0 || dist < best_d) {
                best_f = f;
                best_d = std::move(dist);
            }
        }
        sol.assignment.emplace_back(v, best_f);
    }
    return sol;
}

//==========================================================================
// Bipartite matching: Hopcroft-Karp plus the alternating-reachability
// decomposition into EVEN / ODD / FREE.
//==========================================================================

namespace {

struct HkState {
    std::vector<int> match_l, match_r, dist;

    int run(const BipGraph& g) {
        match_l.assign(g.n_left, -1);
        match_r.assign(g.n_right, -1);
        int matched = 0;
        while (bfs(g)) {
            for (int l = 0; l < g.n_left; ++l)
                if (match_l[l] < 0 && dfs(g, l)) ++matched;
        }
        return matched;
    }

    bool bfs(const BipGraph& g) {
        std::queue<int> q;
        dist.assign(g.n_left, -1);
        for (int l = 0; l < g.n_left; ++l)
            if (match_l[l] < 0) {
                dist[l] = 0;
                q.push(l);
            }
        bool reachable = false;
        while (!q.empty()) {
            int l = q.front();
            q.pop();
            for (int r : g.adj[l]) {
                int l2 = match_r[r];
                if (l2 < 0) {
                    reachable = true;
                } else if (dist[l2] < 0) {
                    dist[l2] = dist[l] + 1;
                    q.push(l2);
                }
            }
        }
        return reachable;
    }

    bool dfs(const BipGraph& g, int l) {
        for (int r : g.adj[l]) {
            int l2 = match_r[r];
            if (l2 < 0 || (dist[l2] == dist[l] + 1 && dfs(g, l2))) {
                match_l[l] = r;
                match_r[r] = l;
                return true;
            }
        }
        dist[l] = -1;
        return false;
    }
};

} // namespace

int max_matching(const BipGraph& g) {
    HkState hk;
    return hk.run(g);
}

MatchingDecomposition even_odd_free(const BipGraph& g) {
    HkState hk;
    MatchingDecomposition dec;
    dec.size = hk.run(g);
    for (int l = 0; l < g.n_left; ++l)
        if (hk.match_l[l] >= 0) dec.matching.emplace_back(l, hk.match_l[l]);

    std::vector<std::vector<int>> right_adj(g.n_right);
    for (int l = 0; l < g.n_left; ++l)
        for (int r : g.adj[l]) right_adj[r].push_back(l);

    // 0 unseen, 1 even, 2 odd; left ids 0..n_left-1, right ids offset.
    std::vector<int> mark(g.n_left + g.n_right, 0);
    std::queue<std::pair<int, bool>> q;  // (global id, is_left)
    for (int l = 0; l < g.n_left; ++l)
        if (hk.match_l[l] < 0) {
            mark[l] = 1;
            q.emplace(l, true);
        }
    for (int r = 0; r < g.n_right; ++r)
        if (hk.match_r[r] < 0) {
            mark[g.n_left + r] = 1;
            q.emplace(g.n_left + r, false);
        }
    while (!q.empty()) {
        auto [id, is_left] = q.front();
        q.pop();
        if (is_left) {
            int l = id;
            if (mark[id] == 1) {
                for (int r : g.adj[l]) {
                    if (hk.match_l[l] == r) continue;  // even -> non-matching edge
                    if (mark[g.n_left + r] == 0) {
                        mark[g.n_left + r] = 2;
                        q.emplace(g.n_left + r, false);
                    }
                }
            } else {
                int r = hk.match_l[l];
                if (r >= 0 && mark[g.n_left + r] == 0) {
                    mark[g.n_left + r] = 1;
                    q.emplace(g.n_left + r, false);
                }
            }
        } else {
            int r = id - g.n_left;
            if (mark[id] == 1) {
                for (int l : right_adj[r]) {
                    if (hk.match_r[r] == l) continue;
                    if (mark[l] == 0) {
                        mark[l] = 2;
                        q.emplace(l, true);
                    }
                }
            } else {
                int l = hk.match_r[r];
                if (l >= 0 && mark[l] == 0) {
                    mark[l] = 1;
                    q.emplace(l, true);
                }
            }
        }
    }
    for (int id = 0; id < g.n_left + g.n_right; ++id) {
        if (mark[id] == 1)
            dec.even.push_back(id);
        else if (mark[id] == 2)
            dec.odd.push_back(id);
        else
            dec.free_vertices.push_back(id);
    }
    return dec;
}

BipGraph request_graph(const BipartiteInstance& inst, const std::vector<int>& requests) {
    BipGraph g;
    g.n_left = static_cast<int>(requests.size());
    g.n_right = inst.u_size;
    g.adj.resize(requests.size());
    for (size_t i = 0; i < requests.size(); ++i) {
        int v = requests[i];
        if (v < 0 || v >= static_cast<int>(inst.v_masks.size()))
            throw PreconditionError("request index out of range");
        for (int u = 0; u < inst.u_size; ++u)
            if (inst.v_masks[v] & (1u << u)) g.adj[i].push_back(u);
    }
    return g;
}

int max_matching(const BipartiteInstance& inst, const std::vector<int>& requests) {
    return max_matching(request_graph(inst, requests));
}

MatchingDecomposition even_odd_free(const BipartiteInstance& inst,
                                    const std::vector<int>& requests) {
    return even_odd_free(request_graph(inst, requests));
}

bool always_matched(const BipartiteInstance& inst, const std::vector<int>& requests, int u) {
    if (u < 0 || u >= inst.u_size) throw PreconditionError("u vertex out of range");
    MatchingDecomposition dec = even_odd_free(inst, requests);
    int id = static_cast<int>(requests.size()) + u;
    return !std::binary_search(dec.even.begin(), dec.even.end(), id);
}

//==========================================================================
// Tabulations
//==========================================================================

SetFunction steiner_setfn(const Metric& metric, const std::vector<int>& ground,
                          std::optional<int> root) {
    SetFunction f;
    f.n = static_cast<int>(ground.size());
    f.labels = ground;
    f.values = steiner_cost_table(metric, ground, root);
    return f;
}

SetFunction rooted_steiner_setfn(const DiamondInstance& inst) {
    Metric metric = metric_closure(inst.graph);
    std::vector<int> ground;
    for (int v = 0; v < inst.graph.vertex_count; ++v)
        if (v != inst.root) ground.push_back(v);
    return steiner_setfn(metric, ground, inst.root);
}

SetFunction unrooted_steiner_setfn(const Metric& metric, const std::vector<int>& ground) {
    return steiner_setfn(metric, ground, std::nullopt);
}

SetFunction matching_setfn(const BipartiteInstance& inst, const std::vector<int>& requests) {
    if (requests.size() > kMaxGround) throw SizeLimitError("too many request copies");
    BipGraph base = request_graph(inst, requests);
    return tabulate(
        [&](std::uint32_t mask) {
            BipGraph sub;
            sub.n_right = base.n_right;
            for (size_t i = 0; i < requests.size(); ++i)
                if (mask & (1u << i)) {
                    sub.adj.push_back(base.adj[i]);
                    ++sub.n_left;
                }
            return Rat(max_matching(sub));
        },
        requests);
}

SetFunction ufl_setfn(const HstInstance& inst) {
    if (inst.depth > 3) throw SizeLimitError("ufl tabulation limited to depth 3");
    const int n = inst.tree.vertex_count;
    std::vector<int> labels(n);
    for (int v = 0; v < n; ++v) labels[v] = v;
    return tabulate(
        [&](std::uint32_t mask) {
            std::vector<int> clients;
            for (int v = 0; v < n; ++v)
                if (mask & (1u << v)) clients.push_back(v);
            return ufl_exact(inst, clients).cost;
        },
        labels);
}

} // namespace submodgap
