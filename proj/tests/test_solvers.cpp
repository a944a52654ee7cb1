#include "helpers.hpp"

#include "submodgap/bounds.hpp"
#include "submodgap/solvers.hpp"

#include <doctest.h>

#include <map>
#include <set>

using namespace submodgap;
using namespace testutil;

namespace {

bool spans(const std::vector<std::pair<int, int>>& edges, const std::vector<int>& terminals) {
    if (terminals.size() <= 1) return true;
    std::set<int> vertices;
    for (auto [u, v] : edges) {
        vertices.insert(u);
        vertices.insert(v);
    }
    for (int t : terminals)
        if (!vertices.count(t)) return false;
    std::map<int, int> parent;
    std::function<int(int)> find = [&](int v) {
        if (!parent.count(v)) parent[v] = v;
        return parent[v] == v ? v : parent[v] = find(parent[v]);
    };
    for (auto [u, v] : edges) parent[find(u)] = find(v);
    for (size_t i = 1; i < terminals.size(); ++i)
        if (find(terminals[i]) != find(terminals[0])) return false;
    return true;
}

Rat edges_cost(const Metric& m, const std::vector<std::pair<int, int>>& edges) {
    Rat total(0);
    for (auto [u, v] : edges) total += m.at(u, v);
    return total;
}

} // namespace

TEST_SUITE("solvers") {

TEST_CASE("steiner examples on diamonds") {
    DiamondInstance d0 = build_diamond(0);
    Metric m0 = metric_closure(d0.graph);
    CHECK(steiner_exact(m0, {0, 1}).cost == 1);

    DiamondInstance d2 = build_diamond(2);
    Metric m2 = metric_closure(d2.graph);
    for (const auto& path : enumerate_sr_paths(d2, 2))
        CHECK(steiner_exact(m2, path).cost == 1);

    std::vector<int> all;
    for (int v = 0; v < d2.graph.vertex_count; ++v) all.push_back(v);
    CHECK(steiner_exact(m2, all).cost == rat(11, 4));
}

TEST_CASE("steiner emits a spanning certificate with matching cost") {
    Rng rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        WeightedGraph g = rand_graph(rng, rand_int(rng, 2, 7), rand_int(rng, 0, 4));
        Metric m = metric_closure(g);
        std::vector<int> terminals;
        for (int v = 0; v < m.size(); ++v)
            if (rng() % 2) terminals.push_back(v);
        if (terminals.size() < 2) continue;
        SteinerSolution sol = steiner_exact(m, terminals);
        CHECK(spans(sol.tree_edges, terminals));
        CHECK(edges_cost(m, sol.tree_edges) == sol.cost);
    }
}

TEST_CASE("steiner equals the superset-mst brute force on small metrics") {
    Rng rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        WeightedGraph g = rand_graph(rng, rand_int(rng, 3, 8), rand_int(rng, 0, 5));
        Metric m = metric_closure(g);
        std::vector<int> terminals;
        for (int v = 0; v < m.size(); ++v)
            if (rng() % 2) terminals.push_back(v);
        if (terminals.size() < 2) continue;
        CHECK(steiner_exact(m, terminals).cost == steiner_brute_force(m, terminals));
    }
    Metric m1 = metric_closure(build_diamond(1).graph);
    for (std::uint32_t mask = 0; mask < 16; ++mask) {
        std::vector<int> terminals;
        for (int v = 0; v < 4; ++v)
            if (mask & (1u << v)) terminals.push_back(v);
        if (terminals.size() < 2) continue;
        CHECK(steiner_exact(m1, terminals).cost == steiner_brute_force(m1, terminals));
    }
}

TEST_CASE("rooted steiner spans the root and is monotone") {
    DiamondInstance d1 = build_diamond(1);
    Metric m = metric_closure(d1.graph);
    CHECK(steiner_exact(m, {}, 1).cost == 0);
    CHECK(steiner_exact(m, {0}, 1).cost == 1);
    CHECK(steiner_exact(m, {2}, 1).cost == rat(1, 2));
    CHECK(steiner_exact(m, {0, 2}, 1).cost == 1);
    CHECK(steiner_exact(m, {2, 3}, 1).cost == 1);
    CHECK(steiner_exact(m, {0, 2, 3}, 1).cost == rat(3, 2));

    const std::vector<int> ground = {0, 2, 3};
    for (std::uint32_t a = 0; a < 8; ++a)
        for (std::uint32_t b = 0; b < 8; ++b) {
            if ((a & b) != a) continue;  // a subset of b
            auto terms = [&](std::uint32_t mask) {
                std::vector<int> t;
                for (size_t i = 0; i < ground.size(); ++i)
                    if (mask & (1u << i)) t.push_back(ground[i]);
                return t;
            };
            CHECK(steiner_exact(m, terms(a), 1).cost <= steiner_exact(m, terms(b), 1).cost);
        }
}

TEST_CASE("steiner cost table agrees with individual runs") {
    DiamondInstance d1 = build_diamond(1);
    Metric m = metric_closure(d1.graph);
    std::vector<int> ground = {0, 2, 3};
    auto rooted = steiner_cost_table(m, ground, 1);
    auto unrooted = steiner_cost_table(m, ground, std::nullopt);
    REQUIRE(rooted.size() == 8);
    for (std::uint32_t mask = 0; mask < 8; ++mask) {
        std::vector<int> terms;
        for (size_t i = 0; i < ground.size(); ++i)
            if (mask & (1u << i)) terms.push_back(ground[i]);
        CHECK(rooted[mask] == steiner_exact(m, terms, 1).cost);
        CHECK(unrooted[mask] == steiner_exact(m, terms).cost);
    }
    CHECK_THROWS_AS(steiner_cost_table(m, {0, 2}, 0), PreconditionError);
    CHECK_THROWS_AS(steiner_cost_table(m, {0, 0, 2}, 1), PreconditionError);
}

TEST_CASE("steiner size limit") {
    Rng rng(3);
    Metric m = rand_uniform_metric(rng, 15);
    std::vector<int> terminals;
    for (int v = 0; v < 15; ++v) terminals.push_back(v);
    CHECK_THROWS_AS(steiner_exact(m, terminals), SizeLimitError);
}

TEST_CASE("diamond spanning tree costs") {
    DiamondInstance d3 = build_diamond(3);
    CHECK(spanning_tree_cost(d3, 0) == 1);
    CHECK(spanning_tree_cost(d3, 1) == rat(3, 2));
    CHECK(spanning_tree_cost(d3, 3) == rat(43, 8));
    DiamondInstance d6 = build_diamond(6);
    for (int j = 0; j <= 6; ++j) {
        Rat expected = rat(2, 3) * pow2(j) + rat(1, 3) * pow2(-j);
        CHECK(spanning_tree_cost(d6, j) == expected);
        CHECK(Rat(d6.vertex_count_at_level(j) - 1) * pow2(-j) == expected);
    }
}

TEST_CASE("ufl empty client set costs zero") {
    HstInstance h2 = build_hst(2, rat(1, 2));
    UflSolution sol = ufl_exact(h2, {});
    CHECK(sol.cost == 0);
    CHECK(sol.open_facilities.empty());
}

TEST_CASE("ufl level sets reproduce the t_j values") {
    // t_j = 2^{j+1}/alpha + (2^{j+1}-1)/(1-alpha) for strict subtrees
    // (j < d). At j = d the 2^d leaf-layer clients host their own open
    // facilities at distance zero, shaving 2^d/(1-alpha) off that formula.
    for (int d : {1, 2, 3}) {
        HstInstance inst = build_hst(d, rat(1, 2));
        const Rat inv_a = Rat(1) / inst.alpha;
        const Rat inv_b = Rat(1) / (Rat(1) - inst.alpha);
        for (int j = 0; j <= d; ++j) {
            std::vector<int> level_set;
            for (int v = 0; v < inst.tree.vertex_count; ++v)
                if (inst.depth_of[v] <= j) level_set.push_back(v);
            Rat expected = j < d ? Rat(pow2(j + 1) * inv_a + (pow2(j + 1) - 1) * inv_b)
                                 : Rat(pow2(j + 1) * inv_a + (pow2(j) - 1) * inv_b);
            CHECK(ufl_exact(inst, level_set).cost == expected);
        }
    }
    HstInstance h2 = build_hst(2, rat(1, 2));
    CHECK(ufl_exact(h2, {0, 1, 2}).cost == 14);
}

TEST_CASE("ufl rooted path costs: per-vertex connection accounting") {
    // A rooted path with j edges pays 2/alpha + (j+1)/(1-alpha) for j < d
    // (each of its j+1 vertices routes one 1/(1-alpha) unit), and
    // 2/alpha + j/(1-alpha) at j = d where the endpoint hosts the facility.
    for (int d : {1, 2, 3}) {
        HstInstance inst = build_hst(d, rat(1, 2));
        for (int j = 0; j <= d; ++j) {
            const int units = (j == d) ? j : j + 1;
            Rat expected = inst.facility_cost + Rat(units) / (Rat(1) - inst.alpha);
            for (const auto& path : rooted_paths_hst(inst, j))
                CHECK(ufl_exact(inst, path).cost == expected);
        }
    }
}

TEST_CASE("ufl agrees with facility-subset enumeration") {
    Rng rng(21);
    for (int d : {1, 2, 3}) {
        for (const Rat& alpha : {rat(1, 2), rat(1, 3)}) {
            HstInstance inst = build_hst(d, alpha);
            const int n = inst.tree.vertex_count;
            const int trials = d <= 2 ? (1 << n) : 120;
            for (int t = 0; t < trials; ++t) {
                std::uint32_t mask = d <= 2 ? static_cast<std::uint32_t>(t)
                                            : static_cast<std::uint32_t>(rng() % (1u << n));
                std::vector<int> clients;
                for (int v = 0; v < n; ++v)
                    if (mask & (1u << v)) clients.push_back(v);
                UflSolution sol = ufl_exact(inst, clients);
                CHECK(sol.cost == ufl_brute_force(inst, clients));
                if (!clients.empty()) {
                    Metric m = metric_closure(inst.tree);
                    Rat repriced =
                        Rat(static_cast<long>(sol.open_facilities.size())) * inst.facility_cost;
                    for (auto [w, f] : sol.assignment)
                        repriced += inst.clients_of[w] * m.at(w, f);
                    CHECK(repriced == sol.cost);
                }
            }
        }
    }
}

TEST_CASE("matching basics") {
    BipartiteInstance u2 = build_matching_universe(2);
    CHECK(max_matching(u2, {}) == 0);
    CHECK(max_matching(u2, {2}) == 1);        // the {u1,u2} request
    CHECK(max_matching(u2, {0, 1, 2}) == 2);  // {u1}, {u2}, {u1,u2}
    CHECK_THROWS_AS(max_matching(u2, {7}), PreconditionError);
}

TEST_CASE("matching equals brute force on random graphs") {
    Rng rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        BipGraph g = rand_bipgraph(rng, 6, 6);
        CHECK(max_matching(g) == matching_brute_force(g));
    }
}

TEST_CASE("even odd free examples") {
    BipGraph perfect;
    perfect.n_left = perfect.n_right = 2;
    perfect.adj = {{0}, {1}};
    MatchingDecomposition dec = even_odd_free(perfect);
    CHECK(dec.size == 2);
    CHECK(dec.even.empty());
    CHECK(dec.odd.empty());
    CHECK(dec.free_vertices.size() == 4);

    // u = 1 with two copies of the {u1} request: both requests EVEN, u1 ODD.
    BipartiteInstance u1 = build_matching_universe(1);
    dec = even_odd_free(u1, {0, 0});
    CHECK(dec.size == 1);
    CHECK(dec.even == std::vector<int>{0, 1});
    CHECK(dec.odd == std::vector<int>{2});

    // Star: u = 2 with the single request {u1}: u2 EVEN, the rest FREE.
    BipartiteInstance u2 = build_matching_universe(2);
    dec = even_odd_free(u2, {0});
    CHECK(dec.even == std::vector<int>{2});
    CHECK(dec.odd.empty());
    CHECK(dec.free_vertices == std::vector<int>{0, 1});
}

TEST_CASE("even set matches the deletion characterization; even and odd disjoint") {
    Rng rng(13);
    for (int trial = 0; trial < 300; ++trial) {
        BipGraph g = rand_bipgraph(rng, 6, 6);
        MatchingDecomposition dec = even_odd_free(g);
        CHECK(dec.even == even_brute_force(g));
        std::set<int> even(dec.even.begin(), dec.even.end());
        for (int v : dec.odd) CHECK(!even.count(v));
        CHECK(dec.size == matching_brute_force(g));
    }
}

TEST_CASE("always matched: examples and monotonicity under request addition") {
    BipartiteInstance u1 = build_matching_universe(1);
    CHECK(always_matched(u1, {0}, 0));

    BipartiteInstance u2 = build_matching_universe(2);
    CHECK(!always_matched(u2, {2}, 0));
    CHECK(!always_matched(u2, {2}, 1));

    Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        int u = rand_int(rng, 1, 3);
        BipartiteInstance inst = build_matching_universe(u);
        const int v_count = static_cast<int>(inst.v_masks.size());
        std::vector<int> requests;
        int len = rand_int(rng, 0, 5);
        for (int i = 0; i < len; ++i) requests.push_back(rand_int(rng, 0, v_count - 1));
        std::vector<bool> before;
        for (int w = 0; w < u; ++w) before.push_back(always_matched(inst, requests, w));
        requests.push_back(rand_int(rng, 0, v_count - 1));
        for (int w = 0; w < u; ++w)
            if (before[w]) CHECK(always_matched(inst, requests, w));
    }
}

TEST_CASE("tabulation helpers") {
    SetFunction rooted = rooted_steiner_setfn(build_diamond(1));
    CHECK(rooted.n == 3);
    CHECK(rooted.values.size() == 8);
    CHECK(rooted.values[rooted.full_mask()] == rat(3, 2));
    CHECK(rooted.values[1u << rooted.position_of(0)] == 1);

    BipartiteInstance u2 = build_matching_universe(2);
    SetFunction mf = matching_setfn(u2, {0, 1, 2});
    CHECK(mf.n == 3);
    CHECK(mf.values[7] == 2);
    CHECK(mf.values[0] == 0);
}

} // TEST_SUITE
