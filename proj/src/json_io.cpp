#include "submodgap/json_io.hpp"

#include <fstream>
#include <sstream>

namespace submodgap {

namespace {

json edges_to_json(const WeightedGraph& g) {
    json edges = json::array();
    for (const Edge& e : g.edges) edges.push_back({e.u, e.v, rat_str(e.length)});
    return edges;
}

const char* side_name(Side s) {
    switch (s) {
        case Side::left: return "left";
        case Side::right: return "right";
        default: return "none";
    }
}

} // namespace

json graph_to_json(const WeightedGraph& g) {
    return {{"n", g.vertex_count}, {"edges", edges_to_json(g)}};
}

WeightedGraph graph_from_json(const json& j) {
    WeightedGraph g;
    g.vertex_count = j.at("n").get<int>();
    for (const auto& e : j.at("edges"))
        g.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(),
                           parse_rat(e.at(2).get<std::string>())});
    g.validate();
    return g;
}

json instance_to_json(const DiamondInstance& inst) {
    json j;
    j["type"] = "diamond";
    j["params"] = {{"k", inst.depth}};
    j["graph"] = graph_to_json(inst.graph);
    j["levels"] = inst.level_of;
    json sides = json::array();
    for (Side s : inst.side_of) sides.push_back(side_name(s));
    j["sides"] = sides;
    j["source"] = inst.source;
    j["root"] = inst.root;
    return j;
}

json instance_to_json(const HstInstance& inst) {
    json j;
    j["type"] = "hst";
    j["params"] = {{"d", inst.depth}, {"alpha", rat_str(inst.alpha)}};
    j["graph"] = graph_to_json(inst.tree);
    j["depths"] = inst.depth_of;
    json clients = json::array();
    for (const Rat& c : inst.clients_of) clients.push_back(rat_str(c));
    j["clients"] = clients;
    j["facilities"] = inst.facilities;
    j["facility_cost"] = rat_str(inst.facility_cost);
    j["beta"] = rat_str(inst.beta);
    return j;
}

json instance_to_json(const BipartiteInstance& inst) {
    json j;
    j["type"] = "bipartite";
    j["params"] = {{"u", inst.u_size}};
    WeightedGraph g;
    g.vertex_count = inst.u_size + static_cast<int>(inst.v_masks.size());
    for (size_t v = 0; v < inst.v_masks.size(); ++v)
        for (int u = 0; u < inst.u_size; ++u)
            if (inst.v_masks[v] & (1u << u))
                g.edges.push_back({u, inst.u_size + static_cast<int>(v), Rat(1)});
    j["graph"] = graph_to_json(g);
    j["v_masks"] = inst.v_masks;
    j["requests"] = inst.requests;
    return j;
}

AnyInstance instance_from_json(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "diamond") {
        DiamondInstance inst = build_diamond(j.at("params").at("k").get<int>());
        if (j.contains("graph") &&
            j.at("graph").at("n").get<int>() != inst.graph.vertex_count)
            throw PreconditionError("diamond instance file inconsistent with params");
        return inst;
    }
    if (type == "hst") {
        HstInstance inst = build_hst(j.at("params").at("d").get<int>(),
                                     parse_rat(j.at("params").at("alpha").get<std::string>()));
        if (j.contains("graph") &&
            j.at("graph").at("n").get<int>() != inst.tree.vertex_count)
            throw PreconditionError("hst instance file inconsistent with params");
        return inst;
    }
    if (type == "bipartite") {
        BipartiteInstance inst = build_matching_universe(j.at("params").at("u").get<int>());
        if (j.contains("requests"))
            inst.requests = j.at("requests").get<std::vector<int>>();
        for (int r : inst.requests)
            if (r < 0 || r >= static_cast<int>(inst.v_masks.size()))
                throw PreconditionError("request index out of range in instance file");
        return inst;
    }
    throw PreconditionError("unknown instance type: " + type);
}

json metric_to_json(const Metric& m) {
    json rows = json::array();
    for (int i = 0; i < m.size(); ++i) {
        json row = json::array();
        for (int k = 0; k < m.size(); ++k) row.push_back(rat_str(m.at(i, k)));
        rows.push_back(std::move(row));
    }
    return {{"type", "metric"}, {"n", m.size()}, {"dist", rows}};
}

Metric metric_from_json(const json& j) {
    const int n = j.at("n").get<int>();
    std::vector<Rat> dist;
    dist.reserve(static_cast<size_t>(n) * n);
    for (const auto& row : j.at("dist"))
        for (const auto& cell : row) dist.push_back(parse_rat(cell.get<std::string>()));
    Metric m(n, std::move(dist));
    m.validate();
    return m;
}

Metric metric_of_instance_json(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "metric") return metric_from_json(j);
    if (type == "diamond" || type == "hst")
        return metric_closure(graph_from_json(j.at("graph")));
    throw PreconditionError("no metric for instance type: " + type);
}

json setfn_to_json(const SetFunction& f) {
    json values = json::array();
    for (const Rat& v : f.values) values.push_back(rat_str(v));
    return {{"n", f.n}, {"labels", f.labels}, {"values", values}};
}

SetFunction setfn_from_json(const json& j) {
    SetFunction f;
    f.n = j.at("n").get<int>();
    f.labels = j.at("labels").get<std::vector<int>>();
    for (const auto& v : j.at("values")) f.values.push_back(parse_rat(v.get<std::string>()));
    f.validate();
    return f;
}

json steiner_solution_to_json(const SteinerSolution& s) {
    json edges = json::array();
    for (auto [u, v] : s.tree_edges) edges.push_back({u, v});
    return {{"problem", "steiner"}, {"cost", rat_str(s.cost)}, {"tree_edges", edges}};
}

json ufl_solution_to_json(const UflSolution& s) {
    json assign = json::array();
    for (auto [c, f] : s.assignment) assign.push_back({c, f});
    return {{"problem", "ufl"},
            {"cost", rat_str(s.cost)},
            {"open_facilities", s.open_facilities},
            {"assignment", assign}};
}

json decomposition_to_json(const MatchingDecomposition& d) {
    json matching = json::array();
    for (auto [l, r] : d.matching) matching.push_back({l, r});
    return {{"problem", "matching"},
            {"size", d.size},
            {"matching", matching},
            {"even", d.even},
            {"odd", d.odd},
            {"free", d.free_vertices}};
}

json gap_result_to_json(const GapLpResult& r) {
    json j;
    switch (r.status) {
        case GapStatus::optimal: j["status"] = "optimal"; break;
        case GapStatus::infeasible: j["status"] = "infeasible"; break;
        case GapStatus::size_limit: j["status"] = "size-limit"; break;
        case GapStatus::unstable: j["status"] = "unstable"; break;
    }
    j["mode"] = r.exact_arithmetic ? "exact" : "float";
    j["pivots"] = r.pivots;
    if (r.status == GapStatus::optimal) {
        j["lambda"] = rat_str(r.lambda);
        j["lambda_double"] = r.lambda_double;
        j["residual"] = r.residual;
        j["g"] = setfn_to_json(r.g);
    }
    return j;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PreconditionError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw PreconditionError("cannot write file: " + path);
    out << content;
}

json read_json_file(const std::string& path) {
    return json::parse(read_text_file(path));
}

} // namespace submodgap
