#pragma once

#include "submodgap/frt.hpp"
#include "submodgap/gap_lp.hpp"
#include "submodgap/instances.hpp"
#include "submodgap/setfn.hpp"
#include "submodgap/solvers.hpp"

#include <json.hpp>

#include <string>
#include <variant>

namespace submodgap {

inline constexpr const char* kToolVersion = "0.1.0";

using json = nlohmann::json;

// Instance files: {"type": "diamond"|"hst"|"bipartite", "params": {...},
// "graph": {"n": ..., "edges": [[u, v, "p/q"], ...]}, per-type annotations}.
json instance_to_json(const DiamondInstance& inst);
json instance_to_json(const HstInstance& inst);
json instance_to_json(const BipartiteInstance& inst);

using AnyInstance = std::variant<DiamondInstance, HstInstance, BipartiteInstance>;
AnyInstance instance_from_json(const json& j);

json graph_to_json(const WeightedGraph& g);
WeightedGraph graph_from_json(const json& j);

// Raw metric files: {"type": "metric", "n": ..., "dist": [["p/q", ...], ...]}.
json metric_to_json(const Metric& m);
Metric metric_from_json(const json& j);

// The metric of any instance file: metric closure for graph-backed types,
// direct for "metric" files.
Metric metric_of_instance_json(const json& j);

// Set functions: {"n": ..., "labels": [...], "values": ["p/q", ...]} in mask order.
json setfn_to_json(const SetFunction& f);
SetFunction setfn_from_json(const json& j);

json steiner_solution_to_json(const SteinerSolution& s);
json ufl_solution_to_json(const UflSolution& s);
json decomposition_to_json(const MatchingDecomposition& d);
json gap_result_to_json(const GapLpResult& r);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
json read_json_file(const std::string& path);

} // namespace submodgap
