// Command line driver: instance generation, exact solving, gap LPs, bound
// tables, FRT experiments, submodularity checks and report merging.
//
// Exit codes: 0 success, 2 usage/input error, 3 size limit,
// 4 invariant violation (including a failed `check`).

#include "submodgap/bounds.hpp"
#include "submodgap/frt.hpp"
#include "submodgap/gap_lp.hpp"
#include "submodgap/instances.hpp"
#include "submodgap/json_io.hpp"
#include "submodgap/setfn.hpp"
#include "submodgap/solvers.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace {

using namespace submodgap;

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stoi(item));
    return out;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-")
        std::cout << content;
    else
        write_text_file(out_path, content);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

struct GenOptions {
    std::string instance = "diamond";
    int k = 1;
    int d = 1;
    std::string alpha = "1/2";
    int u = 2;
    std::string requests;
    bool as_metric = false;
    std::string out;
};

int run_gen(const GenOptions& opt) {
    json config = {{"subcommand", "gen"}, {"instance", opt.instance}};
    json body;
    if (opt.instance == "diamond") {
        config["k"] = opt.k;
        DiamondInstance inst = build_diamond(opt.k);
        body = opt.as_metric ? metric_to_json(metric_closure(inst.graph))
                             : instance_to_json(inst);
    } else if (opt.instance == "hst") {
        config["d"] = opt.d;
        config["alpha"] = opt.alpha;
        HstInstance inst = build_hst(opt.d, parse_rat(opt.alpha));
        body = opt.as_metric ? metric_to_json(metric_closure(inst.tree))
                             : instance_to_json(inst);
    } else if (opt.instance == "bipartite") {
        config["u"] = opt.u;
        BipartiteInstance inst = build_matching_universe(opt.u);
        if (!opt.requests.empty()) inst.requests = parse_int_list(opt.requests);
        body = instance_to_json(inst);
        if (opt.as_metric) throw PreconditionError("bipartite instances carry no metric");
    } else {
        throw PreconditionError("unknown instance family: " + opt.instance);
    }
    body["config"] = config;
    body["tool_version"] = kToolVersion;
    emit(opt.out, dump(body));
    return 0;
}

struct SolveOptions {
    std::string problem = "steiner";
    std::string in;
    std::string terminals, clients, requests;
    int root = -1;
    bool decompose = false;
    std::string out;
};

int run_solve(const SolveOptions& opt) {
    json in = read_json_file(opt.in);
    json body;
    json config = {{"subcommand", "solve"}, {"problem", opt.problem}, {"in", opt.in}};
    if (opt.problem == "steiner") {
        Metric metric = metric_of_instance_json(in);
        std::optional<int> root;
        if (opt.root >= 0) root = opt.root;
        config["terminals"] = opt.terminals;
        if (root) config["root"] = *root;
        body = steiner_solution_to_json(
            steiner_exact(metric, parse_int_list(opt.terminals), root));
    } else if (opt.problem == "ufl") {
        auto inst = std::get<HstInstance>(instance_from_json(in));
        config["clients"] = opt.clients;
        body = ufl_solution_to_json(ufl_exact(inst, parse_int_list(opt.clients)));
    } else if (opt.problem == "matching") {
        auto inst = std::get<BipartiteInstance>(instance_from_json(in));
        std::vector<int> requests =
            opt.requests.empty() ? inst.requests : parse_int_list(opt.requests);
        config["requests"] = requests;
        MatchingDecomposition dec = even_odd_free(inst, requests);
        body = opt.decompose ? decomposition_to_json(dec)
                             : json{{"problem", "matching"}, {"size", dec.size}};
    } else {
        throw PreconditionError("unknown problem: " + opt.problem);
    }
    body["kind"] = "solve";
    body["config"] = config;
    body["tool_version"] = kToolVersion;
    emit(opt.out, dump(body));
    return 0;
}

struct GapOptions {
    std::string in;
    std::string instance;
    int k = 1;
    int d = 1;
    std::string alpha = "1/2";
    int u = 2;
    std::string requests;
    std::string mode = "auto";
    bool no_canonical = false;
    std::string out;
};

int run_gap(const GapOptions& opt) {
    json config = {{"subcommand", "gap"}, {"mode", opt.mode}};
    SetFunction c;
    if (!opt.in.empty()) {
        config["in"] = opt.in;
        c = setfn_from_json(read_json_file(opt.in));
    } else if (opt.instance == "diamond") {
        config["instance"] = "diamond";
        config["k"] = opt.k;
        c = rooted_steiner_setfn(build_diamond(opt.k));
    } else if (opt.instance == "hst") {
        config["instance"] = "hst";
        config["d"] = opt.d;
        config["alpha"] = opt.alpha;
        c = ufl_setfn(build_hst(opt.d, parse_rat(opt.alpha)));
    } else if (opt.instance == "bipartite") {
        config["instance"] = "bipartite";
        config["u"] = opt.u;
        config["requests"] = opt.requests;
        BipartiteInstance inst = build_matching_universe(opt.u);
        c = matching_setfn(inst, parse_int_list(opt.requests));
    } else {
        throw PreconditionError("gap needs --in or --instance");
    }
    GapMode mode = GapMode::automatic;
    if (opt.mode == "exact") mode = GapMode::exact;
    else if (opt.mode == "float") mode = GapMode::floating;
    else if (opt.mode != "auto") throw PreconditionError("mode must be auto|exact|float");

    GapLpResult res = submodularity_gap(c, mode, !opt.no_canonical);
    if (res.status == GapStatus::size_limit) throw SizeLimitError("gap lp ground set too large");
    json body = gap_result_to_json(res);
    body["kind"] = "gap";
    body["n"] = c.n;
    body["config"] = config;
    body["tool_version"] = kToolVersion;
    emit(opt.out, dump(body));
    return 0;
}

struct BoundsOptions {
    std::string problem = "steiner";
    int k = 5;
    int d = 3;
    std::string alpha = "1/2";
    std::string format = "csv";
    std::string out;
};

int run_bounds(const BoundsOptions& opt) {
    std::vector<Rat> t, f_lower, ratio;
    if (opt.problem == "steiner") {
        t = steiner_t_sequence(opt.k);
        for (int j = 0; j <= opt.k; ++j) {
            f_lower.push_back(steiner_closed_form(j));
            ratio.push_back(f_lower.back());  // optimal path cost is 1
        }
    } else if (opt.problem == "ufl") {
        Rat alpha = parse_rat(opt.alpha);
        BoundSequence seq = ufl_sequences(opt.d, alpha);
        t = seq.t;
        f_lower = seq.f_lower;
        for (int j = 0; j <= opt.d; ++j) ratio.push_back(ufl_gap_bound(j, alpha));
    } else {
        throw PreconditionError("bounds problem must be steiner|ufl");
    }
    if (opt.format == "csv") {
        std::ostringstream csv;
        csv << "j,t,f_lower,ratio\n";
        for (size_t j = 0; j < t.size(); ++j)
            csv << j << ',' << rat_str(t[j]) << ',' << rat_str(f_lower[j]) << ','
                << rat_str(ratio[j]) << '\n';
        emit(opt.out, csv.str());
        return 0;
    }
    if (opt.format != "json") throw PreconditionError("format must be csv|json");
    json rows = json::array();
    for (size_t j = 0; j < t.size(); ++j)
        rows.push_back({{"j", j},
                        {"t", rat_str(t[j])},
                        {"f_lower", rat_str(f_lower[j])},
                        {"ratio", rat_str(ratio[j])}});
    json body = {{"kind", "bounds"},
                 {"rows", rows},
                 {"config",
                  {{"subcommand", "bounds"},
                   {"problem", opt.problem},
                   {"k", opt.k},
                   {"d", opt.d},
                   {"alpha", opt.alpha}}},
                 {"tool_version", kToolVersion}};
    emit(opt.out, dump(body));
    return 0;
}

struct FrtOptions {
    std::string in;
    std::string instance;
    int k = 2;
    std::string ground;
    int samples = 200;
    std::uint64_t seed = 0;
    std::string out;
    std::string distortion_out;
};

int run_frt(const FrtOptions& opt) {
    Metric metric;
    json config = {{"subcommand", "frt"}, {"samples", opt.samples}, {"seed", opt.seed}};
    if (!opt.in.empty()) {
        config["in"] = opt.in;
        metric = metric_of_instance_json(read_json_file(opt.in));
    } else if (opt.instance == "diamond") {
        config["instance"] = "diamond";
        config["k"] = opt.k;
        metric = metric_closure(build_diamond(opt.k).graph);
    } else {
        throw PreconditionError("frt needs --in or --instance diamond");
    }
    std::vector<int> ground;
    if (opt.ground.empty()) {
        for (int i = 0; i < metric.size(); ++i) ground.push_back(i);
    } else {
        ground = parse_int_list(opt.ground);
    }
    config["ground"] = ground;

    ProxyFunction proxy = proxy_function(metric, ground, opt.samples, opt.seed);

    // Distortion rows: per pair, exact mean and max of the sampled tree
    // distances against the metric distance.
    std::ostringstream csv;
    csv << "i,j,x,mean_t,max_t\n";
    Rat worst_mean_ratio(0);
    for (size_t a = 0; a < ground.size(); ++a)
        for (size_t b = a + 1; b < ground.size(); ++b) {
            Rat sum(0), mx(0);
            for (const FrtTree& t : proxy.samples) {
                Rat d = t.distance(ground[a], ground[b]);
                sum += d;
                mx = std::max(mx, d);
            }
            Rat mean = sum / Rat(static_cast<long>(proxy.samples.size()));
            worst_mean_ratio = std::max(worst_mean_ratio,
                                        Rat(mean / metric.at(ground[a], ground[b])));
            csv << ground[a] << ',' << ground[b] << ','
                << rat_str(metric.at(ground[a], ground[b])) << ',' << rat_str(mean) << ','
                << rat_str(mx) << '\n';
        }
    if (!opt.distortion_out.empty()) emit(opt.distortion_out, csv.str());

    json body = setfn_to_json(proxy.tabulation);
    body["kind"] = "frt";
    body["samples"] = opt.samples;
    body["seed"] = opt.seed;
    body["max_mean_pair_distortion"] = rat_str(worst_mean_ratio);
    body["config"] = config;
    body["tool_version"] = kToolVersion;
    emit(opt.out, dump(body));
    return 0;
}

int run_check(const std::string& file) {
    SetFunction f = setfn_from_json(read_json_file(file));
    SubmodularityWitness w = is_submodular(f);
    if (w.holds) {
        std::cout << "submodular\n";
        return 0;
    }
    std::cout << "violation: base=" << w.base << " i=" << w.i << " j=" << w.j << " : f(A+i)+f(A+j)="
              << rat_str(f.values[w.base | (1u << w.i)] + f.values[w.base | (1u << w.j)])
              << " < f(A+i+j)+f(A)="
              << rat_str(f.values[w.base | (1u << w.i) | (1u << w.j)] + f.values[w.base])
              << "\n";
    return 4;
}

struct ReportOptions {
    std::vector<std::string> inputs;
    std::string format = "csv";
    std::string out;
};

int run_report(const ReportOptions& opt) {
    json records = json::array();
    for (const std::string& path : opt.inputs) {
        json j;
        try {
            j = read_json_file(path);
        } catch (const std::exception& e) {
            throw PreconditionError("report: cannot parse '" + path + "': " + e.what());
        }
        if (!j.is_object() || !j.contains("kind") || !j.contains("config"))
            throw PreconditionError("report: schema mismatch in '" + path +
                                    "' (expected a tool output with kind/config)");
        json rec = {{"file", path}, {"kind", j.at("kind")}, {"config", j.at("config")}};
        auto copy = [&](const char* key) {
            if (j.contains(key)) rec[key] = j.at(key);
        };
        copy("lambda");
        copy("lambda_double");
        copy("status");
        copy("mode");
        copy("cost");
        copy("size");
        copy("max_mean_pair_distortion");
        if (j.at("kind") == "bounds" && j.contains("rows") && !j.at("rows").empty()) {
            rec["f_lower"] = j.at("rows").back().at("f_lower");
            rec["ratio"] = j.at("rows").back().at("ratio");
        }
        records.push_back(std::move(rec));
    }
    json bundle = {{"kind", "report"},
                   {"records", records},
                   {"tool_version", kToolVersion},
                   {"config", {{"subcommand", "report"}, {"inputs", opt.inputs}}}};
    if (opt.format == "json") {
        emit(opt.out, dump(bundle));
        return 0;
    }
    if (opt.format != "csv") throw PreconditionError("format must be csv|json");
    std::ostringstream csv;
    csv << "file,kind,problem,lambda,cost,size,f_lower,ratio,max_mean_pair_distortion,status\n";
    for (const auto& rec : records) {
        auto cell = [&](const char* key) {
            if (!rec.contains(key)) return std::string();
            const json& v = rec.at(key);
            return v.is_string() ? v.get<std::string>() : v.dump();
        };
        std::string problem;
        if (rec.at("config").contains("problem"))
            problem = rec.at("config").at("problem").get<std::string>();
        else if (rec.at("config").contains("instance"))
            problem = rec.at("config").at("instance").get<std::string>();
        csv << rec.at("file").get<std::string>() << ',' << rec.at("kind").get<std::string>()
            << ',' << problem << ',' << cell("lambda") << ',' << cell("cost") << ','
            << cell("size") << ',' << cell("f_lower") << ',' << cell("ratio") << ','
            << cell("max_mean_pair_distortion") << ',' << cell("status") << '\n';
    }
    emit(opt.out, csv.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"submodularity gap laboratory"};
    app.require_subcommand(1);

    GenOptions gen;
    auto* cmd_gen = app.add_subcommand("gen", "generate instance files");
    cmd_gen->add_option("--instance", gen.instance, "diamond|hst|bipartite");
    cmd_gen->add_option("--k", gen.k, "diamond depth");
    cmd_gen->add_option("--d", gen.d, "hst depth");
    cmd_gen->add_option("--alpha", gen.alpha, "hst alpha as p/q");
    cmd_gen->add_option("--u", gen.u, "matching universe size");
    cmd_gen->add_option("--requests", gen.requests, "comma separated request indices");
    cmd_gen->add_flag("--as-metric", gen.as_metric, "emit the metric closure instead");
    cmd_gen->add_option("--out", gen.out, "output path (default stdout)");

    SolveOptions solve;
    auto* cmd_solve = app.add_subcommand("solve", "run an exact solver");
    cmd_solve->add_option("--problem", solve.problem, "steiner|ufl|matching");
    cmd_solve->add_option("--in", solve.in, "instance json")->required();
    cmd_solve->add_option("--terminals", solve.terminals, "steiner terminal ids");
    cmd_solve->add_option("--root", solve.root, "steiner root id");
    cmd_solve->add_option("--clients", solve.clients, "ufl client vertex ids");
    cmd_solve->add_option("--requests", solve.requests, "matching request indices");
    cmd_solve->add_flag("--decompose", solve.decompose, "emit the even/odd/free decomposition");
    cmd_solve->add_option("--out", solve.out, "output path");

    GapOptions gap;
    auto* cmd_gap = app.add_subcommand("gap", "solve the submodularity gap LP");
    cmd_gap->add_option("--in", gap.in, "set function json");
    cmd_gap->add_option("--instance", gap.instance, "diamond|hst|bipartite");
    cmd_gap->add_option("--k", gap.k, "diamond depth");
    cmd_gap->add_option("--d", gap.d, "hst depth");
    cmd_gap->add_option("--alpha", gap.alpha, "hst alpha as p/q");
    cmd_gap->add_option("--u", gap.u, "matching universe size");
    cmd_gap->add_option("--requests", gap.requests, "matching request indices");
    cmd_gap->add_option("--mode", gap.mode, "auto|exact|float");
    cmd_gap->add_flag("--no-canonical-g", gap.no_canonical, "skip the certificate tie-break solve");
    cmd_gap->add_option("--out", gap.out, "output path");

    BoundsOptions bounds;
    auto* cmd_bounds = app.add_subcommand("bounds", "evaluate the bound sequences");
    cmd_bounds->add_option("--problem", bounds.problem, "steiner|ufl");
    cmd_bounds->add_option("--k", bounds.k, "steiner depth");
    cmd_bounds->add_option("--d", bounds.d, "ufl depth");
    cmd_bounds->add_option("--alpha", bounds.alpha, "ufl alpha as p/q");
    cmd_bounds->add_option("--format", bounds.format, "csv|json");
    cmd_bounds->add_option("--out", bounds.out, "output path");

    FrtOptions frt;
    auto* cmd_frt = app.add_subcommand("frt", "sample tree embeddings and the proxy function");
    cmd_frt->add_option("--in", frt.in, "instance or metric json");
    cmd_frt->add_option("--instance", frt.instance, "diamond");
    cmd_frt->add_option("--k", frt.k, "diamond depth");
    cmd_frt->add_option("--ground", frt.ground, "point ids (default: all)");
    cmd_frt->add_option("--samples", frt.samples, "number of sampled trees");
    cmd_frt->add_option("--seed", frt.seed, "base seed");
    cmd_frt->add_option("--out", frt.out, "proxy set function output");
    cmd_frt->add_option("--distortion-out", frt.distortion_out, "per-pair distortion csv");

    std::string check_file;
    auto* cmd_check = app.add_subcommand("check", "verify submodularity of a set function file");
    cmd_check->add_option("--file", check_file, "set function json")->required();

    ReportOptions report;
    auto* cmd_report = app.add_subcommand("report", "merge result files into a summary table");
    cmd_report->add_option("inputs", report.inputs, "result files");
    cmd_report->add_option("--format", report.format, "csv|json");
    cmd_report->add_option("--out", report.out, "output path");

    try {
        app.parse(argc, argv);
        if (cmd_gen->parsed()) return run_gen(gen);
        if (cmd_solve->parsed()) return run_solve(solve);
        if (cmd_gap->parsed()) return run_gap(gap);
        if (cmd_bounds->parsed()) return run_bounds(bounds);
        if (cmd_frt->parsed()) return run_frt(frt);
        if (cmd_check->parsed()) return run_check(check_file);
        if (cmd_report->parsed()) return run_report(report);
        return 2;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const SizeLimitError& e) {
        std::cerr << "size limit: " << e.what() << "\n";
        return 3;
    } catch (const InvariantError& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 4;
    } catch (const PreconditionError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
