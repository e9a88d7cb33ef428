#include "commands.hpp"

#include "dbb/closure.hpp"
#include "dbb/error.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>

namespace dbb::cli {

namespace fs = std::filesystem;

void validate(const RunConfig& config, const AlgebraRegistry& registry) {
    if (config.measures.empty()) {
        throw Error(ErrorCode::InvalidInput, "at least one --measure is required");
    }
    if (!(config.tolerance > 0.0) || !std::isfinite(config.tolerance)) {
        throw Error(ErrorCode::InvalidInput, "--tol must be a positive number");
    }
    std::set<std::string> seen;
    for (const auto& m : config.measures) {
        registry.get(m);
        if (!seen.insert(m).second) {
            throw Error(ErrorCode::InvalidInput, "measure '" + m + "' listed twice");
        }
    }
}

namespace {

EdgeListOptions load_options(const RunConfig& config) {
    return {config.format, config.semantics, config.directedness, config.normalization};
}

GraphBuild load_distance_graph(const RunConfig& config) {
    auto build = read_edge_list(config.input, load_options(config));
    if (build.graph.semantics() == Semantics::Proximity) {
        build.graph = to_distance(build.graph);
    }
    return build;
}

void guard_size(const WeightedDigraph& g, const RunConfig& config) {
    if (g.node_count() > kLargeGraphNodes && !config.force) {
        throw Error(ErrorCode::InvalidInput,
                    std::to_string(g.node_count()) + " nodes exceeds " + std::to_string(kLargeGraphNodes) +
                        "; all-pairs closure is O(n (m + n log n)), pass --force to run anyway");
    }
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
    }
    return out;
}

std::string pair_text(const WeightedDigraph& g, NodeIndex s, NodeIndex t) {
    return "(" + g.label(s) + " -> " + g.label(t) + ")";
}

// Reads a backbone edge list back onto the node set of `g`. Returns an error
// message when the file is not a weight-preserving subgraph of `g`.
std::string read_backbone_file(const fs::path& path, const WeightedDigraph& g, WeightedDigraph& out) {
    std::ifstream in(path);
    if (!in) {
        return "missing backbone file '" + path.string() + "'";
    }
    const auto triples = parse_edge_list(in, EdgeListFormat::Tsv);
    std::vector<Edge> edges;
    std::set<std::pair<NodeIndex, NodeIndex>> seen;
    for (const auto& t : triples) {
        const auto s = g.find_node(t.source);
        const auto d = g.find_node(t.target);
        if (!s || !d) {
            return path.filename().string() + " line " + std::to_string(t.line) + ": node not in input graph";
        }
        const auto w = g.weight(*s, *d);
        if (!w || *w != t.weight) {
            return path.filename().string() + " line " + std::to_string(t.line) + ": edge " +
                   pair_text(g, *s, *d) + " is not an input edge with that weight";
        }
        const bool fresh = seen.emplace(*s, *d).second;
        if (fresh) {
            edges.push_back({*s, *d, t.weight});
        }
        if (!g.directed() && seen.emplace(*d, *s).second) {
            edges.push_back({*d, *s, t.weight});
        }
    }
    out = WeightedDigraph(g.labels(), std::move(edges), Semantics::Distance, g.directedness());
    return {};
}

} // namespace

PipelineResult run_pipeline(const RunConfig& config, const AlgebraRegistry& registry) {
    validate(config, registry);
    auto build = load_distance_graph(config);
    guard_size(build.graph, config);

    PipelineResult result;
    result.graph = std::move(build.graph);
    result.self_loops_dropped = build.self_loops_dropped;
    for (const auto& name : config.measures) {
        result.backbones.push_back(
            extract_backbone(result.graph, registry.get(name), config.tolerance, config.threads));
    }
    result.report = report(result.graph, result.backbones);
    result.report_json = report_to_json(result.report);
    result.report_json["self_loops_dropped"] = result.self_loops_dropped;
    result.report_json["tolerance"] = config.tolerance;
    return result;
}

fs::path backbone_path(const RunConfig& config, const std::string& measure) {
    return config.output_dir / ("backbone_" + measure + ".tsv");
}

fs::path classification_path(const RunConfig& config, const std::string& measure) {
    return config.output_dir / ("classification_" + measure + ".tsv");
}

fs::path closure_path(const RunConfig& config, const std::string& measure) {
    return config.output_dir / ("closure_" + measure + ".tsv");
}

fs::path report_path(const RunConfig& config) { return config.output_dir / "report.json"; }

int cmd_backbone(const RunConfig& config, const AlgebraRegistry& registry, std::ostream& out,
                 std::ostream& err) {
    try {
        auto result = run_pipeline(config, registry);
        std::error_code ec;
        fs::create_directories(config.output_dir, ec);
        if (ec) {
            throw Error(ErrorCode::Io, "cannot create '" + config.output_dir.string() + "': " + ec.message());
        }
        for (const auto& b : result.backbones) {
            auto edges = open_output(backbone_path(config, b.algebra));
            write_edge_list(edges, b.subgraph);
            auto classes = open_output(classification_path(config, b.algebra));
            write_classification_tsv(classes, result.graph, b);
            if (config.write_closure) {
                auto closure = open_output(closure_path(config, b.algebra));
                write_closure_tsv(closure, result.graph,
                                  closure_apsp(result.graph, registry.get(b.algebra), config.threads));
            }
        }
        auto report_file = open_output(report_path(config));
        report_file << result.report_json.dump(2) << '\n';

        if (result.self_loops_dropped > 0) {
            err << "warning: dropped " << result.self_loops_dropped << " self-loop(s)\n";
        }
        if (result.report.zero_length_edges > 0) {
            err << "warning: " << result.report.zero_length_edges
                << " zero-length edge(s) between distinct nodes\n";
        }
        out << "nodes\tedges\tdensity\ttau_m%\ttau_u%\tratio%\n" << format_table_row(result.report) << '\n';
        return kSuccess;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
}

int cmd_verify(const RunConfig& config, const AlgebraRegistry& registry, std::ostream& out,
               std::ostream& err) {
    WeightedDigraph g;
    try {
        validate(config, registry);
        g = load_distance_graph(config).graph;
        guard_size(g, config);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    try {
        for (const auto& name : config.measures) {
            const auto& alg = registry.get(name);
            WeightedDigraph stored;
            if (auto problem = read_backbone_file(backbone_path(config, name), g, stored); !problem.empty()) {
                err << "mismatch [" << name << "]: " << problem << '\n';
                return kVerificationFailure;
            }

            const auto check = verify_backbone_sufficiency(g, stored, alg, config.tolerance, config.threads);
            if (!check.sufficient) {
                err << "mismatch [" << name << "]: closure differs at " << pair_text(g, check.source, check.target)
                    << ": graph " << format_double(check.graph_length) << ", backbone "
                    << format_double(check.backbone_length) << '\n';
                return kVerificationFailure;
            }

            const auto fresh = extract_backbone(g, alg, config.tolerance, config.threads);
            const auto expected = fresh.subgraph.edges();
            const auto actual = stored.edges();
            if (!std::equal(expected.begin(), expected.end(), actual.begin(), actual.end())) {
                auto [e_it, a_it] = std::mismatch(expected.begin(), expected.end(), actual.begin(), actual.end());
                const auto& e = e_it != expected.end() ? *e_it : *a_it;
                err << "mismatch [" << name << "]: backbone edge set differs at "
                    << pair_text(g, e.source, e.target) << '\n';
                return kVerificationFailure;
            }

            if (g.node_count() <= kOracleNodeLimit) {
                const auto fast = closure_apsp(g, alg, config.threads);
                const auto slow = closure_distance_product(g, alg);
                for (std::size_t i = 0; i < g.node_count(); ++i) {
                    for (std::size_t j = 0; j < g.node_count(); ++j) {
                        const double a = fast.at(i, j);
                        const double b = slow.at(i, j);
                        const bool same = a == b || (std::isfinite(a) && std::isfinite(b) &&
                                                     std::abs(a - b) <= config.tolerance * std::max({1.0, a, b}));
                        if (!same) {
                            err << "mismatch [" << name << "]: oracle disagrees at "
                                << pair_text(g, static_cast<NodeIndex>(i), static_cast<NodeIndex>(j)) << '\n';
                            return kVerificationFailure;
                        }
                    }
                }
                out << name << ": ok (" << stored.edge_count() << " backbone edges, oracle checked)\n";
            } else {
                out << name << ": ok (" << stored.edge_count() << " backbone edges, oracle skipped above "
                    << kOracleNodeLimit << " nodes)\n";
            }
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kVerificationFailure;
    }
    return kSuccess;
}

nlohmann::ordered_json stats_json(const GraphBuild& build) {
    const auto& g = build.graph;
    nlohmann::ordered_json j;
    j["nodes"] = g.node_count();
    j["edges"] = g.edge_count();
    j["density"] = g.node_count() >= 2 ? nlohmann::ordered_json(density(g)) : nlohmann::ordered_json(nullptr);
    j["directed"] = g.directed();
    j["semantics"] = to_string(g.semantics());
    if (g.edge_count() > 0) {
        auto [lo, hi] = std::minmax_element(g.edges().begin(), g.edges().end(),
                                            [](const Edge& a, const Edge& b) { return a.weight < b.weight; });
        j["weight_min"] = lo->weight;
        j["weight_max"] = hi->weight;
    } else {
        j["weight_min"] = nullptr;
        j["weight_max"] = nullptr;
    }
    j["asymmetric_fraction"] = asymmetric_fraction(g);
    j["self_loops_dropped"] = build.self_loops_dropped;
    j["zero_length_edges"] = g.zero_length_edge_count();
    return j;
}

int cmd_stats(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        const auto build = read_edge_list(config.input, load_options(config));
        out << stats_json(build).dump(2) << '\n';
        return kSuccess;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
}

namespace {

void add_input_options(CLI::App& cmd, RunConfig& config) {
    cmd.add_option("-i,--input", config.input, "Edge list (source, target, weight)")->required();
    cmd.add_option("--format", config.format, "Input delimiter")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, EdgeListFormat>{
                {"auto", EdgeListFormat::Auto}, {"tsv", EdgeListFormat::Tsv}, {"csv", EdgeListFormat::Csv}},
            CLI::ignore_case));

    auto* proximity = cmd.add_flag_callback(
        "--proximity", [&config] { config.semantics = Semantics::Proximity; }, "Weights are proximities in (0, 1]");
    auto* distance = cmd.add_flag_callback(
        "--distance", [&config] { config.semantics = Semantics::Distance; }, "Weights are distances (default)");
    proximity->excludes(distance);

    auto* undirected = cmd.add_flag_callback(
        "--undirected", [&config] { config.directedness = Directedness::Undirected; },
        "Each row is an undirected pair");
    auto* directed = cmd.add_flag_callback(
        "--directed", [&config] { config.directedness = Directedness::Directed; }, "Rows are arcs (default)");
    undirected->excludes(directed);

    cmd.add_option("--normalize", config.normalization, "Divide proximity input by its maximum")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, Normalization>{{"none", Normalization::None}, {"max", Normalization::Max}},
            CLI::ignore_case));
}

void add_run_options(CLI::App& cmd, RunConfig& config) {
    add_input_options(cmd, config);
    cmd.add_option("-m,--measure", config.measures, "Path length measures: metric, ultrametric")
        ->delimiter(',')
        ->capture_default_str();
    cmd.add_option("--tol", config.tolerance, "Relative tolerance for triangular edges")->capture_default_str();
    cmd.add_option("-o,--output", config.output_dir, "Artifact directory")->capture_default_str();
    cmd.add_option("-t,--threads", config.threads, "Worker threads (0: DBB_THREADS or all cores)");
    cmd.add_flag("--force", config.force, "Allow graphs above the large-graph guard");
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Distance backbones of weighted directed graphs"};
    app.require_subcommand(1);

    RunConfig config;
    auto* backbone = app.add_subcommand("backbone", "Extract backbones and write the report");
    add_run_options(*backbone, config);
    backbone->add_flag("--write-closure", config.write_closure, "Also export closure lengths");

    auto* verify = app.add_subcommand("verify", "Check backbone artifacts against the input");
    add_run_options(*verify, config);

    auto* stats = app.add_subcommand("stats", "Descriptive statistics without closures");
    add_input_options(*stats, config);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kSuccess : kInputError;
    }

    const AlgebraRegistry registry;
    if (*backbone) {
        return cmd_backbone(config, registry, out, err);
    }
    if (*verify) {
        return cmd_verify(config, registry, out, err);
    }
    return cmd_stats(config, out, err);
}

} // namespace dbb::cli
