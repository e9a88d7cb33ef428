#include "commands.hpp"

#include "support/generators.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using namespace dbb;
using namespace dbb::testing;

namespace {

class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = fs::temp_directory_path() / ("dbb_cli_" + std::to_string(rd()) + std::to_string(rd()));
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    const fs::path& path() const { return path_; }
    fs::path operator/(const std::string& name) const { return path_ / name; }

private:
    fs::path path_;
};

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "dbb");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

void write_graph(const fs::path& path, const WeightedDigraph& g) {
    std::ofstream out(path);
    write_edge_list(out, g);
}

void write_text(const fs::path& path, const std::string& text) { std::ofstream(path) << text; }

std::string read_text(const fs::path& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

nlohmann::json read_json(const fs::path& path) { return nlohmann::json::parse(read_text(path)); }

const std::string kGiraffe = (fs::path(DBB_TEST_DATA_DIR) / "giraffe_like.tsv").string();

} // namespace

TEST(Cli, GiraffeEndToEnd) {
    TempDir dir;
    const auto r = run_cli({"backbone", "-i", kGiraffe, "--proximity", "--directed", "--normalize", "max", "-o",
                            dir.path().string(), "-t", "2"});
    ASSERT_EQ(r.code, cli::kSuccess) << r.err;
    EXPECT_NE(r.out.find("6\t30\t1\t76.67\t30.00\t39.13"), std::string::npos) << r.out;

    const auto report = read_json(dir / "report.json");
    EXPECT_EQ(report["nodes"], 6);
    EXPECT_EQ(report["edges"], 30);
    EXPECT_EQ(report["measures"]["metric"]["backbone_edges"], 23);
    EXPECT_EQ(report["measures"]["ultrametric"]["backbone_edges"], 9);
    EXPECT_TRUE(fs::exists(dir / "backbone_metric.tsv"));
    EXPECT_TRUE(fs::exists(dir / "classification_ultrametric.tsv"));
    EXPECT_FALSE(fs::exists(dir / "closure_metric.tsv"));

    const auto v = run_cli({"verify", "-i", kGiraffe, "--proximity", "--normalize", "max", "-o",
                            dir.path().string()});
    EXPECT_EQ(v.code, cli::kSuccess) << v.err;
    EXPECT_NE(v.out.find("metric: ok"), std::string::npos) << v.out;
}

TEST(Cli, UndirectedAsymmetricInputIsAnInputError) {
    const auto r = run_cli({"backbone", "-i", kGiraffe, "--proximity", "--undirected", "--normalize", "max", "-o",
                            (fs::temp_directory_path() / "dbb_never_written").string()});
    EXPECT_EQ(r.code, cli::kInputError);
    EXPECT_NE(r.err.find("error:"), std::string::npos);
}

TEST(Cli, DistanceInputRejectsNormalization) {
    const auto r = run_cli({"stats", "-i", kGiraffe, "--normalize", "max"});
    EXPECT_EQ(r.code, cli::kInputError);
}

TEST(Cli, BadArgumentsAreInputErrors) {
    EXPECT_EQ(run_cli({}).code, cli::kInputError);
    EXPECT_EQ(run_cli({"backbone"}).code, cli::kInputError);
    EXPECT_EQ(run_cli({"stats", "-i", kGiraffe, "--format", "xml"}).code, cli::kInputError);
    EXPECT_EQ(run_cli({"backbone", "-i", kGiraffe, "--proximity", "--distance"}).code, cli::kInputError);
    EXPECT_EQ(run_cli({"backbone", "-i", kGiraffe, "-m", "euclid"}).code, cli::kInputError);
    EXPECT_EQ(run_cli({"backbone", "-i", kGiraffe, "--tol", "-1"}).code, cli::kInputError);
    EXPECT_EQ(run_cli({"--help"}).code, cli::kSuccess);
}

TEST(Cli, PlanarGraphKeepsAlmostEverything) {
    TempDir dir;
    write_graph(dir / "planar.tsv", planar_euclidean_graph(7, 12));
    const auto r = run_cli({"backbone", "-i", (dir / "planar.tsv").string(), "-m", "metric", "--tol", "1e-6", "-o",
                            (dir / "out").string(), "--write-closure"});
    ASSERT_EQ(r.code, cli::kSuccess) << r.err;
    const auto report = read_json(dir / "out" / "report.json");
    EXPECT_GE(report["measures"]["metric"]["tau"].get<double>(), 0.99);
    EXPECT_TRUE(report["ratio_u_over_m"].is_null());
    EXPECT_TRUE(fs::exists(dir / "out" / "closure_metric.tsv"));
    EXPECT_FALSE(fs::exists(dir / "out" / "backbone_ultrametric.tsv"));
}

TEST(Cli, VerifyDetectsTamperedBackbone) {
    TempDir dir;
    // each chain step is the unique geodesic of its pair
    write_text(dir / "chain.tsv", "a\tb\t1\nb\tc\t1\nc\td\t1\na\tc\t5\nb\td\t5\n");
    const auto input = (dir / "chain.tsv").string();
    const auto out = (dir / "out").string();
    ASSERT_EQ(run_cli({"backbone", "-i", input, "-o", out}).code, cli::kSuccess);
    EXPECT_EQ(run_cli({"verify", "-i", input, "-o", out}).code, cli::kSuccess);

    write_text(dir / "out" / "backbone_metric.tsv", "source\ttarget\tweight\na\tb\t1\nc\td\t1\n");
    const auto dropped = run_cli({"verify", "-i", input, "-o", out});
    EXPECT_EQ(dropped.code, cli::kVerificationFailure);
    EXPECT_NE(dropped.err.find("(a -> c)"), std::string::npos) << dropped.err;

    // a redundant extra edge keeps the closure but changes the edge set
    write_text(dir / "out" / "backbone_metric.tsv", "source\ttarget\tweight\na\tb\t1\nb\tc\t1\nc\td\t1\na\tc\t5\n");
    const auto extra = run_cli({"verify", "-i", input, "-o", out});
    EXPECT_EQ(extra.code, cli::kVerificationFailure);
    EXPECT_NE(extra.err.find("edge set"), std::string::npos) << extra.err;

    write_text(dir / "out" / "backbone_metric.tsv", "source\ttarget\tweight\na\tb\t2\n");
    EXPECT_EQ(run_cli({"verify", "-i", input, "-o", out}).code, cli::kVerificationFailure);

    fs::remove(dir / "out" / "backbone_metric.tsv");
    EXPECT_EQ(run_cli({"verify", "-i", input, "-o", out}).code, cli::kVerificationFailure);
}

TEST(Cli, EmptyInput) {
    TempDir dir;
    write_text(dir / "empty.tsv", "source\ttarget\tweight\n");
    const auto input = (dir / "empty.tsv").string();
    const auto out = (dir / "out").string();
    const auto b = run_cli({"backbone", "-i", input, "-o", out});
    ASSERT_EQ(b.code, cli::kSuccess) << b.err;
    EXPECT_TRUE(read_json(dir / "out" / "report.json")["density"].is_null());
    EXPECT_EQ(run_cli({"verify", "-i", input, "-o", out}).code, cli::kSuccess);
}

TEST(Cli, WarningsForSelfLoopsAndZeroLengthEdges) {
    TempDir dir;
    write_text(dir / "loops.tsv", "a\ta\t1\na\tb\t0\nb\tc\t2\n");
    const auto r = run_cli({"backbone", "-i", (dir / "loops.tsv").string(), "-o", (dir / "out").string()});
    ASSERT_EQ(r.code, cli::kSuccess);
    EXPECT_NE(r.err.find("self-loop"), std::string::npos);
    EXPECT_NE(r.err.find("zero-length"), std::string::npos);
    EXPECT_EQ(read_json(dir / "out" / "report.json")["self_loops_dropped"], 1);
}

TEST(Cli, StatsAsymmetry) {
    TempDir dir;
    write_text(dir / "one_way.tsv", "a\tb\t1\n");
    write_text(dir / "two_way.tsv", "a\tb\t1\nb\ta\t3\n");
    auto stats = [](const fs::path& p) {
        const auto r = run_cli({"stats", "-i", p.string()});
        EXPECT_EQ(r.code, cli::kSuccess) << r.err;
        return nlohmann::json::parse(r.out);
    };
    EXPECT_EQ(stats(dir / "one_way.tsv")["asymmetric_fraction"].get<double>(), 1.0);
    const auto two = stats(dir / "two_way.tsv");
    EXPECT_EQ(two["asymmetric_fraction"].get<double>(), 0.0);
    EXPECT_EQ(two["weight_max"].get<double>(), 3.0);
    EXPECT_EQ(two["semantics"], "distance");

    // node and edge counts of a large airline network, 26.65% one-way
    write_graph(dir / "airports.tsv", mixed_reciprocity_graph(1, 1075, 6933, 5040));
    const auto airports = stats(dir / "airports.tsv");
    EXPECT_EQ(airports["nodes"], 1075);
    EXPECT_EQ(airports["edges"], 18906);
    EXPECT_NEAR(100 * airports["asymmetric_fraction"].get<double>(), 26.65, 0.01);
    EXPECT_EQ(round_significant(airports["density"].get<double>(), 3), 0.0164);
}

TEST(Cli, ReportIsIdenticalAcrossThreadCounts) {
    TempDir dir;
    write_graph(dir / "g.tsv", random_digraph(5, 60, 0.3));
    std::string first;
    for (const char* threads : {"1", "4", "8"}) {
        const auto out = dir / (std::string("out") + threads);
        ASSERT_EQ(run_cli({"backbone", "-i", (dir / "g.tsv").string(), "-t", threads, "-o", out.string()}).code,
                  cli::kSuccess);
        const auto text = read_text(out / "report.json") + read_text(out / "backbone_metric.tsv") +
                          read_text(out / "classification_ultrametric.tsv");
        if (first.empty()) first = text;
        EXPECT_EQ(text, first) << threads;
    }
}

TEST(Cli, BackboneOfBackboneIsFullyTriangular) {
    TempDir dir;
    write_graph(dir / "g.tsv", random_digraph(8, 40, 0.4));
    ASSERT_EQ(run_cli({"backbone", "-i", (dir / "g.tsv").string(), "-m", "metric", "-o", (dir / "a").string()}).code,
              cli::kSuccess);
    ASSERT_EQ(run_cli({"backbone", "-i", (dir / "a" / "backbone_metric.tsv").string(), "-m", "metric", "-o",
                       (dir / "b").string()})
                  .code,
              cli::kSuccess);
    EXPECT_EQ(read_json(dir / "b" / "report.json")["measures"]["metric"]["tau"].get<double>(), 1.0);
}

TEST(Cli, LargeGraphGuard) {
    TempDir dir;
    {
        std::ofstream out(dir / "chain.tsv");
        for (std::size_t i = 0; i < cli::kLargeGraphNodes; ++i) out << "v" << i << "\tv" << i + 1 << "\t1\n";
    }
    const auto r = run_cli({"backbone", "-i", (dir / "chain.tsv").string(), "-o", (dir / "out").string()});
    EXPECT_EQ(r.code, cli::kInputError);
    EXPECT_NE(r.err.find("--force"), std::string::npos) << r.err;
    EXPECT_EQ(run_cli({"stats", "-i", (dir / "chain.tsv").string()}).code, cli::kSuccess);
}
