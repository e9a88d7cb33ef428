#include "dbb/io.hpp"

#include "dbb/error.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string_view>

namespace dbb {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    s = s.substr(first, last - first + 1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
        s = s.substr(1, s.size() - 2);
    }
    return s;
}

char detect_delimiter(std::string_view line) {
    if (line.find('\t') != std::string_view::npos) {
        return '\t';
    }
    if (line.find(',') != std::string_view::npos) {
        return ',';
    }
    return ' ';
}

std::vector<std::string_view> split(std::string_view line, char delimiter) {
    std::vector<std::string_view> out;
    if (delimiter == ' ') {
        std::size_t pos = 0;
        while (pos < line.size()) {
            pos = line.find_first_not_of(" \t\r", pos);
            if (pos == std::string_view::npos) {
                break;
            }
            const auto end = std::min(line.find_first_of(" \t\r", pos), line.size());
            out.push_back(line.substr(pos, end - pos));
            pos = end;
        }
        return out;
    }
    std::size_t start = 0;
    while (true) {
        const auto end = line.find(delimiter, start);
        out.push_back(trim(line.substr(start, end == std::string_view::npos ? end : end - start)));
        if (end == std::string_view::npos) {
            break;
        }
        start = end + 1;
    }
    return out;
}

std::optional<double> parse_double(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    double value = 0.0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc() || ptr != end || s.empty()) {
        return std::nullopt;
    }
    return value;
}

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
    }
    return in;
}

} // namespace

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::vector<EdgeTriple> parse_edge_list(std::istream& in, EdgeListFormat format) {
    std::vector<EdgeTriple> triples;
    std::optional<char> delimiter;
    if (format == EdgeListFormat::Tsv) {
        delimiter = '\t';
    } else if (format == EdgeListFormat::Csv) {
        delimiter = ',';
    }

    std::string raw;
    std::size_t line_no = 0;
    bool first_row = true;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (line_no == 1 && line.substr(0, 3) == "\xEF\xBB\xBF") {
            line.remove_prefix(3);
        }
        const auto content = trim(line);
        if (content.empty() || content.front() == '#') {
            continue;
        }
        if (!delimiter) {
            delimiter = detect_delimiter(line);
        }
        const auto fields = split(line, *delimiter);
        const bool header_candidate = first_row;
        first_row = false;
        if (fields.size() < 3) {
            if (header_candidate) {
                continue;
            }
            throw Error(ErrorCode::InvalidInput,
                        at_line(line_no) + "expected 3 columns (source, target, weight), found " +
                            std::to_string(fields.size()));
        }
        if (fields.size() > 3) {
            throw Error(ErrorCode::InvalidInput, at_line(line_no) + "too many columns");
        }
        const auto weight = parse_double(fields[2]);
        if (!weight) {
            if (header_candidate) {
                continue;
            }
            throw Error(ErrorCode::InvalidInput,
                        at_line(line_no) + "weight '" + std::string(fields[2]) + "' is not a number");
        }
        if (fields[0].empty() || fields[1].empty()) {
            throw Error(ErrorCode::InvalidInput, at_line(line_no) + "empty node label");
        }
        triples.push_back({std::string(fields[0]), std::string(fields[1]), *weight, line_no});
    }
    if (in.bad()) {
        throw Error(ErrorCode::Io, "read error after line " + std::to_string(line_no));
    }
    return triples;
}

void normalize_max(std::vector<EdgeTriple>& triples) {
    double largest = 0.0;
    for (const auto& t : triples) {
        if (t.source != t.target) {
            largest = std::max(largest, t.weight);
        }
    }
    if (largest <= 0.0) {
        return;
    }
    for (auto& t : triples) {
        t.weight /= largest;
    }
}

GraphBuild read_edge_list(std::istream& in, const EdgeListOptions& options) {
    auto triples = parse_edge_list(in, options.format);
    if (options.normalization == Normalization::Max) {
        if (options.semantics != Semantics::Proximity) {
            throw Error(ErrorCode::InvalidInput, "max normalization applies to proximity input only");
        }
        normalize_max(triples);
    }
    return build_graph(triples, options.semantics, options.directedness);
}

GraphBuild read_edge_list(const std::filesystem::path& path, const EdgeListOptions& options) {
    auto in = open_input(path);
    try {
        return read_edge_list(in, options);
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.what());
    }
}

void write_edge_list(std::ostream& out, const WeightedDigraph& g) {
    out << "source\ttarget\tweight\n";
    for (const auto& e : g.edges()) {
        if (!g.directed() && e.source > e.target) {
            continue;
        }
        out << g.label(e.source) << '\t' << g.label(e.target) << '\t' << format_double(e.weight) << '\n';
    }
}

void write_closure_tsv(std::ostream& out, const WeightedDigraph& g, const ClosureResult& closure) {
    if (closure.size() != g.node_count()) {
        throw Error(ErrorCode::ClosureMismatch, "closure size does not match graph");
    }
    out << "source\ttarget\tclosure_length\n";
    for (std::size_t i = 0; i < closure.size(); ++i) {
        for (std::size_t j = 0; j < closure.size(); ++j) {
            if (i != j && closure.reachable(i, j)) {
                out << g.label(static_cast<NodeIndex>(i)) << '\t' << g.label(static_cast<NodeIndex>(j))
                    << '\t' << format_double(closure.at(i, j)) << '\n';
            }
        }
    }
}

void write_classification_tsv(std::ostream& out, const WeightedDigraph& g, const Backbone& backbone) {
    out << "source\ttarget\tweight\tclass\tclosure_length\n";
    for (const auto& c : backbone.classification) {
        out << g.label(c.source) << '\t' << g.label(c.target) << '\t' << format_double(c.weight) << '\t'
            << to_string(c.edge_class) << '\t' << format_double(c.closure_length) << '\n';
    }
}

std::vector<ClassificationRow> read_classification_tsv(std::istream& in) {
    std::vector<ClassificationRow> rows;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (trim(raw).empty()) {
            continue;
        }
        const auto fields = split(raw, '\t');
        if (line_no == 1 && !fields.empty() && fields[0] == "source") {
            continue;
        }
        if (fields.size() != 5) {
            throw Error(ErrorCode::InvalidInput, at_line(line_no) + "expected 5 columns");
        }
        ClassificationRow row;
        row.source = fields[0];
        row.target = fields[1];
        const auto w = parse_double(fields[2]);
        const auto c = parse_double(fields[4]);
        if (!w || !c) {
            throw Error(ErrorCode::InvalidInput, at_line(line_no) + "malformed number");
        }
        row.weight = *w;
        row.closure_length = *c;
        if (fields[3] == "triangular") {
            row.edge_class = EdgeClass::Triangular;
        } else if (fields[3] == "semi-triangular") {
            row.edge_class = EdgeClass::SemiTriangular;
        } else {
            throw Error(ErrorCode::InvalidInput, at_line(line_no) + "unknown class '" + std::string(fields[3]) + "'");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::ordered_json graph_to_json(const WeightedDigraph& g) {
    nlohmann::ordered_json j;
    j["nodes"] = g.labels();
    auto edges = nlohmann::ordered_json::array();
    for (const auto& e : g.edges()) {
        if (!g.directed() && e.source > e.target) {
            continue;
        }
        edges.push_back({{"s", e.source}, {"t", e.target}, {"w", e.weight}});
    }
    j["edges"] = std::move(edges);
    j["semantics"] = to_string(g.semantics());
    j["directed"] = g.directed();
    return j;
}

WeightedDigraph graph_from_json(const nlohmann::json& j) {
    try {
        auto labels = j.at("nodes").get<std::vector<std::string>>();
        const auto semantics_name = j.at("semantics").get<std::string>();
        Semantics semantics;
        if (semantics_name == "distance") {
            semantics = Semantics::Distance;
        } else if (semantics_name == "proximity") {
            semantics = Semantics::Proximity;
        } else {
            throw Error(ErrorCode::InvalidInput, "unknown semantics '" + semantics_name + "'");
        }
        const bool directed = j.at("directed").get<bool>();

        std::map<std::pair<NodeIndex, NodeIndex>, double> entries;
        for (const auto& e : j.at("edges")) {
            const auto s = e.at("s").get<NodeIndex>();
            const auto t = e.at("t").get<NodeIndex>();
            const auto w = e.at("w").get<double>();
            if (!entries.emplace(std::pair(s, t), w).second) {
                throw Error(ErrorCode::DuplicateEdge, "duplicate edge in graph JSON");
            }
            if (!directed) {
                entries.emplace(std::pair(t, s), w);
            }
        }
        std::vector<Edge> edges;
        edges.reserve(entries.size());
        for (const auto& [key, w] : entries) {
            edges.push_back({key.first, key.second, w});
        }
        return WeightedDigraph(std::move(labels), std::move(edges), semantics,
                               directed ? Directedness::Directed : Directedness::Undirected);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidInput, std::string("malformed graph JSON: ") + e.what());
    }
}

nlohmann::ordered_json report_to_json(const BackboneReport& r) {
    nlohmann::ordered_json j;
    j["nodes"] = r.nodes;
    j["edges"] = r.edges;
    j["density"] = r.density ? nlohmann::ordered_json(*r.density) : nlohmann::ordered_json(nullptr);
    j["directed"] = r.directed;
    j["zero_length_edges"] = r.zero_length_edges;
    auto measures = nlohmann::ordered_json::object();
    for (const auto& m : r.measures) {
        measures[m.name] = {{"tau", m.tau}, {"sigma", m.sigma}, {"backbone_edges", m.backbone_edges}};
    }
    j["measures"] = std::move(measures);
    j["ratio_u_over_m"] =
        r.ratio_u_over_m ? nlohmann::ordered_json(*r.ratio_u_over_m) : nlohmann::ordered_json(nullptr);
    return j;
}

} // namespace dbb
