#pragma once

#include <cctype>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "specgraph/embedding.hpp"
#include "specgraph/graph.hpp"

namespace specgraph::io {

enum class GraphFileFormat { edge_csv, graph_json };

inline const char* to_string(GraphFileFormat f) {
    return f == GraphFileFormat::edge_csv ? "edge_csv" : "graph_json";
}

inline GraphFileFormat graph_format_from_string(const std::string& s) {
    if (s == "edge_csv") return GraphFileFormat::edge_csv;
    if (s == "graph_json") return GraphFileFormat::graph_json;
    fail(ErrorCode::invalid_argument, "unknown graph file format '" + s + "'");
}

struct GraphFile {
    GraphFileFormat format = GraphFileFormat::edge_csv;
    std::string path;
};

namespace detail {

inline std::string format_real(double v, int significant) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", significant, v);
    return buf;
}

inline std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

inline std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(trim(cur));
    return fields;
}

[[noreturn]] inline void parse_fail(int line, const std::string& what) {
    fail(ErrorCode::parse_error, "line " + std::to_string(line) + ": " + what);
}

inline int parse_vertex(const std::string& field, int line) {
    if (field.empty()) parse_fail(line, "empty vertex index");
    for (char c : field)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            parse_fail(line, "vertex index '" + field + "' is not a non-negative integer");
    try {
        return std::stoi(field);
    } catch (const std::exception&) {
        parse_fail(line, "vertex index '" + field + "' out of range");
    }
}

inline double parse_weight(const std::string& field, int line) {
    std::size_t used = 0;
    double w = 0.0;
    try {
        w = std::stod(field, &used);
    } catch (const std::exception&) {
        parse_fail(line, "weight '" + field + "' is not a number");
    }
    if (used != field.size()) parse_fail(line, "weight '" + field + "' is not a number");
    if (!std::isfinite(w)) parse_fail(line, "weight '" + field + "' is not finite");
    return w;
}

}  // namespace detail

/// Parse the `src,dst,weight` CSV dialect: 0-based integer vertices, decimal
/// weights, LF endings, n inferred as 1 + max index. Structural problems and
/// per-edge invariant breaches both surface as ParseError naming the 1-based
/// line number.
inline Graph load_edge_csv(std::istream& in, bool directed) {
    std::string line;
    int line_no = 0;
    std::vector<Edge> edges;
    std::vector<int> edge_lines;
    bool saw_header = false;
    int max_index = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (detail::trim(line).empty()) continue;
        if (!saw_header) {
            if (detail::trim(line) != "src,dst,weight")
                detail::parse_fail(line_no, "expected header 'src,dst,weight'");
            saw_header = true;
            continue;
        }
        std::vector<std::string> fields = detail::split_fields(line);
        if (fields.size() != 3)
            detail::parse_fail(line_no, "expected 3 fields, got " +
                                            std::to_string(fields.size()));
        const int src = detail::parse_vertex(fields[0], line_no);
        const int dst = detail::parse_vertex(fields[1], line_no);
        const double w = detail::parse_weight(fields[2], line_no);
        if (src == dst)
            detail::parse_fail(line_no, "SelfLoop: vertex " + std::to_string(src));
        if (!(w > 0.0))
            detail::parse_fail(line_no, "NonPositiveWeight: " + fields[2]);
        edges.emplace_back(src, dst, w);
        edge_lines.push_back(line_no);
        max_index = std::max({max_index, src, dst});
    }
    if (!saw_header) detail::parse_fail(line_no == 0 ? 1 : line_no, "missing header line");
    // duplicate detection here so the offending line can be named
    std::set<std::pair<int, int>> seen;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        auto [s, d, w] = edges[i];
        std::pair<int, int> key =
            directed ? std::make_pair(s, d) : std::make_pair(std::min(s, d), std::max(s, d));
        if (!seen.insert(key).second)
            detail::parse_fail(edge_lines[i], "DuplicateEdge: " + std::to_string(s) + "," +
                                                  std::to_string(d));
    }
    return build_graph(max_index + 1, directed, edges);
}

/// Parse the JSON dialect {"n", "directed", "edges": [[src,dst,weight],...]}.
/// The file's own "directed" flag is authoritative; graph invariants surface
/// through build_graph's specific error codes.
inline Graph load_graph_json(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorCode::parse_error, e.what());
    }
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("directed") ||
        !doc.contains("edges"))
        fail(ErrorCode::parse_error, "graph JSON needs keys n, directed, edges");
    if (!doc["n"].is_number_integer() || !doc["directed"].is_boolean() ||
        !doc["edges"].is_array())
        fail(ErrorCode::parse_error, "graph JSON keys have wrong types");
    std::vector<Edge> edges;
    for (const auto& e : doc["edges"]) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() ||
            !e[1].is_number_integer() || !e[2].is_number())
            fail(ErrorCode::parse_error, "each edge must be [src, dst, weight]");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>(), e[2].get<double>());
    }
    return build_graph(doc["n"].get<int>(), doc["directed"].get<bool>(), edges);
}

inline Graph load_graph(const GraphFile& file, bool directed = false) {
    std::ifstream in(file.path);
    if (!in) fail(ErrorCode::io_error, "cannot open '" + file.path + "' for reading");
    if (file.format == GraphFileFormat::edge_csv) return load_edge_csv(in, directed);
    return load_graph_json(in);
}

/// Edge CSV with full-precision weights (17 significant digits), so a
/// save/load round-trip reproduces the weight matrix bit-for-bit.
inline void write_edge_csv(std::ostream& out, const Graph& g) {
    out << "src,dst,weight\n";
    for (const Edge& e : edge_list(g))
        out << std::get<0>(e) << ',' << std::get<1>(e) << ','
            << detail::format_real(std::get<2>(e), 17) << '\n';
}

inline nlohmann::json graph_to_json(const Graph& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (const Edge& e : edge_list(g))
        edges.push_back({std::get<0>(e), std::get<1>(e), std::get<2>(e)});
    return {{"n", g.n}, {"directed", g.directed}, {"edges", edges}};
}

inline void save_graph(const Graph& g, const GraphFile& file) {
    std::ofstream out(file.path);
    if (!out) fail(ErrorCode::io_error, "cannot open '" + file.path + "' for writing");
    if (file.format == GraphFileFormat::edge_csv)
        write_edge_csv(out, g);
    else
        out << graph_to_json(g).dump() << '\n';
    if (!out) fail(ErrorCode::io_error, "write to '" + file.path + "' failed");
}

/// Embedding CSV: header vertex,q1..qM[,cluster]; coordinates at 12
/// significant digits; optional trailing integer cluster column.
inline void write_embedding(std::ostream& out, const embedding::SpectralEmbedding& e,
                            const std::optional<embedding::ClusterAssignment>& labels) {
    out << "vertex";
    for (int j = 1; j <= e.coords.cols(); ++j) out << ",q" << j;
    if (labels) out << ",cluster";
    out << '\n';
    for (int v = 0; v < e.coords.rows(); ++v) {
        out << v;
        for (int j = 0; j < e.coords.cols(); ++j)
            out << ',' << detail::format_real(e.coords(v, j), 12);
        if (labels) out << ',' << labels->labels[v];
        out << '\n';
    }
}

inline void save_embedding(const embedding::SpectralEmbedding& e,
                           const std::optional<embedding::ClusterAssignment>& labels,
                           const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::io_error, "cannot open '" + path + "' for writing");
    write_embedding(out, e, labels);
    if (!out) fail(ErrorCode::io_error, "write to '" + path + "' failed");
}

struct EmbeddingFile {
    Eigen::MatrixXd coords;
    std::optional<std::vector<int>> labels;
};

/// Reader for the embedding CSV dialect (round-trip checks).
inline EmbeddingFile load_embedding_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::io_error, "cannot open '" + path + "' for reading");
    std::string line;
    int line_no = 0;
    bool has_cluster = false;
    int m = -1;
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (detail::trim(line).empty()) continue;
        std::vector<std::string> fields = detail::split_fields(line);
        if (line_no == 1) {
            if (fields.size() < 2 || fields[0] != "vertex")
                detail::parse_fail(line_no, "expected header vertex,q1..qM[,cluster]");
            has_cluster = fields.back() == "cluster";
            m = static_cast<int>(fields.size()) - 1 - (has_cluster ? 1 : 0);
            continue;
        }
        if (static_cast<int>(fields.size()) != 1 + m + (has_cluster ? 1 : 0))
            detail::parse_fail(line_no, "wrong field count");
        std::vector<double> coords(m);
        for (int j = 0; j < m; ++j) coords[j] = detail::parse_weight(fields[1 + j], line_no);
        rows.push_back(std::move(coords));
        if (has_cluster) labels.push_back(detail::parse_vertex(fields.back(), line_no));
    }
    EmbeddingFile out;
    out.coords.resize(static_cast<int>(rows.size()), m);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < m; ++j) out.coords(static_cast<int>(i), j) = rows[i][j];
    if (has_cluster) out.labels = std::move(labels);
    return out;
}

}  // namespace specgraph::io
