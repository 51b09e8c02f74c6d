#pragma once

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "specgraph/cuts.hpp"
#include "specgraph/dft.hpp"
#include "specgraph/embedding.hpp"
#include "specgraph/errors.hpp"
#include "specgraph/graph.hpp"
#include "specgraph/io.hpp"
#include "specgraph/polynomial.hpp"
#include "specgraph/properties.hpp"
#include "specgraph/sampling.hpp"
#include "specgraph/spectral.hpp"

namespace specgraph::cli {

namespace detail {

struct InputOpts {
    std::string path;
    std::string format;  // empty = infer from extension
    bool directed = false;
};

/// ".json" means graph_json; anything else is edge CSV. --format overrides.
inline io::GraphFileFormat resolve_format(const std::string& flag, const std::string& path) {
    if (!flag.empty()) return io::graph_format_from_string(flag);
    std::string ext = std::filesystem::path(path).extension().string();
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return ext == ".json" ? io::GraphFileFormat::graph_json : io::GraphFileFormat::edge_csv;
}

inline void add_input(CLI::App* cmd, InputOpts& in, const std::string& name = "graph") {
    cmd->add_option(name, in.path, "input graph file")->required();
    cmd->add_option("--format", in.format, "input file format (default: from extension)")
        ->check(CLI::IsMember({"edge_csv", "graph_json"}));
    cmd->add_flag("--directed", in.directed, "treat edge-CSV input as directed");
}

inline Graph load_input(const InputOpts& in) {
    return io::load_graph({resolve_format(in.format, in.path), in.path}, in.directed);
}

/// --seed beats SPECTRAL_GRAPH_SEED beats 42.
inline unsigned long long resolve_seed(const CLI::Option* opt, unsigned long long flag_value,
                                       std::ostream& err) {
    if (opt != nullptr && opt->count() > 0) return flag_value;
    if (const char* env = std::getenv("SPECTRAL_GRAPH_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            err << "warning: SPECTRAL_GRAPH_SEED is not an integer, using 42\n";
        }
    }
    return 42;
}

inline nlohmann::json to_json(const Eigen::VectorXd& v) {
    nlohmann::json a = nlohmann::json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

inline nlohmann::json rows_to_json(const Eigen::MatrixXd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

inline nlohmann::json edges_to_json(const std::vector<Edge>& edges) {
    nlohmann::json a = nlohmann::json::array();
    for (const Edge& e : edges) a.push_back({std::get<0>(e), std::get<1>(e), std::get<2>(e)});
    return a;
}

inline void put_partition(nlohmann::json& doc, const cuts::Partition& p) {
    doc["sets"] = p.sets;
    doc["sizes"] = p.sizes;
    doc["volumes"] = p.volumes;
}

inline std::vector<int> ascending_fiedler_order(const Graph& g) {
    spectral::EigenDecomposition eig = spectral::eig_symmetric(
        laplacian(g, LaplacianVariant::standard()), spectral::MatrixVariant::laplacian);
    std::vector<int> order(g.n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return eig.eigenvectors(a, 1) < eig.eigenvectors(b, 1);
    });
    return order;
}

inline embedding::EmbeddingMap embedding_map_from_string(const std::string& s) {
    if (s == "laplacian") return embedding::EmbeddingMap::laplacian;
    if (s == "generalized") return embedding::EmbeddingMap::generalized;
    if (s == "normalized") return embedding::EmbeddingMap::normalized;
    if (s == "commute_time") return embedding::EmbeddingMap::commute_time;
    if (s == "diffusion") return embedding::EmbeddingMap::diffusion;
    if (s == "cumulative_diffusion") return embedding::EmbeddingMap::cumulative_diffusion;
    fail(ErrorCode::invalid_argument, "unknown embedding map '" + s + "'");
}

inline embedding::NormScheme norm_scheme_from_string(const std::string& s) {
    if (s == "none") return embedding::NormScheme::none;
    if (s == "unit_norm") return embedding::NormScheme::unit_norm;
    if (s == "sign") return embedding::NormScheme::sign;
    if (s == "sign_mid") return embedding::NormScheme::sign_mid;
    if (s == "minmax") return embedding::NormScheme::minmax;
    fail(ErrorCode::invalid_argument, "unknown normalization scheme '" + s + "'");
}

}  // namespace detail

/// Full command-line front end. Returns the process exit code: 0 success,
/// 2 usage error (diagnostics on err), 1 computation error.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"spectral graph analysis toolkit"};
    app.name("specgraph");
    app.require_subcommand(1);

    // --- spectrum ---------------------------------------------------------
    CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues of a graph matrix");
    detail::InputOpts spec_in;
    detail::add_input(spectrum, spec_in);
    std::string spec_variant = "laplacian";
    spectrum->add_option("--variant", spec_variant, "matrix whose spectrum to compute")
        ->check(CLI::IsMember({"adjacency", "laplacian", "normalized_laplacian",
                               "generalized_laplacian", "normalized_weight"}));
    bool spec_vectors = false;
    spectrum->add_flag("--vectors", spec_vectors, "also emit eigenvectors (row per vertex)");

    // --- cluster ----------------------------------------------------------
    CLI::App* cluster = app.add_subcommand("cluster", "spectral clustering");
    detail::InputOpts clu_in;
    detail::add_input(cluster, clu_in);
    std::string clu_variant = "laplacian";
    cluster->add_option("--variant", clu_variant, "eigenvector source")
        ->check(CLI::IsMember({"laplacian", "generalized", "normalized"}));
    int clu_k = 2;
    cluster->add_option("-k,--clusters", clu_k, "number of clusters")
        ->check(CLI::Range(2, 1 << 20));
    bool clu_refine = false;
    cluster->add_flag("--refine", clu_refine, "k-means refinement in the spectral embedding");
    int clu_dim = 0;
    cluster->add_option("--dim", clu_dim, "embedding dimension for --refine (default k-1)")
        ->check(CLI::PositiveNumber);
    unsigned long long clu_seed = 42;
    CLI::Option* clu_seed_opt = cluster->add_option("--seed", clu_seed, "k-means seed");

    // --- cut --------------------------------------------------------------
    CLI::App* cut = app.add_subcommand("cut", "graph cuts");
    detail::InputOpts cut_in;
    detail::add_input(cut, cut_in);
    std::string cut_metric = "plain";
    cut->add_option("--metric", cut_metric, "cut objective")
        ->check(CLI::IsMember({"plain", "ratio", "volume", "sparsity", "expansion", "cheeger"}));
    bool cut_brute = false;
    cut->add_flag("--brute", cut_brute, "exhaustive minimum cut");
    std::vector<int> cut_maxflow;
    cut->add_option("--maxflow", cut_maxflow, "max-flow min-cut between two vertices")
        ->expected(2);
    bool cut_sweep = false;
    cut->add_flag("--sweep", cut_sweep, "best prefix cut along a vertex order");
    std::vector<int> cut_order;
    cut->add_option("--order", cut_order,
                    "vertex order for --sweep (default: ascending connectivity eigenvector)")
        ->expected(-1);

    // --- embed ------------------------------------------------------------
    CLI::App* embed_cmd = app.add_subcommand("embed", "spectral vertex embedding (CSV)");
    detail::InputOpts emb_in;
    detail::add_input(embed_cmd, emb_in);
    std::string emb_map = "laplacian";
    embed_cmd->add_option("--map", emb_map, "embedding map")
        ->check(CLI::IsMember({"laplacian", "generalized", "normalized", "commute_time",
                               "diffusion", "cumulative_diffusion"}));
    int emb_m = 0;
    embed_cmd->add_option("-M,--dim", emb_m, "embedding dimension")->required();
    int emb_t = 1;
    embed_cmd->add_option("-t,--steps", emb_t, "diffusion step count");
    std::string emb_norm = "none";
    embed_cmd->add_option("--norm", emb_norm, "coordinate normalization")
        ->check(CLI::IsMember({"none", "unit_norm", "sign", "sign_mid", "minmax"}));
    int emb_cluster = 0;
    embed_cmd->add_option("--cluster", emb_cluster,
                          "append a k-means cluster column with this many clusters")
        ->check(CLI::PositiveNumber);
    unsigned long long emb_seed = 42;
    CLI::Option* emb_seed_opt = embed_cmd->add_option("--seed", emb_seed, "k-means seed");
    std::string emb_out;
    embed_cmd->add_option("-o,--output", emb_out, "also write the CSV to this path");

    // --- sample -----------------------------------------------------------
    CLI::App* sample = app.add_subcommand("sample", "graph down-scaling");
    detail::InputOpts smp_in;
    detail::add_input(sample, smp_in);
    std::string smp_method = "rn";
    sample->add_option("--method", smp_method, "sampling method")
        ->check(CLI::IsMember({"rn", "rdn", "rpn", "re", "rne", "rw", "rj", "ff"}));
    int smp_target = 0;
    sample->add_option("--target", smp_target, "number of vertices to keep")->required();
    unsigned long long smp_seed = 42;
    CLI::Option* smp_seed_opt = sample->add_option("--seed", smp_seed, "sampling seed");
    double smp_jump = 0.15;
    sample->add_option("--jump-prob", smp_jump, "per-step jump probability (rj)");
    double smp_forward = 0.7;
    sample->add_option("--forward-prob", smp_forward, "forward-burning probability (ff)");
    std::string smp_out;
    sample->add_option("-o,--output", smp_out, "write the sampled graph to this path");
    std::string smp_out_format;
    sample->add_option("--output-format", smp_out_format,
                       "format for --output (default: from extension)")
        ->check(CLI::IsMember({"edge_csv", "graph_json"}));

    // --- product ----------------------------------------------------------
    CLI::App* product = app.add_subcommand("product", "graph product of two graphs");
    detail::InputOpts prd_in1, prd_in2;
    product->add_option("graph1", prd_in1.path, "first factor graph")->required();
    product->add_option("graph2", prd_in2.path, "second factor graph")->required();
    std::string prd_format;
    product->add_option("--format", prd_format,
                        "input file format, both factors (default: from extension)")
        ->check(CLI::IsMember({"edge_csv", "graph_json"}));
    bool prd_directed = false;
    product->add_flag("--directed", prd_directed, "treat edge-CSV inputs as directed");
    std::string prd_kind;
    product->add_option("--kind", prd_kind, "product kind")
        ->check(CLI::IsMember({"kronecker", "cartesian"}))
        ->required();
    std::string prd_out;
    product->add_option("-o,--output", prd_out, "write the product graph to this path");
    std::string prd_out_format;
    product->add_option("--output-format", prd_out_format,
                        "format for --output (default: from extension)")
        ->check(CLI::IsMember({"edge_csv", "graph_json"}));

    // --- props ------------------------------------------------------------
    CLI::App* props = app.add_subcommand("props", "structural graph properties");
    detail::InputOpts prp_in;
    detail::add_input(props, prp_in);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (spectrum->parsed()) {
            const Graph g = detail::load_input(spec_in);
            spectral::EigenDecomposition eig =
                spec_variant == "generalized_laplacian"
                    ? spectral::eig_generalized(g)
                    : spectral::eig_symmetric(
                          spec_variant == "adjacency"          ? adjacency_matrix(g)
                          : spec_variant == "laplacian"        ? laplacian(g, LaplacianVariant::standard())
                          : spec_variant == "normalized_laplacian"
                              ? laplacian(g, LaplacianVariant::normalized())
                              : spectral::normalized_weight_matrix(g),
                          spectral::matrix_variant_from_string(spec_variant));
            nlohmann::json doc{{"command", "spectrum"},
                               {"variant", spec_variant},
                               {"n", g.n},
                               {"eigenvalues", detail::to_json(eig.eigenvalues)}};
            if (spec_vectors) doc["eigenvectors"] = detail::rows_to_json(eig.eigenvectors);
            out << doc.dump() << '\n';
        } else if (cluster->parsed()) {
            if (clu_k > 2 && !clu_refine) {
                err << "error: k > 2 requires --refine (sign-based splitting is two-way)\n";
                return 2;
            }
            const Graph g = detail::load_input(clu_in);
            const embedding::EmbeddingMap map = detail::embedding_map_from_string(clu_variant);
            nlohmann::json doc{{"command", "cluster"},
                               {"variant", clu_variant},
                               {"k", clu_k},
                               {"refined", clu_refine}};
            if (!clu_refine) {
                cuts::Partition p = embedding::fiedler_bipartition(g, map);
                std::vector<int> labels(g.n, 1);
                for (int v : p.sets[0]) labels[v] = 0;
                doc["labels"] = labels;
                detail::put_partition(doc, p);
            } else {
                const unsigned long long seed =
                    detail::resolve_seed(clu_seed_opt, clu_seed, err);
                const int dim = clu_dim > 0 ? clu_dim : clu_k - 1;
                embedding::SpectralEmbedding e = embedding::embed(g, map, dim);
                embedding::ClusterAssignment ca = embedding::kmeans_refine(e, clu_k, seed);
                cuts::Partition p = cuts::partition_from_labels(g, ca.labels, clu_k);
                doc["labels"] = ca.labels;
                doc["iterations"] = ca.iterations;
                doc["seed"] = seed;
                doc["embedding_dim"] = dim;
                detail::put_partition(doc, p);
            }
            out << doc.dump() << '\n';
        } else if (cut->parsed()) {
            const int modes = (cut_brute ? 1 : 0) + (cut_maxflow.empty() ? 0 : 1) +
                              (cut_sweep ? 1 : 0);
            if (modes != 1) {
                err << "error: choose exactly one of --brute, --maxflow, --sweep\n";
                return 2;
            }
            const Graph g = detail::load_input(cut_in);
            const cuts::CutMetric metric = cuts::cut_metric_from_string(cut_metric);
            nlohmann::json doc{{"command", "cut"}, {"metric", cut_metric}};
            if (cut_brute) {
                cuts::CutReport rep = cuts::brute_force_min_cut(g, metric);
                doc["mode"] = "brute";
                doc["value"] = rep.value;
                doc["enumerated"] = *rep.enumerated;
                detail::put_partition(doc, rep.partition);
            } else if (cut_sweep) {
                const std::vector<int> order =
                    cut_order.empty() ? detail::ascending_fiedler_order(g) : cut_order;
                cuts::CutReport rep = cuts::sweep_cut(g, order, metric);
                doc["mode"] = "sweep";
                doc["order"] = order;
                doc["value"] = rep.value;
                detail::put_partition(doc, rep.partition);
            } else {
                cuts::FlowResult fr = cuts::max_flow_min_cut(g, cut_maxflow[0], cut_maxflow[1]);
                doc["mode"] = "maxflow";
                doc["value"] = fr.max_flow;
                doc["max_flow"] = fr.max_flow;
                doc["cut_edges"] = detail::edges_to_json(fr.cut_edges);
                doc["source_side"] = fr.source_side;
                detail::put_partition(doc, cuts::bipartition(g, fr.source_side));
            }
            out << doc.dump() << '\n';
        } else if (embed_cmd->parsed()) {
            const Graph g = detail::load_input(emb_in);
            embedding::SpectralEmbedding e = embedding::embed(
                g, detail::embedding_map_from_string(emb_map), emb_m, emb_t);
            e = embedding::normalize_embedding(e, detail::norm_scheme_from_string(emb_norm));
            std::optional<embedding::ClusterAssignment> ca;
            if (emb_cluster > 0)
                ca = embedding::kmeans_refine(
                    e, emb_cluster, detail::resolve_seed(emb_seed_opt, emb_seed, err));
            io::write_embedding(out, e, ca);
            if (!emb_out.empty()) io::save_embedding(e, ca, emb_out);
        } else if (sample->parsed()) {
            const Graph g = detail::load_input(smp_in);
            sampling::SampleConfig cfg;
            cfg.method = sampling::sample_method_from_string(smp_method);
            cfg.target = smp_target;
            cfg.seed = detail::resolve_seed(smp_seed_opt, smp_seed, err);
            cfg.rw_jump_prob = smp_jump;
            cfg.ff_forward_prob = smp_forward;
            sampling::SampleResult sr = sampling::downscale(g, cfg);
            nlohmann::json doc{{"command", "sample"},
                               {"method", smp_method},
                               {"seed", cfg.seed},
                               {"target", cfg.target},
                               {"actual", static_cast<int>(sr.vertices.size())},
                               {"vertices", sr.vertices},
                               {"graph", io::graph_to_json(sr.graph)}};
            if (!smp_out.empty())
                io::save_graph(sr.graph,
                               {detail::resolve_format(smp_out_format, smp_out), smp_out});
            out << doc.dump() << '\n';
        } else if (product->parsed()) {
            prd_in1.format = prd_in2.format = prd_format;
            prd_in1.directed = prd_in2.directed = prd_directed;
            const Graph g1 = detail::load_input(prd_in1);
            const Graph g2 = detail::load_input(prd_in2);
            const ProductKind kind =
                prd_kind == "kronecker" ? ProductKind::kronecker : ProductKind::cartesian;
            const Graph gp = graph_product(g1, g2, kind);
            nlohmann::json doc{{"command", "product"},
                               {"kind", prd_kind},
                               {"graph", io::graph_to_json(gp)}};
            if (!prd_out.empty())
                io::save_graph(gp, {detail::resolve_format(prd_out_format, prd_out), prd_out});
            out << doc.dump() << '\n';
        } else if (props->parsed()) {
            const Graph g = detail::load_input(prp_in);
            const std::vector<std::vector<int>> comps = connected_components(g);
            const bool connected_undirected = !g.directed && comps.size() == 1;
            nlohmann::json doc{{"command", "props"},
                               {"n", g.n},
                               {"directed", g.directed},
                               {"degrees", detail::to_json(degree_vector(g))},
                               {"volume", graph_volume(g)},
                               {"components", comps},
                               {"component_count", static_cast<int>(comps.size())}};
            doc["diameter"] = nullptr;
            doc["closeness"] = nullptr;
            doc["euler"] = nullptr;
            doc["mst_cost"] = nullptr;
            doc["mst_edges"] = nullptr;
            doc["char_poly"] = nullptr;
            if (connected_undirected) {
                doc["euler"] = to_string(euler_path_exists(g));
                DistanceReport dr = distances(g);
                doc["diameter"] = dr.diameter;
                doc["closeness"] = detail::to_json(dr.closeness);
                Tree mst = minimum_spanning_tree(g);
                doc["mst_cost"] = mst.cost;
                doc["mst_edges"] = detail::edges_to_json(mst.edges);
                if (g.n <= 20)
                    doc["char_poly"] = spectral::characteristic_polynomial(
                                           laplacian(g, LaplacianVariant::standard()))
                                           .coefficients;
            }
            out << doc.dump() << '\n';
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace specgraph::cli
