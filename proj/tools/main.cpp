// traj-manifold: dataset generation and manifold-learning runs on
// trajectory data, with CSV reports.

#include "traj_manifold/traj_manifold.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace traj_manifold;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadArguments = 2;
constexpr int kExitBadInput = 3;
constexpr int kExitNumericalDegeneracy = 4;

constexpr const char* kFooter =
    "Exit codes: 0 ok, 2 bad arguments, 3 bad input or I/O failure, "
    "4 numerical degeneracy.";

struct GenConfig {
    std::string family = "swissroll";
    int trajectories = -1; // -1: family default (2 for interleaved, else 6)
    int points = 100;
    int ambient_dim = 3;
    double noise_sigma = 0.0;
    std::uint64_t seed = 42;
    std::string params_text;
    std::string config_path;
    std::string out_path = "dataset.csv";
};

struct RunConfig {
    std::string input = "dataset.csv";
    std::string method;
    int k = 8;
    double entropy_threshold = 0.3;
    int max_extra = 100;
    int dims = 3;
    int skip = 0;
    int stride = 1;
    std::string out_dir = "out";
    bool dump_graph = false;
};

std::string read_file_bytes(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open input file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const fs::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot open output file: " + path.string());
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        throw ValidationError("failed writing output file: " + path.string());
    }
}

std::string checksum_hex(std::string_view bytes) {
    char buffer[17];
    std::snprintf(buffer, sizeof(buffer), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buffer;
}

ProcessSpec resolve_spec(const GenConfig& config, const CLI::App* gen) {
    ProcessSpec spec;
    if (!config.config_path.empty()) {
        std::ifstream in(config.config_path);
        if (!in) {
            throw ValidationError("cannot open spec file: " + config.config_path);
        }
        spec = parse_process_spec(in);
    }

    // Explicit flags override the config file.
    const bool from_file = !config.config_path.empty();
    if (!from_file || gen->count("--family") > 0) {
        const auto family = parse_family(config.family);
        if (!family) {
            throw ParameterError("unknown family '" + config.family +
                                 "' (expected swissroll, fan or interleaved)");
        }
        spec.family = *family;
    }
    if (!from_file || gen->count("--T") > 0) {
        if (config.trajectories >= 0) {
            spec.trajectory_count = config.trajectories;
        } else {
            spec.trajectory_count = spec.family == ProcessFamily::InterleavedPair ? 2 : 6;
        }
    }
    if (!from_file || gen->count("--m") > 0) {
        spec.points_per_trajectory = config.points;
    }
    if (!from_file || gen->count("--D") > 0) {
        spec.ambient_dim = config.ambient_dim;
    }
    if (!from_file || gen->count("--noise") > 0) {
        spec.noise_sigma = config.noise_sigma;
    }
    if (!from_file || gen->count("--seed") > 0) {
        spec.seed = config.seed;
    }
    if (gen->count("--params") > 0) {
        std::istringstream text(config.params_text);
        std::string item;
        spec.params.clear();
        while (std::getline(text, item, ',')) {
            spec.params.push_back(parse_double(item));
        }
    }
    return spec;
}

json spec_to_manifest(const ProcessSpec& spec, const std::string& out_path) {
    json manifest;
    manifest["command"] = "gen";
    manifest["family"] = std::string(family_name(spec.family));
    manifest["T"] = spec.trajectory_count;
    manifest["m"] = spec.points_per_trajectory;
    manifest["D"] = spec.ambient_dim;
    manifest["noise_sigma"] = spec.noise_sigma;
    manifest["seed"] = spec.seed;
    manifest["params"] = spec.params;
    manifest["out"] = out_path;
    return manifest;
}

int do_gen(const ProcessSpec& spec, const std::string& out_path) {
    const TrajectoryDataset dataset = generate(spec);
    const fs::path out(out_path);
    if (out.has_parent_path()) {
        fs::create_directories(out.parent_path());
    }
    save_dataset(out, dataset);
    write_file(out_path + ".manifest.json", spec_to_manifest(spec, out_path).dump(2) + "\n");
    std::cout << "wrote " << out_path << ": n=" << dataset.n() << " points, T="
              << dataset.trajectory_count() << " trajectories, D=" << dataset.dim() << "\n";
    return kExitOk;
}

json run_to_manifest(const RunConfig& config, std::string_view input_bytes) {
    json manifest;
    manifest["command"] = "run";
    manifest["input"] = config.input;
    manifest["input_checksum_fnv1a64"] = checksum_hex(input_bytes);
    manifest["method"] = config.method;
    manifest["k"] = config.k;
    manifest["entropy"] = config.entropy_threshold;
    manifest["max_extra"] = config.max_extra;
    manifest["dims"] = config.dims;
    manifest["skip"] = config.skip;
    manifest["stride"] = config.stride;
    manifest["dump_graph"] = config.dump_graph;
    manifest["out"] = config.out_dir;
    return manifest;
}

int do_run(const RunConfig& config) {
    const auto method = parse_method(config.method);
    if (!method) {
        throw ParameterError("unknown method '" + config.method +
                             "' (expected pca, mds, isomap or entropy-isomap)");
    }
    const bool graph_based = *method == Method::Isomap || *method == Method::EntropyIsomap;
    if (config.skip > 0 && *method != Method::Isomap) {
        throw ParameterError("--skip applies to --method isomap only");
    }
    if (config.dump_graph && !graph_based) {
        throw ParameterError("--dump-graph needs a graph-based method");
    }
    if (config.stride < 1) {
        throw ParameterError("--stride must be >= 1");
    }
    if (config.dims < 1) {
        throw ParameterError("--dims must be >= 1");
    }

    const std::string input_bytes = read_file_bytes(config.input);
    std::istringstream input_stream(input_bytes);
    TrajectoryDataset dataset = load_dataset(input_stream);
    if (config.stride > 1) {
        dataset = subsample(dataset, config.stride);
    }

    const fs::path out_dir(config.out_dir);
    fs::create_directories(out_dir);

    std::string summary;
    if (*method == Method::Pca) {
        const PcaResult result = pca(dataset, config.dims);
        write_file(out_dir / "embedding.csv", embedding_csv(dataset, result.embedding));
        write_file(out_dir / "spectrum.csv", spectrum_csv(result.spectrum));
        const auto curve =
            residual_variance_pca(result.spectrum, static_cast<int>(dataset.dim()));
        write_file(out_dir / "residual_variance.csv", residual_variance_csv(curve, "eq1"));
        summary = "pca: n=" + std::to_string(dataset.n()) + ", d=" +
                  std::to_string(config.dims) +
                  ", R(d)=" + format_double(curve.at(std::min<int>(
                                  config.dims, static_cast<int>(dataset.dim()))));
    } else if (*method == Method::Mds) {
        const DistanceMatrix distances = pairwise_distances(dataset);
        const Index n = dataset.n();
        if (static_cast<Index>(config.dims) > n - 1) {
            throw ParameterError("--dims must be <= n - 1");
        }
        const int d_curve =
            static_cast<int>(std::min<Index>(std::max(config.dims, 10), n - 1));
        const MdsResult result = classical_mds(distances, d_curve);
        Embedding embedding = result.embedding;
        embedding.coords = embedding.coords.leftCols(config.dims).eval();
        embedding.eigenvalues = embedding.eigenvalues.head(config.dims).eval();
        write_file(out_dir / "embedding.csv", embedding_csv(dataset, embedding));
        write_file(out_dir / "spectrum.csv", spectrum_csv(result.spectrum));
        const auto curve =
            residual_variance_isomap(GeodesicMatrix{distances.values}, result.embedding);
        write_file(out_dir / "residual_variance.csv", residual_variance_csv(curve, "eq2"));
        summary = "mds: n=" + std::to_string(n) + ", d=" + std::to_string(config.dims) +
                  ", R(d)=" + format_double(curve.at(config.dims));
    } else {
        const DistanceMatrix distances = pairwise_distances(dataset);
        NeighborhoodGraph graph;
        if (*method == Method::Isomap) {
            graph = config.skip > 0
                        ? build_skip_graph(dataset, distances, config.k, config.skip)
                        : build_knn_graph(dataset, distances, config.k);
        } else {
            graph = build_entropy_graph(dataset, distances, config.k,
                                        config.entropy_threshold, config.max_extra);
        }
        const GeodesicMatrix full = shortest_paths(graph);
        const std::vector<Index> kept = largest_component(graph);
        std::vector<Index> excluded;
        {
            std::vector<char> is_kept(static_cast<std::size_t>(dataset.n()), 0);
            for (Index i : kept) {
                is_kept[static_cast<std::size_t>(i)] = 1;
            }
            for (Index i = 0; i < dataset.n(); ++i) {
                if (!is_kept[static_cast<std::size_t>(i)]) {
                    excluded.push_back(i);
                }
            }
        }
        const Index n_kept = static_cast<Index>(kept.size());
        if (static_cast<Index>(config.dims) > n_kept - 1) {
            throw ParameterError("--dims must be <= " + std::to_string(n_kept - 1) +
                                 " (size of the embedded component minus one)");
        }
        if (!excluded.empty()) {
            std::cerr << "warning: neighborhood graph is disconnected; excluding "
                      << excluded.size() << " points outside the largest component\n";
        }

        const GeodesicMatrix geodesics = restrict_matrix(full, kept);
        const int d_curve =
            static_cast<int>(std::min<Index>(std::max(config.dims, 10), n_kept - 1));
        const MdsResult mds = classical_mds(DistanceMatrix{geodesics.values}, d_curve);

        Embedding embedding = mds.embedding;
        embedding.method = *method;
        embedding.excluded_points = excluded;
        embedding.coords = embedding.coords.leftCols(config.dims).eval();
        embedding.eigenvalues = embedding.eigenvalues.head(config.dims).eval();

        write_file(out_dir / "embedding.csv", embedding_csv(dataset, embedding));
        write_file(out_dir / "spectrum.csv", spectrum_csv(mds.spectrum));
        const auto curve = residual_variance_isomap(geodesics, mds.embedding);
        write_file(out_dir / "residual_variance.csv", residual_variance_csv(curve, "eq2"));
        write_file(out_dir / "excluded_points.csv", excluded_points_csv(dataset, excluded));

        summary = std::string(method_name(*method)) + ": n=" + std::to_string(dataset.n()) +
                  ", k=" + std::to_string(config.k) + ", d=" + std::to_string(config.dims) +
                  ", R(d)=" + format_double(curve.at(config.dims));

        if (*method == Method::EntropyIsomap) {
            const DiagnosticsReport diagnostics =
                make_diagnostics(dataset, graph, config.k, config.entropy_threshold,
                                 config.max_extra, geodesics, mds.embedding);
            write_file(out_dir / "chosen_k_hist.csv",
                       chosen_k_histogram_csv(diagnostics.chosen_k_histogram));
            write_file(out_dir / "entropy_vs_time.csv", entropy_vs_time_csv(dataset, graph));
            write_file(out_dir / "mixing.csv", mixing_csv(dataset, diagnostics.mixing));
            summary += ", capped fraction=" + format_double(diagnostics.capped_fraction) +
                       " (" + std::to_string(diagnostics.capped_count) + " of " +
                       std::to_string(dataset.n()) + " points at k+M)";
        }
        if (config.dump_graph) {
            write_file(out_dir / "graph_edges.csv", graph_edges_csv(graph));
            write_file(out_dir / "graph_points.csv", graph_points_csv(dataset, graph));
            write_file(out_dir / "graph_neighbors.csv", graph_neighbors_csv(graph));
        }
    }

    write_file(out_dir / "run_manifest.json",
               run_to_manifest(config, input_bytes).dump(2) + "\n");
    std::cout << summary << "\n";
    return kExitOk;
}

int do_rerun(const std::string& manifest_path, const std::optional<std::string>& out_override) {
    json manifest;
    try {
        manifest = json::parse(read_file_bytes(manifest_path));
    } catch (const json::exception& e) {
        throw ValidationError("cannot parse manifest: " + std::string(e.what()));
    }

    try {
        const std::string command = manifest.at("command").get<std::string>();
        if (command == "gen") {
            ProcessSpec spec;
            const auto family = parse_family(manifest.at("family").get<std::string>());
            if (!family) {
                throw ValidationError("manifest names an unknown family");
            }
            spec.family = *family;
            spec.trajectory_count = manifest.at("T").get<int>();
            spec.points_per_trajectory = manifest.at("m").get<int>();
            spec.ambient_dim = manifest.at("D").get<int>();
            spec.noise_sigma = manifest.at("noise_sigma").get<double>();
            spec.seed = manifest.at("seed").get<std::uint64_t>();
            spec.params = manifest.at("params").get<std::vector<double>>();
            const std::string out =
                out_override ? *out_override : manifest.at("out").get<std::string>();
            return do_gen(spec, out);
        }
        if (command == "run") {
            RunConfig config;
            config.input = manifest.at("input").get<std::string>();
            config.method = manifest.at("method").get<std::string>();
            config.k = manifest.at("k").get<int>();
            config.entropy_threshold = manifest.at("entropy").get<double>();
            config.max_extra = manifest.at("max_extra").get<int>();
            config.dims = manifest.at("dims").get<int>();
            config.skip = manifest.at("skip").get<int>();
            config.stride = manifest.at("stride").get<int>();
            config.dump_graph = manifest.at("dump_graph").get<bool>();
            config.out_dir = out_override ? *out_override : manifest.at("out").get<std::string>();

            const std::string input_bytes = read_file_bytes(config.input);
            const std::string expected =
                manifest.at("input_checksum_fnv1a64").get<std::string>();
            if (checksum_hex(input_bytes) != expected) {
                throw ValidationError("input file '" + config.input +
                                      "' does not match the manifest checksum");
            }
            return do_run(config);
        }
        throw ValidationError("manifest has unknown command '" + command + "'");
    } catch (const json::exception& e) {
        throw ValidationError("manifest is missing fields: " + std::string(e.what()));
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"traj-manifold: spectral dimensionality reduction for "
                 "trajectory (dynamic-process) data"};
    app.footer(kFooter);
    app.require_subcommand(1);

    GenConfig gen_config;
    CLI::App* gen = app.add_subcommand(
        "gen", "Generate a synthetic trajectory dataset (CSV)");
    gen->footer(kFooter);
    gen->add_option("--family", gen_config.family,
                    "Process family: swissroll, fan or interleaved")
        ->capture_default_str();
    gen->add_option("--T", gen_config.trajectories,
                    "Trajectory count (default: 2 for interleaved, else 6)");
    gen->add_option("--m", gen_config.points, "Points per trajectory")->capture_default_str();
    gen->add_option("--D", gen_config.ambient_dim, "Ambient dimension")->capture_default_str();
    gen->add_option("--noise", gen_config.noise_sigma, "Gaussian noise sigma")
        ->capture_default_str();
    gen->add_option("--seed", gen_config.seed, "Generator seed")->capture_default_str();
    gen->add_option("--params", gen_config.params_text,
                    "Comma-separated per-trajectory latent values");
    gen->add_option("--config", gen_config.config_path,
                    "key = value spec file (explicit flags override it)");
    gen->add_option("--out", gen_config.out_path, "Output dataset path")
        ->capture_default_str();

    RunConfig run_config;
    CLI::App* run = app.add_subcommand(
        "run", "Run an embedding method on a dataset and write CSV reports");
    run->footer(kFooter);
    run->add_option("--input", run_config.input, "Input dataset CSV")->capture_default_str();
    run->add_option("--method", run_config.method,
                    "pca, mds, isomap or entropy-isomap")
        ->required();
    run->add_option("--k", run_config.k, "Base neighborhood size")->capture_default_str();
    run->add_option("--entropy", run_config.entropy_threshold,
                    "Entropy threshold H-hat in bits (entropy-isomap)")
        ->capture_default_str();
    run->add_option("--max-extra", run_config.max_extra,
                    "Max extra neighbors M above k (entropy-isomap)")
        ->capture_default_str();
    run->add_option("--dims", run_config.dims, "Embedding dimension")->capture_default_str();
    run->add_option("--skip", run_config.skip,
                    "Skip the s nearest points before filling neighborhoods (isomap)")
        ->capture_default_str();
    run->add_option("--stride", run_config.stride,
                    "Subsample: keep every stride-th point of each trajectory")
        ->capture_default_str();
    run->add_option("--out", run_config.out_dir, "Output directory")->capture_default_str();
    run->add_flag("--dump-graph", run_config.dump_graph,
                  "Also write the neighborhood graph (edge list, per-point table, "
                  "neighbor lists)");

    std::string manifest_path;
    std::string rerun_out;
    CLI::App* rerun = app.add_subcommand(
        "rerun", "Reproduce a previous gen/run from its manifest, byte for byte");
    rerun->footer(kFooter);
    rerun->add_option("manifest", manifest_path, "Path to a manifest JSON")->required();
    CLI::Option* rerun_out_option =
        rerun->add_option("--out", rerun_out, "Override the output location");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitBadArguments;
    }

    try {
        if (gen->parsed()) {
            return do_gen(resolve_spec(gen_config, gen), gen_config.out_path);
        }
        if (run->parsed()) {
            return do_run(run_config);
        }
        if (rerun->parsed()) {
            std::optional<std::string> out_override;
            if (rerun_out_option->count() > 0) {
                out_override = rerun_out;
            }
            return do_rerun(manifest_path, out_override);
        }
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadArguments;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumericalDegeneracy;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitOk;
}
