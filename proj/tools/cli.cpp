#include "cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "vfcm/dataset.hpp"
#include "vfcm/error.hpp"
#include "vfcm/fcm.hpp"
#include "vfcm/imaging.hpp"
#include "vfcm/metrics.hpp"
#include "vfcm/vfc.hpp"

namespace vfcm::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

// Failure tagged with the pipeline stage that raised it.
struct StageError : std::runtime_error {
    StageError(std::string stage, const std::string& what)
        : std::runtime_error(what), stage(std::move(stage)) {}
    std::string stage;
};

template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Console summaries only; files always use num().
std::string brief(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

class OutputSet {
public:
    explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {}

    void write(const std::string& name, const std::string& content) {
        write_to(dir_ / name, content);
    }

    void write_to(const fs::path& path, const std::string& content) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error("cannot write " + path.string());
        out << content;
        if (!out) throw Error("short write to " + path.string());
        files_.push_back(path.string());
    }

    void record(const fs::path& path) { files_.push_back(path.string()); }
    const std::vector<std::string>& files() const { return files_; }
    const fs::path& dir() const { return dir_; }

private:
    fs::path dir_;
    std::vector<std::string> files_;
};

std::string feature_name(const DataMatrix& data, std::size_t k) {
    return data.feature_names().empty() ? "x" + std::to_string(k + 1) : data.feature_names()[k];
}

std::string centers_csv(const DataMatrix& data, const Centers& v) {
    std::ostringstream os;
    os << "cluster";
    for (std::size_t k = 0; k < v.cols(); ++k) os << ',' << feature_name(data, k);
    os << '\n';
    for (std::size_t j = 0; j < v.rows(); ++j) {
        os << j + 1;
        for (std::size_t k = 0; k < v.cols(); ++k) os << ',' << num(v(j, k));
        os << '\n';
    }
    return os.str();
}

std::string memberships_csv(const MembershipMatrix& u) {
    std::ostringstream os;
    os << "point";
    for (std::size_t j = 0; j < u.cols(); ++j) os << ",cluster_" << j + 1;
    os << '\n';
    for (std::size_t i = 0; i < u.rows(); ++i) {
        os << i + 1;
        for (std::size_t j = 0; j < u.cols(); ++j) os << ',' << num(u(i, j));
        os << '\n';
    }
    return os.str();
}

std::string memberships_csv(const MembershipTensor& u) {
    std::ostringstream os;
    os << "i,j,k,value\n";
    for (std::size_t i = 0; i < u.points(); ++i) {
        for (std::size_t j = 0; j < u.clusters(); ++j) {
            for (std::size_t k = 0; k < u.dims(); ++k) {
                os << i + 1 << ',' << j + 1 << ',' << k + 1 << ',' << num(u(i, j, k)) << '\n';
            }
        }
    }
    return os.str();
}

// Features are the values the fit saw (after normalization).
std::string assignments_csv(const DataMatrix& data, const std::vector<std::size_t>& assign) {
    std::ostringstream os;
    os << "point,cluster";
    if (data.has_labels()) os << ",label";
    for (std::size_t k = 0; k < data.dims(); ++k) os << ',' << feature_name(data, k);
    os << '\n';
    for (std::size_t i = 0; i < data.rows(); ++i) {
        os << i + 1 << ',' << assign[i] + 1;
        if (data.has_labels()) os << ',' << data.labels()[i];
        for (std::size_t k = 0; k < data.dims(); ++k) os << ',' << num(data(i, k));
        os << '\n';
    }
    return os.str();
}

std::string trace_csv(const std::vector<double>& literal, const std::vector<double>& exponentiated) {
    const auto normalized = normalize_trace(exponentiated);
    std::ostringstream os;
    os << "iteration,J_literal,J_exponentiated,J_normalized\n";
    for (std::size_t g = 0; g < exponentiated.size(); ++g) {
        os << g + 1 << ',' << num(literal[g]) << ',' << num(exponentiated[g]) << ',' << num(normalized[g])
           << '\n';
    }
    return os.str();
}

ordered_json evaluation_json(const Evaluation& ev) {
    ordered_json j;
    j["purity"] = ev.purity;
    j["rand_index"] = ev.rand_index;
    ordered_json table = ordered_json::object();
    for (std::size_t r = 0; r < ev.contingency.clusters.size(); ++r) {
        ordered_json row = ordered_json::object();
        for (std::size_t c = 0; c < ev.contingency.labels.size(); ++c) {
            row[ev.contingency.labels[c]] = ev.contingency.counts[r][c];
        }
        table[std::to_string(ev.contingency.clusters[r] + 1)] = row;
    }
    j["contingency"] = table;
    return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json manifest_base(const std::vector<std::string>& args, const std::string& input) {
    ordered_json m;
    m["command"] = args;
    m["input"] = {{"path", input}, {"sha256", sha256_file(input)}};
    return m;
}

ordered_json fit_config_json(const FitConfig& cfg) {
    return {{"clusters", cfg.clusters},
            {"fuzziness", cfg.fuzziness},
            {"max_iters", cfg.max_iters},
            {"epsilon", cfg.epsilon},
            {"init", std::string(to_string(cfg.init))},
            {"singularity_delta", cfg.singularity_delta}};
}

struct DatasetArgs {
    std::string input;
    bool header = false;
    std::optional<std::size_t> label_column;
    std::string normalization = "none";
};

void add_dataset_options(CLI::App& cmd, DatasetArgs& a) {
    cmd.add_option("-i,--input", a.input, "CSV dataset")->required()->check(CLI::ExistingFile);
    cmd.add_flag("--header", a.header, "First row holds column names");
    cmd.add_option("--label-column", a.label_column, "0-based column holding class labels");
    cmd.add_option("--normalize", a.normalization, "none | min-max | z-score")
        ->check(CLI::IsMember({"none", "min-max", "z-score"}));
}

DataMatrix load_dataset(const DatasetArgs& a) {
    const auto raw = stage("load", [&] { return load_csv(a.input, {a.header, a.label_column}); });
    return stage("normalize", [&] { return normalize(raw, parse_normalization(a.normalization)); });
}

struct ClusterArgs {
    DatasetArgs dataset;
    std::string algorithm = "vfc";
    FitConfig config;
    std::string out;
};

int cmd_cluster(const ClusterArgs& a, const std::vector<std::string>& args, std::ostream& out) {
    const auto data = load_dataset(a.dataset);
    const auto algorithm = parse_algorithm(a.algorithm);
    stage("config", [&] { a.config.validate(data.rows()); });
    stage("write", [&] { fs::create_directories(a.out); });
    OutputSet files(a.out);

    Centers centers;
    std::vector<std::size_t> assign;
    std::vector<double> literal, exponentiated;
    std::size_t iterations = 0;
    StopReason reason = StopReason::max_iters;
    std::string memberships;

    if (algorithm == Algorithm::fcm) {
        const auto fit = stage("fit", [&] { return fcm_fit(data, a.config); });
        centers = fit.centers;
        assign = crisp_assign(fit.memberships);
        literal = fit.literal_trace;
        exponentiated = fit.objective_trace;
        iterations = fit.iterations_run;
        reason = fit.converged_by;
        memberships = memberships_csv(fit.memberships);
    } else {
        const auto fit = stage("fit", [&] { return vfc_fit(data, a.config); });
        centers = fit.centers;
        assign = crisp_assign(fit.memberships);
        literal = fit.literal_trace;
        exponentiated = fit.objective_trace;
        iterations = fit.iterations_run;
        reason = fit.converged_by;
        memberships = memberships_csv(fit.memberships);
    }

    std::optional<Evaluation> evaluation;
    if (data.has_labels()) {
        evaluation = stage("evaluate", [&] { return evaluate(assign, data.labels()); });
    }

    stage("write", [&] {
        files.write("centers.csv", centers_csv(data, centers));
        files.write("memberships.csv", memberships);
        files.write("assignments.csv", assignments_csv(data, assign));
        files.write("trace.csv", trace_csv(literal, exponentiated));
        if (evaluation) files.write("evaluation.json", dump(evaluation_json(*evaluation)));

        auto manifest = manifest_base(args, a.dataset.input);
        manifest["config"] = fit_config_json(a.config);
        manifest["config"]["algorithm"] = a.algorithm;
        manifest["config"]["normalization"] = a.dataset.normalization;
        manifest["config"]["label_column"] =
            a.dataset.label_column ? ordered_json(*a.dataset.label_column) : ordered_json(nullptr);
        manifest["dataset"] = {{"rows", data.rows()}, {"dims", data.dims()}};
        manifest["iterations_run"] = iterations;
        manifest["converged_by"] = std::string(to_string(reason));
        manifest["final_objective"] = {{"literal", literal.back()}, {"exponentiated", exponentiated.back()}};
        auto outputs = files.files();
        outputs.push_back((files.dir() / "manifest.json").string());
        manifest["outputs"] = outputs;
        files.write("manifest.json", dump(manifest));
    });

    out << a.algorithm << ": " << iterations << " iterations, J=" << brief(exponentiated.back());
    if (evaluation) out << ", purity=" << brief(evaluation->purity) << ", rand=" << brief(evaluation->rand_index);
    out << '\n';
    return 0;
}

struct SegmentArgs {
    std::string input;
    std::string algorithm = "vfc";
    double fuzziness = 2.0;
    std::size_t max_iters = 100;
    double epsilon = 0.0;
    std::string output;
    std::string manifest;
    bool raw01 = false;
};

int cmd_segment(const SegmentArgs& a, const std::vector<std::string>& args, std::ostream& out) {
    const auto image = stage("load", [&] { return read_pgm_file(a.input); });
    FitConfig cfg;
    cfg.clusters = 2;
    cfg.fuzziness = a.fuzziness;
    cfg.max_iters = a.max_iters;
    cfg.epsilon = a.epsilon;
    SegmentOptions opts{parse_algorithm(a.algorithm), a.raw01};
    const auto seg = stage("segment", [&] { return segment_binary(image, cfg, opts); });

    const fs::path output(a.output);
    const fs::path manifest_path =
        a.manifest.empty() ? output.parent_path() / "manifest.json" : fs::path(a.manifest);
    stage("write", [&] {
        if (output.has_parent_path()) fs::create_directories(output.parent_path());
        if (manifest_path.has_parent_path()) fs::create_directories(manifest_path.parent_path());
        OutputSet files(output.parent_path());
        files.write_to(output, write_pgm(seg.mask));

        auto manifest = manifest_base(args, a.input);
        manifest["config"] = fit_config_json(cfg);
        manifest["config"]["algorithm"] = a.algorithm;
        manifest["config"]["raw01"] = a.raw01;
        manifest["image"] = {{"width", image.width}, {"height", image.height}};
        manifest["centers"] = seg.centers;
        manifest["iterations_run"] = seg.iterations_run;
        manifest["converged_by"] = std::string(to_string(seg.converged_by));
        manifest["final_objective"] = {{"literal", seg.literal_trace.back()},
                                       {"exponentiated", seg.objective_trace.back()}};
        auto outputs = files.files();
        outputs.push_back(manifest_path.string());
        manifest["outputs"] = outputs;
        files.write_to(manifest_path, dump(manifest));
    });
    out << a.algorithm << " m=" << brief(a.fuzziness) << ": centers " << brief(seg.centers[0]) << ", "
        << brief(seg.centers[1]) << '\n';
    return 0;
}

struct InitArgs {
    DatasetArgs dataset;
    std::size_t clusters = 2;
    std::string out;
};

int cmd_init(const InitArgs& a, const std::vector<std::string>& args, std::ostream& out) {
    const auto data = load_dataset(a.dataset);
    const auto init = stage("init", [&] { return init_centers_scatter(data, a.clusters); });
    stage("write", [&] {
        fs::create_directories(a.out);
        OutputSet files(a.out);
        ordered_json plan;
        plan["scatter"] = init.plan.scatter;
        plan["centroid"] = init.plan.centroid;
        plan["weighted_distances"] = init.plan.weighted_distances;
        std::vector<std::size_t> order;
        for (auto i : init.plan.sorted_order) order.push_back(i + 1);
        plan["sorted_order"] = order;
        ordered_json chunks = ordered_json::array();
        for (const auto& [b, e] : init.plan.chunk_bounds) chunks.push_back({{"first", b + 1}, {"last", e}});
        plan["chunks"] = chunks;
        files.write("init_plan.json", dump(plan));
        files.write("centers.csv", centers_csv(data, init.centers));

        auto manifest = manifest_base(args, a.dataset.input);
        manifest["config"] = {{"clusters", a.clusters}, {"normalization", a.dataset.normalization}};
        auto outputs = files.files();
        outputs.push_back((files.dir() / "manifest.json").string());
        manifest["outputs"] = outputs;
        files.write("manifest.json", dump(manifest));
    });
    out << "wrote " << a.clusters << " initial centers to " << a.out << '\n';
    return 0;
}

}  // namespace

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);

    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw Error("sha256 init failed");
    std::vector<char> buf(1 << 16);
    while (in) {
        in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
        if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), md, &len);

    std::ostringstream hex;
    for (unsigned int b = 0; b < len; ++b) hex << std::hex << std::setw(2) << std::setfill('0') << int(md[b]);
    return hex.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fuzzy C-Means and Vector Fuzzy C-Means clustering"};
    app.require_subcommand(1);

    ClusterArgs cluster;
    auto* c = app.add_subcommand("cluster", "Fit FCM or VFC on a CSV dataset");
    add_dataset_options(*c, cluster.dataset);
    c->add_option("-a,--algorithm", cluster.algorithm, "fcm | vfc")->check(CLI::IsMember({"fcm", "vfc"}));
    c->add_option("-c,--clusters", cluster.config.clusters, "Number of clusters")->required();
    c->add_option("-m,--fuzziness", cluster.config.fuzziness, "Fuzziness index (> 1)");
    c->add_option("--max-iters", cluster.config.max_iters, "Iteration limit");
    c->add_option("--epsilon", cluster.config.epsilon, "Max membership change stop threshold (0 = off)");
    c->add_option("-o,--out", cluster.out, "Output directory")->required();

    SegmentArgs segment;
    auto* s = app.add_subcommand("segment", "Two-cluster segmentation of a PGM image");
    s->add_option("-i,--input", segment.input, "PGM image (P5 or P2)")->required()->check(CLI::ExistingFile);
    s->add_option("-a,--algorithm", segment.algorithm, "fcm | vfc")->check(CLI::IsMember({"fcm", "vfc"}));
    s->add_option("-m,--fuzziness", segment.fuzziness, "Fuzziness index (> 1)");
    s->add_option("--max-iters", segment.max_iters, "Iteration limit");
    s->add_option("--epsilon", segment.epsilon, "Max membership change stop threshold (0 = off)");
    s->add_option("-o,--output", segment.output, "Output PGM path")->required();
    s->add_option("--manifest", segment.manifest, "Manifest path (default: manifest.json next to output)");
    s->add_flag("--raw01", segment.raw01, "Emit 0/1 pixels with maxval 1");

    InitArgs init;
    auto* i = app.add_subcommand("init", "Write the scatter-based initialization plan");
    add_dataset_options(*i, init.dataset);
    i->add_option("-c,--clusters", init.clusters, "Number of clusters")->required();
    i->add_option("-o,--out", init.out, "Output directory")->required();

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*c) return cmd_cluster(cluster, args, out);
        if (*s) return cmd_segment(segment, args, out);
        if (*i) return cmd_init(init, args, out);
    } catch (const StageError& e) {
        err << "error: " << e.stage << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace vfcm::cli
