#include "gsync/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace gsync {

namespace {

std::string format_g17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::vector<double> matrix_to_row_major(const Eigen::MatrixXd& M) {
    std::vector<double> out;
    out.reserve(M.size());
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index j = 0; j < M.cols(); ++j) out.push_back(M(i, j));
    return out;
}

Eigen::MatrixXd matrix_from_row_major(const std::vector<double>& v, int rows, int cols) {
    if (static_cast<int>(v.size()) != rows * cols)
        throw std::invalid_argument("matrix payload has wrong length");
    Eigen::MatrixXd M(rows, cols);
    int idx = 0;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) M(i, j) = v[idx++];
    return M;
}

}  // namespace

json group_spec_to_json(const GroupSpec& spec) {
    json j;
    switch (spec.kind) {
        case GroupKind::Orthogonal: j["kind"] = "O"; break;
        case GroupKind::SpecialOrthogonal: j["kind"] = "SO"; break;
        case GroupKind::Permutation: j["kind"] = "P"; break;
        case GroupKind::Cyclic: j["kind"] = "Z"; break;
    }
    j["d"] = spec.d;
    if (spec.kind == GroupKind::Cyclic) j["m"] = spec.m;
    return j;
}

GroupSpec group_spec_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "Z") {
        const int m = j.at("m").get<int>();
        if (m < 1) throw std::invalid_argument("spec: cyclic order m must be >= 1");
        if (j.contains("d") && j.at("d").get<int>() != 2)
            throw std::invalid_argument("spec: cyclic groups require d = 2");
        return GroupSpec::cyclic(m);
    }
    const int d = j.at("d").get<int>();
    if (d < 1) throw std::invalid_argument("spec: d must be >= 1");
    if (kind == "O") return GroupSpec::orthogonal(d);
    if (kind == "SO") return GroupSpec::special_orthogonal(d);
    if (kind == "P") return GroupSpec::permutation(d);
    throw std::invalid_argument("spec: unknown group kind '" + kind + "'");
}

json graph_config_to_json(const GraphConfig& cfg) { return {{"n", cfg.n}, {"p", cfg.p}}; }

GraphConfig graph_config_from_json(const json& j) {
    GraphConfig cfg;
    cfg.n = j.at("n").get<int>();
    cfg.p = j.at("p").get<double>();
    return cfg;
}

namespace {

const char* noise_model_name(NoiseModel m) {
    switch (m) {
        case NoiseModel::None: return "none";
        case NoiseModel::AdditiveGaussian: return "additive_gaussian";
        case NoiseModel::AdditiveUniform: return "additive_uniform";
        case NoiseModel::OutlierTimesLangevin: return "outlier_langevin";
        case NoiseModel::OutlierOnly: return "outlier_only";
        case NoiseModel::ProjectedAdditive: return "projected_additive";
    }
    return "?";
}

}  // namespace

json noise_config_to_json(const NoiseConfig& cfg) {
    json j;
    j["model"] = noise_model_name(cfg.model);
    switch (cfg.model) {
        case NoiseModel::None: break;
        case NoiseModel::AdditiveGaussian: j["sigma"] = cfg.sigma; break;
        case NoiseModel::AdditiveUniform: j["bound"] = cfg.bound; break;
        case NoiseModel::OutlierTimesLangevin:
            j["q"] = cfg.q;
            j["gamma"] = cfg.gamma;
            break;
        case NoiseModel::OutlierOnly: j["q"] = cfg.q; break;
        case NoiseModel::ProjectedAdditive: j["delta"] = cfg.delta; break;
    }
    return j;
}

NoiseConfig noise_config_from_json(const json& j) {
    NoiseConfig cfg;
    const std::string model = j.at("model").get<std::string>();
    if (model == "none") {
        cfg.model = NoiseModel::None;
    } else if (model == "additive_gaussian") {
        cfg.model = NoiseModel::AdditiveGaussian;
        cfg.sigma = j.at("sigma").get<double>();
    } else if (model == "additive_uniform") {
        cfg.model = NoiseModel::AdditiveUniform;
        cfg.bound = j.at("bound").get<double>();
    } else if (model == "outlier_langevin") {
        cfg.model = NoiseModel::OutlierTimesLangevin;
        cfg.q = j.at("q").get<double>();
        cfg.gamma = j.at("gamma").get<double>();
    } else if (model == "outlier_only") {
        cfg.model = NoiseModel::OutlierOnly;
        cfg.q = j.at("q").get<double>();
    } else if (model == "projected_additive") {
        cfg.model = NoiseModel::ProjectedAdditive;
        cfg.delta = j.at("delta").get<double>();
    } else {
        throw std::invalid_argument("noise: unknown model '" + model + "'");
    }
    cfg.validate();
    return cfg;
}

json block_column_to_json(const BlockColumn& G) {
    return json(matrix_to_row_major(G.data));
}

BlockColumn block_column_from_json(const json& j, int n, int d) {
    BlockColumn G(n, d);
    G.data = matrix_from_row_major(j.get<std::vector<double>>(), n * d, d);
    return G;
}

json instance_to_json(const Instance& instance) {
    json j;
    j["spec"] = group_spec_to_json(instance.spec);
    j["n"] = instance.graph.n;
    json edges = json::array();
    for (const auto& [a, b] : instance.graph.edges) edges.push_back({a, b});
    j["edges"] = std::move(edges);
    json obs = json::array();
    for (size_t e = 0; e < instance.observations.size(); ++e) {
        obs.push_back({{"i", instance.graph.edges[e].first},
                       {"j", instance.graph.edges[e].second},
                       {"block", matrix_to_row_major(instance.observations[e])}});
    }
    j["obs"] = std::move(obs);
    if (instance.ground_truth) j["ground_truth"] = block_column_to_json(*instance.ground_truth);
    return j;
}

Instance instance_from_json(const json& j) {
    const GroupSpec spec = group_spec_from_json(j.at("spec"));
    const int n = j.at("n").get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    MeasurementGraph graph = MeasurementGraph::from_edges(n, std::move(edges));

    std::vector<Eigen::MatrixXd> obs(graph.edges.size());
    std::vector<char> filled(graph.edges.size(), false);
    for (const auto& o : j.at("obs")) {
        const std::pair<int, int> key{o.at("i").get<int>(), o.at("j").get<int>()};
        const auto it = std::lower_bound(graph.edges.begin(), graph.edges.end(), key);
        if (it == graph.edges.end() || *it != key)
            throw std::invalid_argument("instance: observation for a non-edge pair");
        const size_t idx = static_cast<size_t>(it - graph.edges.begin());
        obs[idx] = matrix_from_row_major(o.at("block").get<std::vector<double>>(), spec.d, spec.d);
        filled[idx] = true;
    }
    for (size_t e = 0; e < filled.size(); ++e)
        if (!filled[e]) throw std::invalid_argument("instance: missing observation for an edge");

    std::optional<BlockColumn> truth;
    if (j.contains("ground_truth") && !j.at("ground_truth").is_null())
        truth = block_column_from_json(j.at("ground_truth"), n, spec.d);
    return Instance::build(spec, std::move(graph), std::move(obs), std::move(truth));
}

void write_instance(const std::filesystem::path& path, const Instance& instance) {
    write_json_file(path, instance_to_json(instance));
}

Instance read_instance(const std::filesystem::path& path) {
    return instance_from_json(read_json_file(path));
}

GenerateConfig generate_config_from_json(const json& j) {
    GenerateConfig cfg;
    cfg.spec = group_spec_from_json(j.at("spec"));
    cfg.graph = graph_config_from_json(j.at("graph"));
    cfg.noise = noise_config_from_json(j.at("noise"));
    cfg.seed = j.at("seed").get<std::uint64_t>();
    return cfg;
}

json generate_config_to_json(const GenerateConfig& cfg) {
    return {{"spec", group_spec_to_json(cfg.spec)},
            {"graph", graph_config_to_json(cfg.graph)},
            {"noise", noise_config_to_json(cfg.noise)},
            {"seed", cfg.seed}};
}

ExperimentConfig experiment_config_from_json(const json& j) {
    ExperimentConfig cfg;
    cfg.base.spec = group_spec_from_json(j.at("spec"));
    cfg.base.graph = graph_config_from_json(j.at("graph"));
    cfg.base.noise = noise_config_from_json(j.at("noise"));
    cfg.base.seed = 0;
    if (j.contains("solve")) {
        const json& s = j.at("solve");
        if (s.contains("max_iters")) cfg.solve.max_iters = s.at("max_iters").get<int>();
        if (s.contains("tol")) cfg.solve.tol = s.at("tol").get<double>();
    }
    const json& sweep = j.at("sweep");
    cfg.sweep_param = sweep.at("param").get<std::string>();
    cfg.sweep_values = sweep.at("values").get<std::vector<double>>();
    if (cfg.sweep_values.empty())
        throw std::invalid_argument("experiment: sweep needs at least one value");
    cfg.trials = j.value("trials", 30);
    if (cfg.trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
    cfg.seed_base = j.value("seed_base", std::uint64_t{0});
    // Validate the sweep axis up front so a bad name fails before any work.
    apply_sweep(cfg.base, cfg.sweep_param, cfg.sweep_values.front());
    return cfg;
}

GenerateConfig apply_sweep(const GenerateConfig& base, const std::string& param, double value) {
    GenerateConfig cfg = base;
    if (param == "n") {
        cfg.graph.n = static_cast<int>(value);
    } else if (param == "p") {
        cfg.graph.p = value;
    } else if (param == "sigma") {
        cfg.noise.sigma = value;
    } else if (param == "bound") {
        cfg.noise.bound = value;
    } else if (param == "q") {
        cfg.noise.q = value;
    } else if (param == "one_minus_q") {
        cfg.noise.q = 1.0 - value;
    } else if (param == "gamma") {
        cfg.noise.gamma = value;
    } else if (param == "delta") {
        cfg.noise.delta = value;
    } else if (param == "m") {
        if (cfg.spec.kind != GroupKind::Cyclic)
            throw std::invalid_argument("experiment: sweep over m requires a cyclic group");
        cfg.spec.m = static_cast<int>(value);
    } else {
        throw std::invalid_argument("experiment: unknown sweep parameter '" + param + "'");
    }
    return cfg;
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRow>& trace) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "iter,epsilon,objective,step_norm\n";
    for (const TraceRow& row : trace) {
        out << row.iter << ',' << format_g17(row.epsilon) << ',' << format_g17(row.objective)
            << ',' << format_g17(row.step_norm) << '\n';
    }
}

json master_report_to_json(const MasterReport& report) {
    return {{"rho", report.rho},
            {"kappa1", report.kappa.kappa1},
            {"kappa2", report.kappa.kappa2},
            {"kappa", report.kappa.kappa},
            {"op_norm_dinv_delta", report.op_norm_dinv_delta},
            {"frob_dinv_delta_gstar", report.frob_dinv_delta_gstar},
            {"eps0", report.eps0},
            {"cond_i", report.cond_i},
            {"cond_i_per_iter", report.cond_i_per_iter},
            {"cond_ii", report.cond_ii},
            {"cond_iii", report.cond_iii},
            {"cond_iv", report.cond_iv},
            {"all_conditions", report.all_conditions},
            {"envelope_violations", report.envelope_violations}};
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    json j;
    in >> j;
    return j;
}

void write_json_file(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << j.dump(2) << '\n';
}

}  // namespace gsync
