// Command-line driver: instance generation, solving, experiment sweeps and
// quick property checks for group synchronization over O(d), SO(d), P(d)
// and Z_m.

#include <CLI11.hpp>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <thread>

#include "gsync/analysis.hpp"
#include "gsync/gen.hpp"
#include "gsync/io.hpp"
#include "gsync/solver.hpp"

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

constexpr int kExitSolveFailure = 1;
constexpr int kExitConfigError = 2;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string g17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

int cmd_generate(const std::string& config_path, const std::string& out_path,
                 std::optional<std::uint64_t> seed_override) {
    gsync::GenerateConfig cfg;
    try {
        cfg = gsync::generate_config_from_json(gsync::read_json_file(config_path));
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    }
    if (seed_override) cfg.seed = *seed_override;
    try {
        const gsync::Instance instance =
            gsync::gen_instance(cfg.spec, cfg.graph, cfg.noise, cfg.seed);
        gsync::write_instance(out_path, instance);
    } catch (const std::exception& e) {
        std::cerr << "generation failed: " << e.what() << "\n";
        return kExitSolveFailure;
    }
    return 0;
}

int cmd_solve(const std::string& instance_path, const std::string& out_dir,
              const std::string& init, const std::string& init_file, int max_iters, double tol) {
    gsync::Instance instance;
    try {
        instance = gsync::read_instance(instance_path);
    } catch (const std::exception& e) {
        std::cerr << "cannot load instance: " << e.what() << "\n";
        return kExitConfigError;
    }

    try {
        gsync::BlockColumn g0;
        if (init == "spectral") {
            g0 = gsync::spectral_estimator(instance);
        } else if (init == "groundtruth") {
            if (!instance.ground_truth) {
                std::cerr << "config error: --init groundtruth but the instance has none\n";
                return kExitConfigError;
            }
            g0 = *instance.ground_truth;
        } else if (init == "file") {
            const gsync::json j = gsync::read_json_file(init_file);
            g0 = gsync::block_column_from_json(j, instance.graph.n, instance.spec.d);
        } else {
            std::cerr << "config error: --init must be spectral, groundtruth or file\n";
            return kExitConfigError;
        }

        gsync::SolveConfig cfg;
        cfg.max_iters = max_iters;
        cfg.tol = tol;
        const gsync::SolveResult result = gsync::gpm(instance, g0, cfg);

        fs::create_directories(out_dir);
        gsync::write_json_file(fs::path(out_dir) / "estimate.json",
                               gsync::block_column_to_json(result.estimate));
        gsync::write_trace_csv(fs::path(out_dir) / "trace.csv", result.trace);
        if (instance.ground_truth) {
            const gsync::MasterReport report = gsync::master_report(instance, result);
            gsync::write_json_file(fs::path(out_dir) / "report.json",
                                   gsync::master_report_to_json(report));
            std::cout << "final epsilon: " << g17(result.trace.back().epsilon) << "\n";
        }
        std::cout << "iterations: " << result.iterations
                  << (result.converged ? " (converged)" : " (max iterations)") << "\n";
    } catch (const std::exception& e) {
        std::cerr << "solve failed: " << e.what() << "\n";
        return kExitSolveFailure;
    }
    return 0;
}

struct TrialRow {
    double sweep_value = 0.0;
    int trial = 0;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    double eps_spectral = 0.0;
    double eps_gpm = 0.0;
    double recovery_spectral = 0.0;
    double recovery_gpm = 0.0;
    double time_spectral = 0.0;
    double time_gpm = 0.0;  // GPM iterations only
};

TrialRow run_trial(const gsync::ExperimentConfig& cfg, int sweep_index, int trial) {
    constexpr std::uint64_t kStride = 0x9e3779b97f4a7c15ULL;  // odd, wraps mod 2^64
    TrialRow row;
    row.sweep_value = cfg.sweep_values[sweep_index];
    row.trial = trial;
    row.seed = cfg.seed_base +
               kStride * (static_cast<std::uint64_t>(sweep_index) * cfg.trials + trial);
    try {
        const gsync::GenerateConfig gen_cfg =
            gsync::apply_sweep(cfg.base, cfg.sweep_param, row.sweep_value);
        const gsync::Instance instance =
            gsync::gen_instance(gen_cfg.spec, gen_cfg.graph, gen_cfg.noise, row.seed);

        const auto t0 = Clock::now();
        const gsync::BlockColumn spectral = gsync::spectral_estimator(instance);
        row.time_spectral = seconds_since(t0);

        const auto t1 = Clock::now();
        gsync::SolveConfig solve_cfg = cfg.solve;
        solve_cfg.record_trace = false;
        const gsync::SolveResult result = gsync::gpm(instance, spectral, solve_cfg);
        row.time_gpm = seconds_since(t1);

        const gsync::BlockColumn& truth = *instance.ground_truth;
        row.eps_spectral = gsync::estimation_error(gen_cfg.spec, spectral, truth).epsilon;
        row.eps_gpm = gsync::estimation_error(gen_cfg.spec, result.estimate, truth).epsilon;
        row.recovery_spectral = gsync::recovery_rate(gen_cfg.spec, spectral, truth);
        row.recovery_gpm = gsync::recovery_rate(gen_cfg.spec, result.estimate, truth);
        row.ok = true;
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

int cmd_experiment(const std::string& config_path, const std::string& out_dir, int threads) {
    gsync::ExperimentConfig cfg;
    try {
        cfg = gsync::experiment_config_from_json(gsync::read_json_file(config_path));
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    }

    const int num_sweep = static_cast<int>(cfg.sweep_values.size());
    const int total = num_sweep * cfg.trials;
    std::vector<TrialRow> rows(total);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            const int task = next.fetch_add(1);
            if (task >= total) return;
            rows[task] = run_trial(cfg, task / cfg.trials, task % cfg.trials);
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    try {
        fs::create_directories(out_dir);
        std::ofstream trials_csv(fs::path(out_dir) / "trials.csv");
        trials_csv << "sweep_param,sweep_value,trial,seed,ok,eps_spectral,eps_gpm,"
                      "recovery_spectral,recovery_gpm,time_spectral,time_gpm,time_total\n";
        for (const TrialRow& r : rows) {
            trials_csv << cfg.sweep_param << ',' << g17(r.sweep_value) << ',' << r.trial << ','
                       << r.seed << ',' << (r.ok ? 1 : 0) << ',' << g17(r.eps_spectral) << ','
                       << g17(r.eps_gpm) << ',' << g17(r.recovery_spectral) << ','
                       << g17(r.recovery_gpm) << ',' << g17(r.time_spectral) << ','
                       << g17(r.time_gpm) << ',' << g17(r.time_spectral + r.time_gpm) << '\n';
        }

        std::ofstream agg_csv(fs::path(out_dir) / "aggregate.csv");
        agg_csv << "sweep_param,sweep_value,trials,failures,mean_eps_spectral,mean_eps_gpm,"
                   "mean_recovery_spectral,mean_recovery_gpm,mean_time_spectral,mean_time_gpm,"
                   "mean_time_total\n";
        bool any_failure = false;
        for (int s = 0; s < num_sweep; ++s) {
            double sum[6] = {0, 0, 0, 0, 0, 0};
            int ok_count = 0;
            for (int t = 0; t < cfg.trials; ++t) {
                const TrialRow& r = rows[s * cfg.trials + t];
                if (!r.ok) {
                    any_failure = true;
                    std::cerr << "trial failed (value " << r.sweep_value << ", trial " << r.trial
                              << "): " << r.error << "\n";
                    continue;
                }
                ++ok_count;
                sum[0] += r.eps_spectral;
                sum[1] += r.eps_gpm;
                sum[2] += r.recovery_spectral;
                sum[3] += r.recovery_gpm;
                sum[4] += r.time_spectral;
                sum[5] += r.time_gpm;
            }
            const double denom = ok_count > 0 ? ok_count : 1;
            agg_csv << cfg.sweep_param << ',' << g17(cfg.sweep_values[s]) << ',' << ok_count << ','
                    << (cfg.trials - ok_count) << ',' << g17(sum[0] / denom) << ','
                    << g17(sum[1] / denom) << ',' << g17(sum[2] / denom) << ','
                    << g17(sum[3] / denom) << ',' << g17(sum[4] / denom) << ','
                    << g17(sum[5] / denom) << ',' << g17((sum[4] + sum[5]) / denom) << '\n';
        }
        return any_failure ? kExitSolveFailure : 0;
    } catch (const std::exception& e) {
        std::cerr << "cannot write results: " << e.what() << "\n";
        return kExitConfigError;
    }
}

int cmd_check(std::uint64_t seed) {
    using gsync::GroupSpec;
    const GroupSpec specs[] = {GroupSpec::orthogonal(3), GroupSpec::special_orthogonal(3),
                               GroupSpec::permutation(5), GroupSpec::cyclic(6)};
    gsync::Rng rng(seed);
    bool all_ok = true;
    for (const GroupSpec& spec : specs) {
        const bool contraction = gsync::contraction_check(spec, 2000, rng);
        // Idempotence and membership on random inputs.
        bool projection_ok = true;
        for (int s = 0; s < 500; ++s) {
            Eigen::MatrixXd X(spec.d, spec.d);
            for (int a = 0; a < spec.d; ++a)
                for (int b = 0; b < spec.d; ++b) X(a, b) = rng.gaussian();
            const Eigen::MatrixXd P = gsync::project(spec, X).mat;
            if (!gsync::is_member(spec, P) ||
                (gsync::project(spec, P).mat - P).norm() > 1e-9) {
                projection_ok = false;
                break;
            }
        }
        const bool ok = contraction && projection_ok;
        all_ok &= ok;
        std::cout << (ok ? "PASS" : "FAIL") << " " << spec.name()
                  << " projection/contraction properties\n";
    }
    return all_ok ? 0 : kExitSolveFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Group synchronization via spectral initialization and the generalized power method"};
    app.require_subcommand(1);

    std::string config_path, out_path, instance_path, init = "spectral", init_file;
    std::optional<std::uint64_t> seed_override;
    std::uint64_t check_seed = 1;
    int max_iters = 200;
    double tol = 1e-10;
    int threads = 1;

    auto* generate = app.add_subcommand("generate", "Generate a synthetic instance file");
    generate->add_option("--config", config_path, "Generation config JSON")->required();
    generate->add_option("--out", out_path, "Output instance path")->required();
    generate->add_option("--seed", seed_override, "Override the config seed");

    auto* solve = app.add_subcommand("solve", "Solve an instance (spectral init + GPM)");
    solve->add_option("--config", instance_path, "Instance JSON path")->required();
    solve->add_option("--out", out_path, "Output directory")->required();
    solve->add_option("--init", init, "Initialization: spectral|groundtruth|file");
    solve->add_option("--init-file", init_file, "Initial estimate (with --init file)");
    solve->add_option("--max-iters", max_iters, "Iteration cap");
    solve->add_option("--tol", tol, "Relative step-norm stopping tolerance");

    auto* experiment = app.add_subcommand("experiment", "Run a parameter sweep with repeats");
    experiment->add_option("--config", config_path, "Experiment config JSON")->required();
    experiment->add_option("--out", out_path, "Output directory")->required();
    experiment->add_option("--threads", threads, "Concurrent trials");

    auto* check = app.add_subcommand("check", "Run projection/contraction property suites");
    check->add_option("--seed", check_seed, "RNG seed for the property samples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfigError;
    }

    if (generate->parsed()) return cmd_generate(config_path, out_path, seed_override);
    if (solve->parsed()) return cmd_solve(instance_path, out_path, init, init_file, max_iters, tol);
    if (experiment->parsed()) return cmd_experiment(config_path, out_path, threads);
    if (check->parsed()) return cmd_check(check_seed);
    return kExitConfigError;
}
