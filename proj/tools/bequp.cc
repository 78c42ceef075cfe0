// Copyright 2026 The BeQuP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "bequp/benchmarking.h"
#include "bequp/calibration.h"
#include "bequp/experiment.h"
#include "bequp/instance_io.h"
#include "bequp/qkd.h"

namespace {

using namespace bequp;

std::vector<std::string> split_list(const std::vector<std::string> &items) {
    std::vector<std::string> out;
    for (const auto &item : items) {
        std::stringstream ss(item);
        std::string part;
        while (std::getline(ss, part, ',')) {
            if (!part.empty()) {
                out.push_back(part);
            }
        }
    }
    return out;
}

// Fills an option's variable from the config document unless the flag was
// given on the command line.
template <typename T>
bool from_config(const nlohmann::json &doc, const char *key, const CLI::Option *opt, T &target) {
    if (opt->count() == 0 && doc.contains(key)) {
        target = doc.at(key).get<T>();
        return true;
    }
    return false;
}

template <typename T>
void list_from_config(const nlohmann::json &doc, const char *key, const CLI::Option *opt,
                      std::vector<std::string> &target) {
    if (opt->count() == 0 && doc.contains(key)) {
        const auto &v = doc.at(key);
        target.clear();
        if (v.is_array()) {
            for (const auto &e : v) {
                if constexpr (std::is_same_v<T, std::string>) {
                    target.push_back(e.get<std::string>());
                } else {
                    target.push_back(std::to_string(e.get<T>()));
                }
            }
        } else if constexpr (std::is_same_v<T, std::string>) {
            target.push_back(v.get<std::string>());
        } else {
            target.push_back(std::to_string(v.get<T>()));
        }
    }
}

std::vector<int> bounce_range(int max_bounces) {
    if (max_bounces < 1) {
        throw std::invalid_argument("--bounces must be at least 1");
    }
    std::vector<int> m;
    for (int i = 1; i <= max_bounces; ++i) {
        m.push_back(i);
    }
    return m;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Best quantum path identification: learners, baselines and experiment harness"};
    app.require_subcommand(1);

    // run
    auto *run = app.add_subcommand("run", "Run an experiment matrix and write CSV records");
    std::vector<std::string> algos, noises, ns;
    std::string metric = "fidelity", mode = "surrogate", out_path = "-", trace_dir, config_path;
    int trials = 10, t0 = 0, bounces = 10;
    unsigned threads = 0;
    double delta = 0.05, c = 0.0, c0 = 0.0;
    bool c_from_config = false, c0_from_config = false;
    std::uint64_t seed = 1, samples_per_arm = 20;
    bool allow_low = false, exact = false;
    auto *o_algo = run->add_option("--algo", algos, "Algorithms (comma separated)");
    auto *o_metric = run->add_option("--metric", metric, "fidelity or skf");
    auto *o_noise = run->add_option("--noise", noises, "Noise models (comma separated)");
    auto *o_n = run->add_option("--n", ns, "Values of n for the [2,2,n] topology (comma separated)");
    auto *o_trials = run->add_option("--trials", trials, "Trials per cell");
    auto *o_delta = run->add_option("--delta", delta, "Confidence parameter");
    auto *o_seed = run->add_option("--seed", seed, "Master seed");
    auto *o_t0 = run->add_option("--t0", t0, "Repetitions per bounce length for every algorithm");
    auto *o_bounces = run->add_option("--bounces", bounces, "Largest bounce count; the set is 1..bounces");
    auto *o_mode = run->add_option("--mode", mode, "surrogate or ptm");
    auto *o_out = run->add_option("--out", out_path, "CSV output path, - for stdout");
    auto *o_trace = run->add_option("--trace", trace_dir, "Directory for per-trial JSON-lines traces");
    auto *o_low = run->add_flag("--allow-low-fidelity", allow_low, "Allow fidelities below 0.55");
    auto *o_exact = run->add_flag("--exact", exact, "Noiseless feedback");
    auto *o_threads = run->add_option("--threads", threads, "Worker threads (BEQUP_THREADS caps this)");
    auto *o_c = run->add_option("--c", c, "Concentration constant C (default: calibrated for --mode)");
    auto *o_c0 = run->add_option("--c0", c0, "LinkEst constant C0 (default: calibrated for --mode)");
    auto *o_spa = run->add_option("--samples-per-arm", samples_per_arm, "Samples per arm for uniform baselines");
    run->add_option("--config", config_path, "JSON file with flag values; flags win")->check(CLI::ExistingFile);

    // bench
    auto *bench = app.add_subcommand("bench", "Repeated Bench calls on one link");
    double b_p = 0.0, b_f = 0.0;
    std::string b_noise = "depolarizing", b_mode = "surrogate";
    int b_t0 = 10, b_bounces = 10, b_samples = 100;
    std::uint64_t b_seed = 1;
    auto *o_bp = bench->add_option("--p", b_p, "Depolarizing parameter");
    auto *o_bf = bench->add_option("--fidelity", b_f, "Link fidelity");
    bench->add_option("--noise", b_noise, "Noise model");
    bench->add_option("--t0", b_t0, "Repetitions per bounce length");
    bench->add_option("--bounces", b_bounces, "Largest bounce count");
    bench->add_option("--samples", b_samples, "Number of Bench calls");
    bench->add_option("--mode", b_mode, "surrogate or ptm");
    bench->add_option("--seed", b_seed, "Seed");
    o_bp->excludes(o_bf);

    // gaps
    auto *gaps = app.add_subcommand("gaps", "Print link and path gaps of an instance file");
    std::string g_file, g_metric = "fidelity";
    gaps->add_option("instance", g_file, "Instance JSON")->required()->check(CLI::ExistingFile);
    gaps->add_option("--metric", g_metric, "fidelity or skf");

    // calibrate
    auto *cal = app.add_subcommand("calibrate", "Estimate the constants C and C0");
    std::string what = "all";
    int cal_runs = 0;
    std::uint64_t cal_seed = 1;
    cal->add_option("what", what, "radius, c0 or all");
    cal->add_option("--runs", cal_runs, "Runs per cell (0 keeps the default)");
    cal->add_option("--seed", cal_seed, "Seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            if (!config_path.empty()) {
                std::ifstream in(config_path);
                const auto doc = nlohmann::json::parse(in);
                list_from_config<std::string>(doc, "algo", o_algo, algos);
                from_config(doc, "metric", o_metric, metric);
                list_from_config<std::string>(doc, "noise", o_noise, noises);
                list_from_config<int>(doc, "n", o_n, ns);
                from_config(doc, "trials", o_trials, trials);
                from_config(doc, "delta", o_delta, delta);
                from_config(doc, "seed", o_seed, seed);
                from_config(doc, "t0", o_t0, t0);
                from_config(doc, "bounces", o_bounces, bounces);
                from_config(doc, "mode", o_mode, mode);
                from_config(doc, "out", o_out, out_path);
                from_config(doc, "trace", o_trace, trace_dir);
                from_config(doc, "allow_low_fidelity", o_low, allow_low);
                from_config(doc, "exact", o_exact, exact);
                from_config(doc, "threads", o_threads, threads);
                c_from_config = from_config(doc, "c", o_c, c);
                c0_from_config = from_config(doc, "c0", o_c0, c0);
                from_config(doc, "samples_per_arm", o_spa, samples_per_arm);
            }
            ExperimentConfig cfg;
            cfg.metric = parse_metric(metric);
            for (const auto &a : split_list(algos)) {
                cfg.algos.push_back(parse_algo(a));
            }
            if (cfg.algos.empty()) {
                for (Algo a : kAllAlgos) {
                    if (supports_metric(a, cfg.metric)) {
                        cfg.algos.push_back(a);
                    }
                }
            }
            for (const auto &k : split_list(noises)) {
                cfg.noise_models.push_back(parse_noise_kind(k));
            }
            if (cfg.noise_models.empty()) {
                cfg.noise_models.assign(kAllNoiseKinds.begin(), kAllNoiseKinds.end());
            }
            for (const auto &n : split_list(ns)) {
                cfg.n_values.push_back(std::stoi(n));
            }
            if (cfg.n_values.empty()) {
                cfg.n_values = {2, 3, 4, 5};
            }
            cfg.trials = trials;
            cfg.delta = delta;
            cfg.seed = seed;
            if (t0 > 0) {
                cfg.t0_override = t0;
            }
            cfg.bench.bounce_set = bounce_range(bounces);
            cfg.bench.mode = parse_bench_mode(mode);
            cfg.allow_low_fidelity = allow_low;
            cfg.exact_feedback = exact;
            cfg.threads = threads;
            if (!trace_dir.empty()) {
                cfg.trace_dir = trace_dir;
            }
            if (o_c->count() > 0 || c_from_config) {
                cfg.params.c = c;
            }
            if (o_c0->count() > 0 || c0_from_config) {
                cfg.params.c0 = c0;
            }
            cfg.params.samples_per_arm = samples_per_arm;
            for (Algo a : cfg.algos) {
                if (!supports_metric(a, cfg.metric)) {
                    throw std::invalid_argument(std::string(algo_name(a)) + " cannot rank paths by " + metric);
                }
            }
            for (int n : cfg.n_values) {
                build_experiment_instance(n, cfg.allow_low_fidelity);
            }
            const auto records = run_matrix(cfg);
            if (out_path == "-") {
                std::cout << records_to_csv(records);
            } else {
                emit_csv(records, out_path);
            }
            for (const auto &r : records) {
                if (!r.error.empty()) {
                    std::cerr << "trial " << r.algo << '/' << r.noise_model << "/n" << r.n << '/' << r.trial
                              << " failed: " << r.error << '\n';
                }
            }
            for (const auto &s : summarize(records)) {
                std::fprintf(stderr, "%-13s %-18s n=%d K=%zu cost=%.1f (se %.1f) success=%.3f\n", s.algo.c_str(),
                             s.noise_model.c_str(), s.n, s.num_paths, s.mean_cost, s.se_cost, s.success_rate);
            }
        } else if (bench->parsed()) {
            double p;
            if (o_bf->count()) {
                p = p_from_fidelity(b_f);
            } else if (o_bp->count()) {
                p = b_p;
            } else {
                throw std::invalid_argument("bench needs --p or --fidelity");
            }
            BenchConfig cfg;
            cfg.t0 = b_t0;
            cfg.bounce_set = bounce_range(b_bounces);
            cfg.mode = parse_bench_mode(b_mode);
            cfg.validate();
            const ChannelPtm ch = ptm_of(strength_from_fidelity(parse_noise_kind(b_noise), fidelity_from_p(p)));
            Rng rng(b_seed);
            std::printf("sample_idx,p_hat,a_hat,cost_units\n");
            for (int i = 0; i < b_samples; ++i) {
                const BenchResult r = bench_channel(p, ch, ch, 1, cfg, rng);
                std::printf("%d,%.10g,%.10g,%llu\n", i, r.p_hat, r.a_hat,
                            static_cast<unsigned long long>(r.cost_units));
            }
        } else if (gaps->parsed()) {
            const Instance inst = load_instance(g_file);
            const GapReport rep = parse_metric(g_metric) == Metric::kSkf
                                      ? compute_gaps(inst.topology(), skf_weights(inst))
                                      : compute_gaps(inst);
            std::cout << format_gap_report(inst, rep);
        } else if (cal->parsed()) {
            if (what == "radius" || what == "all") {
                for (BenchMode mode : {BenchMode::kSurrogate, BenchMode::kPtm}) {
                    RadiusCalibrationConfig rc;
                    rc.seed = cal_seed;
                    rc.modes = {mode};
                    if (cal_runs > 0) {
                        rc.runs = cal_runs;
                    }
                    const auto r = calibrate_radius_constant(rc);
                    for (const auto &cell : r.cells) {
                        std::printf("%s p=%.3f N=%d delta=%.2f ratio=%.5f\n",
                                    std::string(bench_mode_name(cell.mode)).c_str(), cell.p, cell.n, cell.delta,
                                    cell.ratio);
                    }
                    std::printf("%s: C = %.6g (c = %.6g)\n", std::string(bench_mode_name(mode)).c_str(), r.c,
                                r.c_root);
                }
            }
            if (what == "c0" || what == "all") {
                // PTM mode never reaches the coverage target; its C0 is derived.
                for (BenchMode mode : {BenchMode::kSurrogate}) {
                    C0CalibrationConfig cc;
                    cc.seed = cal_seed;
                    cc.bench.mode = mode;
                    if (cal_runs > 0) {
                        cc.runs = cal_runs;
                    }
                    const auto r = calibrate_c0(cc);
                    for (std::size_t i = 0; i < r.coverage.size(); ++i) {
                        std::printf("%s setting %zu: N=%llu coverage=%.4f\n",
                                    std::string(bench_mode_name(mode)).c_str(), i,
                                    static_cast<unsigned long long>(r.coverage[i].n), r.coverage[i].coverage);
                    }
                    std::printf("%s: C0 = %.6g\n", std::string(bench_mode_name(mode)).c_str(), r.c0);
                    std::fflush(stdout);
                }
                std::printf("ptm: C0 = %.6g (scaled from surrogate)\n", kDefaultC0Ptm);
            }
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
