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

#include "bequp/experiment.h"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "bequp/link_learner.h"
#include "bequp/path_learner.h"
#include "bequp/qkd.h"

namespace bequp {

std::string_view algo_name(Algo algo) {
    switch (algo) {
        case Algo::kBequpLink:
            return "bequp-link";
        case Algo::kBequpPath:
            return "bequp-path";
        case Algo::kUniformLink:
            return "uniform-link";
        case Algo::kUniformPath:
            return "uniform-path";
        case Algo::kSuccElim:
            return "succ-elim";
        case Algo::kLinkSelfie:
            return "linkselfie";
    }
    throw std::logic_error("unknown algorithm");
}

Algo parse_algo(std::string_view name) {
    for (Algo a : kAllAlgos) {
        if (algo_name(a) == name) {
            return a;
        }
    }
    throw std::invalid_argument("unknown algorithm: " + std::string(name));
}

bool supports_metric(Algo algo, Metric metric) {
    if (metric == Metric::kFidelity) {
        return true;
    }
    return algo == Algo::kBequpLink || algo == Algo::kBequpPath || algo == Algo::kUniformLink;
}

bool is_link_level(Algo algo) {
    return algo == Algo::kBequpLink || algo == Algo::kUniformLink;
}

std::vector<double> cd_fidelities(int n) {
    if (n < 2) {
        throw std::invalid_argument("experiment instance needs n >= 2");
    }
    std::vector<double> f = {0.99};
    for (int i = 1; i < n; ++i) {
        f.push_back(static_cast<double>(95 - 10 * (i - 1)) / 100.0);
    }
    return f;
}

std::vector<double> experiment_fidelities(int n) {
    std::vector<double> f = {0.99, 0.90, 0.99, 0.90};
    for (double v : cd_fidelities(n)) {
        f.push_back(v);
    }
    return f;
}

Instance build_experiment_instance(int n, bool allow_low_fidelity) {
    const std::vector<double> fid = experiment_fidelities(n);
    std::vector<double> p;
    for (double f : fid) {
        if (f < 0.55 - 1e-12 && !allow_low_fidelity) {
            throw std::invalid_argument("n = " + std::to_string(n) +
                                        " needs fidelities below 0.55; pass --allow-low-fidelity");
        }
        p.push_back(p_from_fidelity(std::max(f, kLowFidelityFloor)));
    }
    const std::size_t counts[3] = {2, 2, static_cast<std::size_t>(n)};
    Instance inst(Topology::segmented(counts), std::move(p));
    true_best_path(inst);  // Throws on a tie.
    return inst;
}

std::uint64_t trial_seed(std::uint64_t seed, Algo algo, NoiseKind noise, int n, int trial) {
    std::uint64_t s = derive_seed(seed, algo_name(algo));
    s = derive_seed(s, noise_kind_name(noise));
    s = derive_seed(s, static_cast<std::uint64_t>(n));
    return derive_seed(s, static_cast<std::uint64_t>(trial));
}

AlgoParams AlgoParams::resolved(BenchMode mode) const {
    AlgoParams p = *this;
    p.c = c.value_or(default_radius_c(mode));
    p.c0 = c0.value_or(default_c0(mode));
    return p;
}

BenchConfig bench_config_for(Algo algo, const ExperimentConfig &cfg) {
    BenchConfig b = cfg.bench;
    const bool uniform = algo == Algo::kUniformLink || algo == Algo::kUniformPath;
    b.t0 = cfg.t0_override.value_or(uniform ? cfg.params.t0_uniform : cfg.params.t0_adaptive);
    return b;
}

RunResult run_algorithm(Algo algo, Feedback &feedback, Metric metric, double delta, const AlgoParams &params,
                        Rng &rng, bool record_rounds) {
    const MetricAdapter adapter = adapter_for(metric);
    switch (algo) {
        case Algo::kBequpLink: {
            LinkLearnerConfig c;
            c.radius = {params.c.value_or(kDefaultRadiusC), delta};
            c.metric = adapter;
            c.round_cap = params.round_cap;
            c.record_rounds = record_rounds;
            return run_bequp_link(feedback, c, rng);
        }
        case Algo::kBequpPath: {
            PathLearnerConfig c;
            c.delta = delta;
            c.c0 = params.c0.value_or(kDefaultC0);
            c.metric = adapter;
            c.record_rounds = record_rounds;
            return run_bequp_path(feedback, c, rng);
        }
        default:
            break;
    }
    BaselineConfig b;
    b.samples_per_arm = params.samples_per_arm;
    b.delta = delta;
    b.c = params.c.value_or(kDefaultRadiusC);
    b.halving_resolution = params.halving_resolution;
    b.metric = adapter;
    switch (algo) {
        case Algo::kUniformLink:
            return uniform_link(feedback, b, rng);
        case Algo::kUniformPath:
            return uniform_path(feedback, b, rng);
        case Algo::kSuccElim:
            return succ_elim(feedback, b, rng);
        case Algo::kLinkSelfie:
            return linkselfie_style(feedback, b, rng);
        default:
            break;
    }
    throw std::logic_error("unhandled algorithm");
}

ExperimentRecord run_trial(const ExperimentConfig &cfg, Algo algo, NoiseKind noise, int n, int trial,
                           RunResult *run) {
    ExperimentRecord rec;
    rec.algo = algo_name(algo);
    rec.metric = metric_name(cfg.metric);
    rec.noise_model = noise_kind_name(noise);
    rec.n = n;
    rec.trial = trial;
    rec.seed = trial_seed(cfg.seed, algo, noise, n, trial);
    const auto start = std::chrono::steady_clock::now();
    try {
        if (!supports_metric(algo, cfg.metric)) {
            throw UnsupportedMetricError(std::string(algo_name(algo)) + " does not support the skf metric");
        }
        Instance inst = build_experiment_instance(n, cfg.allow_low_fidelity);
        rec.num_paths = inst.num_paths();
        rec.num_links = inst.num_links();
        const PathId truth = cfg.metric == Metric::kSkf
                                 ? compute_gaps(inst.topology(), skf_weights(inst)).best_path
                                 : true_best_path(inst);
        rec.true_best = static_cast<std::int64_t>(truth.value);
        Rng rng(rec.seed);
        RunResult result;
        const bool record = cfg.trace_dir.has_value() || run != nullptr;
        const AlgoParams params = cfg.params.resolved(cfg.bench.mode);
        if (cfg.exact_feedback) {
            ExactFeedback fb(inst);
            result = run_algorithm(algo, fb, cfg.metric, cfg.delta, params, rng, record);
        } else {
            BenchFeedback fb(Benchmarker(inst, noise, bench_config_for(algo, cfg)));
            result = run_algorithm(algo, fb, cfg.metric, cfg.delta, params, rng, record);
        }
        rec.output_path = static_cast<std::int64_t>(result.output_path.value);
        rec.success = !result.budget_exhausted && result.output_path == truth;
        rec.resource_cost = result.total_cost;
        rec.rounds = result.rounds;
        if (cfg.trace_dir) {
            std::filesystem::create_directories(*cfg.trace_dir);
            const auto file = *cfg.trace_dir / (rec.algo + "_" + rec.metric + "_" + rec.noise_model + "_n" +
                                                std::to_string(n) + "_t" + std::to_string(trial) + ".jsonl");
            std::ofstream out(file);
            if (!out) {
                throw std::runtime_error("cannot write trace " + file.string());
            }
            out << trace_jsonl(result);
        }
        if (run) {
            *run = std::move(result);
        }
    } catch (const std::exception &e) {
        rec.error = e.what();
        rec.success = false;
    }
    rec.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

unsigned worker_count(unsigned requested) {
    unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("BEQUP_THREADS")) {
        char *end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && cap >= 1) {
            n = std::min<unsigned>(n, static_cast<unsigned>(cap));
        }
    }
    return std::max(1u, n);
}

std::vector<ExperimentRecord> run_matrix(const ExperimentConfig &cfg) {
    if (cfg.trials < 1) {
        throw std::invalid_argument("trials must be at least 1");
    }
    struct Task {
        Algo algo;
        NoiseKind noise;
        int n;
        int trial;
    };
    std::vector<Task> tasks;
    for (Algo a : cfg.algos) {
        for (NoiseKind k : cfg.noise_models) {
            for (int n : cfg.n_values) {
                for (int t = 0; t < cfg.trials; ++t) {
                    tasks.push_back({a, k, n, t});
                }
            }
        }
    }
    std::vector<ExperimentRecord> records(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            const Task &t = tasks[i];
            records[i] = run_trial(cfg, t.algo, t.noise, t.n, t.trial);
        }
    };
    const unsigned workers = std::min<std::size_t>(worker_count(cfg.threads), std::max<std::size_t>(1, tasks.size()));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(worker);
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    return records;
}

std::string records_to_csv(const std::vector<ExperimentRecord> &records) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    char wall[32];
    for (const auto &r : records) {
        std::snprintf(wall, sizeof wall, "%.3f", r.wall_time_ms);
        out << r.algo << ',' << r.metric << ',' << r.noise_model << ',' << r.n << ',' << r.num_paths << ','
            << r.num_links << ',' << r.trial << ',' << r.seed << ',' << r.output_path << ',' << r.true_best << ','
            << (r.success ? 1 : 0) << ',' << r.resource_cost << ',' << r.rounds << ',' << wall << '\n';
    }
    return out.str();
}

void emit_csv(const std::vector<ExperimentRecord> &records, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    out << records_to_csv(records);
    if (!out) {
        throw std::runtime_error("write failed for " + path.string());
    }
}

std::vector<ExperimentRecord> parse_csv(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw std::invalid_argument("CSV header mismatch");
    }
    std::vector<ExperimentRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            f.push_back(cell);
        }
        if (f.size() != 14) {
            throw std::invalid_argument("CSV row has " + std::to_string(f.size()) + " fields");
        }
        ExperimentRecord r;
        r.algo = f[0];
        r.metric = f[1];
        r.noise_model = f[2];
        r.n = std::stoi(f[3]);
        r.num_paths = std::stoull(f[4]);
        r.num_links = std::stoull(f[5]);
        r.trial = std::stoi(f[6]);
        r.seed = std::stoull(f[7]);
        r.output_path = std::stoll(f[8]);
        r.true_best = std::stoll(f[9]);
        r.success = f[10] == "1";
        r.resource_cost = std::stoull(f[11]);
        r.rounds = std::stoull(f[12]);
        r.wall_time_ms = std::stod(f[13]);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<CellSummary> summarize(const std::vector<ExperimentRecord> &records) {
    std::vector<CellSummary> out;
    std::map<std::tuple<std::string, std::string, int>, std::size_t> index;
    std::vector<std::vector<double>> costs;
    std::vector<int> successes;
    for (const auto &r : records) {
        auto key = std::make_tuple(r.algo, r.noise_model, r.n);
        auto [it, inserted] = index.emplace(key, out.size());
        if (inserted) {
            out.push_back({r.algo, r.noise_model, r.n, r.num_paths, 0, 0.0, 0.0, 0.0});
            costs.emplace_back();
            successes.push_back(0);
        }
        costs[it->second].push_back(static_cast<double>(r.resource_cost));
        successes[it->second] += r.success ? 1 : 0;
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto &c = costs[i];
        const double n = static_cast<double>(c.size());
        double mean = 0.0;
        for (double v : c) {
            mean += v;
        }
        mean /= n;
        double var = 0.0;
        for (double v : c) {
            var += (v - mean) * (v - mean);
        }
        out[i].trials = static_cast<int>(c.size());
        out[i].mean_cost = mean;
        out[i].se_cost = c.size() > 1 ? std::sqrt(var / (n - 1.0) / n) : 0.0;
        out[i].success_rate = successes[i] / n;
    }
    return out;
}

}  // namespace bequp
