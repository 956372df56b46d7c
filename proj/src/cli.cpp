#include "qais/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>

#include "qais/common.hpp"
#include "qais/estimator.hpp"
#include "qais/tiling.hpp"
#include "qais/train.hpp"
#include "qais/vegas.hpp"

namespace qais::cli {
namespace {

namespace fs = std::filesystem;

std::string out_path(const KeyValueDoc& doc, const std::string& name) {
    const std::string dir = doc.get_or("out", ".");
    fs::create_directories(dir);
    return (fs::path(dir) / name).string();
}

std::ofstream open_csv(const KeyValueDoc& doc, const std::string& name,
                       const std::string& command, const std::string& header) {
    const std::string path = out_path(doc, name);
    std::ofstream out(path);
    if (!out) fail_invalid("cannot write " + path);
    // Timestamp lives only in this comment line; the body is reproducible.
    char stamp[64] = "";
    const std::time_t now = std::time(nullptr);
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    out << "# qais " << command << " " << stamp << "\n" << header << "\n";
    return out;
}

int threads_from(const KeyValueDoc& doc) {
    return doc.has("threads") ? static_cast<int>(doc.get_int("threads")) : 1;
}

std::vector<std::uint64_t> shot_schedule(const KeyValueDoc& doc, const std::string& key) {
    if (!doc.has(key)) fail_invalid("missing shot schedule: " + key);
    std::vector<std::uint64_t> shots;
    for (double v : doc.get_doubles(key)) {
        if (v < 2.0 || v != std::floor(v)) fail_invalid(key + " entries must be integers >= 2");
        shots.push_back(static_cast<std::uint64_t>(v));
    }
    if (shots.empty()) fail_invalid(key + " must not be empty");
    for (std::size_t k = 1; k < shots.size(); ++k)
        if (shots[k] <= shots[k - 1]) fail_invalid(key + " must be strictly increasing");
    return shots;
}

/// Proposal construction shared by integrate and compare: either the exact
/// oracle state from the target PMF or a trained parameter file.
StateVector proposal_from_config(const KeyValueDoc& doc, const GridSpec& spec,
                                 const Integrand& f) {
    const bool oracle = doc.get_or("integrate.oracle", "false") == "true";
    if (oracle) {
        const int per_cell = doc.has("target.samples_per_cell")
                                 ? static_cast<int>(doc.get_int("target.samples_per_cell"))
                                 : 8;
        const std::uint64_t seed = doc.has("target.seed") ? doc.get_uint("target.seed") : 42;
        const Integrand shaped = f.label == "pentagon" ? abs_integrand(f) : f;
        return oracle_proposal(build_target_pmf(spec, shaped, per_cell, seed), spec.total_qubits());
    }
    if (!doc.has("integrate.params"))
        fail_invalid("need integrate.params (trained parameter file) or integrate.oracle = true");
    const TrainedProposal trained = load_params_file(doc.get("integrate.params"));
    if (trained.n != spec.total_qubits())
        fail_invalid("parameter file was trained for " + std::to_string(trained.n) +
                     " qubits, grid has " + std::to_string(spec.total_qubits()));
    return run_ansatz(trained.ansatz, trained.n, trained.params);
}

VegasConfig vegas_config_from(const KeyValueDoc& doc) {
    VegasConfig cfg;
    if (doc.has("vegas.bins")) cfg.grid_bins = static_cast<int>(doc.get_int("vegas.bins"));
    if (doc.has("vegas.samples_per_iteration"))
        cfg.samples_per_iteration = doc.get_uint("vegas.samples_per_iteration");
    if (doc.has("vegas.iterations")) cfg.iterations = static_cast<int>(doc.get_int("vegas.iterations"));
    if (doc.has("vegas.alpha")) cfg.alpha = doc.get_double("vegas.alpha");
    if (doc.has("vegas.seed")) cfg.seed = doc.get_uint("vegas.seed");
    return cfg;
}

}  // namespace

GridSpec grid_from_config(const KeyValueDoc& doc) {
    const int dims = static_cast<int>(doc.get_int("grid.dims"));
    const std::vector<int> qubits = doc.get_ints("grid.qubits");
    const std::vector<double> lower = doc.get_doubles("grid.lower");
    const std::vector<double> upper = doc.get_doubles("grid.upper");
    if (static_cast<int>(qubits.size()) != dims || static_cast<int>(lower.size()) != dims ||
        static_cast<int>(upper.size()) != dims)
        fail_invalid("grid.dims does not match the qubits/lower/upper lists");
    std::vector<std::pair<double, double>> bounds;
    for (int i = 0; i < dims; ++i) bounds.push_back({lower[static_cast<std::size_t>(i)], upper[static_cast<std::size_t>(i)]});
    return GridSpec(qubits, bounds);
}

void grid_to_config(KeyValueDoc& doc, const GridSpec& spec) {
    doc.set("grid.dims", std::to_string(spec.dims()));
    std::string qubits, lower, upper;
    for (int i = 0; i < spec.dims(); ++i) {
        const std::size_t s = static_cast<std::size_t>(i);
        if (i) {
            qubits += ' ';
            lower += ' ';
            upper += ' ';
        }
        qubits += std::to_string(spec.qubits[s]);
        lower += format_full(spec.bounds[s].first);
        upper += format_full(spec.bounds[s].second);
    }
    doc.set("grid.qubits", qubits);
    doc.set("grid.lower", lower);
    doc.set("grid.upper", upper);
}

Integrand integrand_from_config(const KeyValueDoc& doc) {
    const std::string name = doc.get("integrand.name");
    if (name == "gauss2") return gauss2_integrand();
    if (name == "ring") return ring_integrand();
    if (name == "multipeak") {
        const int d = doc.has("integrand.dim") ? static_cast<int>(doc.get_int("integrand.dim")) : 2;
        return multipeak_integrand(d);
    }
    if (name == "pentagon") {
        if (!doc.has("integrand.kinematics"))
            fail_invalid("pentagon integrand needs integrand.kinematics = <file>");
        return pentagon_ltd_integrand(PentagonKinematics::load(doc.get("integrand.kinematics")));
    }
    if (name == "constant") {
        // Calibration aid: known integral, zero variance everywhere.
        const int d = doc.has("integrand.dim") ? static_cast<int>(doc.get_int("integrand.dim")) : 2;
        const double value = doc.has("integrand.value") ? doc.get_double("integrand.value") : 1.0;
        Integrand f;
        f.label = "constant";
        f.domain.assign(static_cast<std::size_t>(d), {0.0, 1.0});
        f.eval = [value](std::span<const double>) { return value; };
        return f;
    }
    fail_invalid("unknown integrand '" + name +
                 "'; valid choices: gauss2, ring, multipeak, pentagon, constant");
}

AnsatzSpec ansatz_from_words(const std::vector<std::string>& words) {
    AnsatzSpec spec;
    for (const std::string& word : words) {
        if (word == "R")
            spec.layers.push_back(LayerSpec::rotation());
        else if (word == "EX")
            spec.layers.push_back(LayerSpec::entangler(PauliAxis::X));
        else if (word == "EY")
            spec.layers.push_back(LayerSpec::entangler(PauliAxis::Y));
        else if (word == "EZ")
            spec.layers.push_back(LayerSpec::entangler(PauliAxis::Z));
        else
            fail_invalid("unknown ansatz layer '" + word + "'; valid: EX, EY, EZ, R");
    }
    if (spec.layers.empty()) fail_invalid("empty ansatz layer list");
    return spec;
}

std::vector<std::string> ansatz_to_words(const AnsatzSpec& spec) {
    std::vector<std::string> words;
    for (const LayerSpec& layer : spec.layers) {
        if (layer.kind == LayerSpec::Kind::Rotation) {
            words.push_back("R");
        } else {
            words.push_back(layer.axis == PauliAxis::X   ? "EX"
                            : layer.axis == PauliAxis::Y ? "EY"
                                                         : "EZ");
        }
    }
    return words;
}

void save_params_file(const std::string& path, const TrainedProposal& trained) {
    std::ofstream out(path);
    if (!out) fail_invalid("cannot write " + path);
    out << "n = " << trained.n << "\n";
    out << "qubits =";
    for (int q : trained.qubits) out << ' ' << q;
    out << "\nlayers =";
    for (const std::string& w : ansatz_to_words(trained.ansatz)) out << ' ' << w;
    out << "\nparams = " << format_full(trained.params) << "\n";
    out << "seed = " << trained.seed << "\n";
    out << "final_kl = " << format_full(trained.final_kl) << "\n";
}

TrainedProposal load_params_file(const std::string& path) {
    const KeyValueDoc doc = KeyValueDoc::parse_file(path);
    TrainedProposal trained;
    trained.n = static_cast<int>(doc.get_int("n"));
    trained.qubits = doc.get_ints("qubits");
    trained.ansatz = ansatz_from_words(doc.get_words("layers"));
    trained.params = doc.get_doubles("params");
    trained.seed = doc.get_uint("seed");
    trained.final_kl = doc.get_double("final_kl");
    if (trained.params.size() != trained.ansatz.param_count(trained.n))
        fail_invalid(path + ": parameter count does not match the layer list");
    return trained;
}

int cmd_train(const KeyValueDoc& doc) {
    const GridSpec spec = grid_from_config(doc);
    const Integrand f = integrand_from_config(doc);
    const Integrand shaped = f.label == "pentagon" ? abs_integrand(f) : f;

    const int per_cell = doc.has("target.samples_per_cell")
                             ? static_cast<int>(doc.get_int("target.samples_per_cell"))
                             : 8;
    const std::uint64_t target_seed = doc.has("target.seed") ? doc.get_uint("target.seed") : 42;
    const TargetPMF target = build_target_pmf(spec, shaped, per_cell, target_seed);

    const AnsatzSpec ansatz = ansatz_from_words(
        doc.has("ansatz.layers") ? doc.get_words("ansatz.layers")
                                 : std::vector<std::string>{"EZ", "R", "EX", "R"});
    TrainConfig cfg;
    if (doc.has("train.optimizer")) {
        const std::string name = doc.get("train.optimizer");
        if (name == "cobyla")
            cfg.optimizer = TrainConfig::Optimizer::Cobyla;
        else if (name == "nelder-mead")
            cfg.optimizer = TrainConfig::Optimizer::NelderMead;
        else
            fail_invalid("unknown optimizer '" + name + "'; valid: cobyla, nelder-mead");
    }
    if (doc.has("train.max_iterations"))
        cfg.max_iterations = static_cast<int>(doc.get_int("train.max_iterations"));
    if (doc.has("train.initial_step")) cfg.initial_step = doc.get_double("train.initial_step");
    if (doc.has("train.tolerance")) cfg.tolerance = doc.get_double("train.tolerance");
    if (doc.has("train.seed")) cfg.seed = doc.get_uint("train.seed");

    const TrainReport report = train_qcbm(ansatz, spec.total_qubits(), target, cfg);

    TrainedProposal trained;
    trained.n = spec.total_qubits();
    trained.qubits = spec.qubits;
    trained.ansatz = ansatz;
    trained.params = report.best_params;
    trained.seed = cfg.seed;
    trained.final_kl = report.final_kl;
    save_params_file(out_path(doc, "params.cfg"), trained);

    std::ofstream history = open_csv(doc, "train_history.csv", "train", "iteration,kl");
    for (const auto& [iteration, kl] : report.cost_history)
        history << iteration << ',' << format_full(kl) << "\n";

    std::printf("trained %zu parameters in %.1fs: initial KL %s, final KL %s\n",
                report.best_params.size(), report.wall_seconds,
                format_full(report.cost_history.front().second).c_str(),
                format_full(report.final_kl).c_str());
    return 0;
}

int cmd_integrate(const KeyValueDoc& doc) {
    const GridSpec spec = grid_from_config(doc);
    const Integrand f = integrand_from_config(doc);
    const StateVector proposal = proposal_from_config(doc, spec, f);

    const std::vector<std::uint64_t> schedule = shot_schedule(doc, "integrate.shots");
    const int replicates = doc.has("integrate.replicates")
                               ? static_cast<int>(doc.get_int("integrate.replicates"))
                               : 1;
    MixtureConfig mix;
    if (doc.has("integrate.beta")) mix.beta = doc.get_double("integrate.beta");
    const std::uint64_t seed = doc.has("integrate.seed") ? doc.get_uint("integrate.seed") : 1;
    EstimateHooks hooks;
    hooks.threads = threads_from(doc);

    std::ofstream rows = open_csv(doc, "estimates.csv", "integrate",
                                  "run_id,N,estimate,std,M,hilbert_fraction,beta,seed");
    const auto write_row = [&rows](int run_id, const EstimateResult& r) {
        rows << run_id << ',' << r.shots << ',' << format_full(r.estimate) << ','
             << format_full(r.std_err) << ',' << r.states_observed << ','
             << format_full(r.hilbert_fraction) << ',' << format_full(r.beta) << ',' << r.seed
             << "\n";
    };

    std::ofstream summary;
    if (replicates > 1)
        summary = open_csv(doc, "replicate_summary.csv", "integrate",
                           "N,replicates,mean_estimate,spread,mean_std");

    for (std::size_t k = 0; k < schedule.size(); ++k) {
        const std::uint64_t shots = schedule[k];
        if (replicates > 1) {
            const auto [results, stat] =
                repeat_runs(spec, f, proposal, shots, mix, replicates, mix_seed(seed, k), hooks);
            for (std::size_t r = 0; r < results.size(); ++r)
                write_row(static_cast<int>(r), results[r]);
            summary << shots << ',' << replicates << ',' << format_full(stat.mean_estimate) << ','
                    << format_full(stat.spread) << ',' << format_full(stat.mean_std) << "\n";
            std::printf("N=%llu: mean %s, spread %s, mean std %s over %d runs\n",
                        static_cast<unsigned long long>(shots),
                        format_full(stat.mean_estimate).c_str(), format_full(stat.spread).c_str(),
                        format_full(stat.mean_std).c_str(), replicates);
        } else {
            const EstimateResult r =
                qais_estimate(spec, f, proposal, shots, mix, mix_seed(seed, k), hooks);
            write_row(0, r);
            std::printf("N=%llu: estimate %s +- %s (M=%llu)\n",
                        static_cast<unsigned long long>(shots), format_full(r.estimate).c_str(),
                        format_full(r.std_err).c_str(),
                        static_cast<unsigned long long>(r.states_observed));
        }
    }

    if (doc.get_or("integrate.dump_tiles", "false") == "true") {
        // Tile layout for the largest budget, rebuilt from the same derived
        // seed the estimate used, so the dump matches the run exactly.
        std::vector<double> pmf = probabilities(proposal);
        if (mix.beta > 0.0) {
            const double uniform = 1.0 / static_cast<double>(pmf.size());
            for (double& p : pmf) p = (1.0 - mix.beta) * p + mix.beta * uniform;
        }
        const std::uint64_t run_seed = mix_seed(seed, schedule.size() - 1);
        const ShotCounts counts = sample(pmf, schedule.back(), mix_seed(run_seed, 1));
        const TileCoverage coverage = full_coverage(spec, MeasuredSet::from_shots(counts));
        std::ofstream tiles(out_path(doc, "tiles.csv"));
        write_coverage_csv(tiles, spec, coverage);
    }
    return 0;
}

int cmd_vegas(const KeyValueDoc& doc) {
    const Integrand f = integrand_from_config(doc);
    VegasConfig cfg = vegas_config_from(doc);
    const bool phantom = doc.get_or("vegas.phantom", f.label.rfind("multipeak", 0) == 0 ? "true" : "false") == "true";
    cfg.keep_final_samples = phantom || doc.get_or("vegas.keep_samples", "false") == "true";

    const VegasResult result = vegas_integrate(f, cfg);

    std::ofstream rows = open_csv(doc, "vegas.csv", "vegas",
                                  "iter,estimate,sigma,combined_estimate,combined_sigma,best");
    for (std::size_t j = 0; j < result.iterations.size(); ++j) {
        const VegasIteration& it = result.iterations[j];
        rows << j << ',' << format_full(it.estimate) << ',' << format_full(it.sigma) << ','
             << format_full(result.combined_estimate) << ',' << format_full(result.combined_sigma)
             << ',' << (static_cast<int>(j) == result.best_iteration ? 1 : 0) << "\n";
    }

    if (doc.get_or("vegas.dump_grid", "false") == "true") {
        std::ofstream grid_rows = open_csv(doc, "vegas_grid.csv", "vegas", "dim,boundary");
        for (std::size_t d = 0; d < result.final_grid.boundaries.size(); ++d)
            for (double b : result.final_grid.boundaries[d])
                grid_rows << d << ',' << format_full(b) << "\n";
    }

    if (phantom) {
        const PhantomReport report =
            phantom_diagnostic(result.final_points, f.dims(), {0.23, 0.39, 0.74});
        std::ofstream prow = open_csv(
            doc, "phantom.csv", "vegas",
            "total_samples,near_true,near_phantom,true_sites,phantom_sites,phantom_fraction");
        prow << report.total_samples << ',' << report.near_true << ',' << report.near_phantom
             << ',' << report.true_sites << ',' << report.phantom_sites << ','
             << format_full(report.phantom_fraction_of_all()) << "\n";
        std::printf("phantom fraction: %s of %llu samples\n",
                    format_full(report.phantom_fraction_of_all()).c_str(),
                    static_cast<unsigned long long>(report.total_samples));
    }

    std::printf("combined %s +- %s (best iteration %d: %s +- %s)\n",
                format_full(result.combined_estimate).c_str(),
                format_full(result.combined_sigma).c_str(), result.best_iteration,
                format_full(result.iterations[static_cast<std::size_t>(result.best_iteration)].estimate).c_str(),
                format_full(result.iterations[static_cast<std::size_t>(result.best_iteration)].sigma).c_str());
    return 0;
}

int cmd_compare(const KeyValueDoc& doc) {
    const GridSpec spec = grid_from_config(doc);
    const Integrand f = integrand_from_config(doc);
    const StateVector proposal = proposal_from_config(doc, spec, f);
    const std::vector<std::uint64_t> schedule = shot_schedule(doc, "integrate.shots");
    const int replicates = doc.has("compare.replicates")
                               ? static_cast<int>(doc.get_int("compare.replicates"))
                               : 100;
    MixtureConfig mix;
    if (doc.has("integrate.beta")) mix.beta = doc.get_double("integrate.beta");
    const std::uint64_t seed = doc.has("integrate.seed") ? doc.get_uint("integrate.seed") : 1;
    VegasConfig vegas_cfg = vegas_config_from(doc);
    EstimateHooks hooks;
    hooks.threads = threads_from(doc);

    std::ofstream rows =
        open_csv(doc, "compare.csv", "compare",
                 "shots,qais_mean_rel_unc,qais_spread,qais_states_mean,vegas_best_rel_unc");
    for (std::size_t k = 0; k < schedule.size(); ++k) {
        const std::uint64_t shots = schedule[k];
        const auto [results, stat] =
            repeat_runs(spec, f, proposal, shots, mix, replicates, mix_seed(seed, k), hooks);
        (void)stat;
        PairwiseSum rel_acc, states_acc;
        for (const EstimateResult& r : results) {
            rel_acc.add(r.std_err / std::abs(r.estimate));
            states_acc.add(static_cast<double>(r.states_observed));
        }
        const double mean_rel = rel_acc.total() / replicates;
        PairwiseSum var_acc;
        for (const EstimateResult& r : results) {
            const double dev = r.std_err / std::abs(r.estimate) - mean_rel;
            var_acc.add(dev * dev);
        }
        const double rel_spread = std::sqrt(var_acc.total() / (replicates - 1));
        const double states_mean = states_acc.total() / replicates;

        // VEGAS with the same total budget split across its iterations; the
        // comparison uses its best iteration.
        VegasConfig budget = vegas_cfg;
        budget.samples_per_iteration =
            std::max<std::uint64_t>(2, shots / static_cast<std::uint64_t>(budget.iterations));
        const VegasResult vr = vegas_integrate(f, budget);
        const VegasIteration& best = vr.iterations[static_cast<std::size_t>(vr.best_iteration)];
        const double vegas_rel = best.sigma / std::abs(best.estimate);

        rows << shots << ',' << format_full(mean_rel) << ',' << format_full(rel_spread) << ','
             << format_full(states_mean) << ',' << format_full(vegas_rel) << "\n";
        std::printf("N=%llu: qais rel unc %s (spread %s), vegas best rel unc %s\n",
                    static_cast<unsigned long long>(shots), format_full(mean_rel).c_str(),
                    format_full(rel_spread).c_str(), format_full(vegas_rel).c_str());
    }
    return 0;
}

int cmd_tile_check(const KeyValueDoc& doc) {
    const int trials = doc.has("tile_check.trials") ? static_cast<int>(doc.get_int("tile_check.trials")) : 1000;
    const int max_dims = doc.has("tile_check.max_dims") ? static_cast<int>(doc.get_int("tile_check.max_dims")) : 5;
    const int max_qubits = doc.has("tile_check.max_qubits") ? static_cast<int>(doc.get_int("tile_check.max_qubits")) : 16;
    const std::uint64_t seed = doc.has("tile_check.seed") ? doc.get_uint("tile_check.seed") : 9;
    // Harness self-test hook: deliberately corrupt one rect per coverage so
    // the checker must catch it.
    const bool inject_bug = doc.get_or("tile_check.inject_bug", "false") == "true";

    int violations = 0;
    for (int trial = 0; trial < trials; ++trial) {
        const std::uint64_t trial_seed = mix_seed(seed, static_cast<std::uint64_t>(trial));
        std::mt19937_64 rng(trial_seed);
        const int d = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_dims));
        std::vector<int> qubits(static_cast<std::size_t>(d), 1);
        int n = d;
        while (n < max_qubits && rng() % 5 != 0) {
            ++qubits[rng() % static_cast<std::uint64_t>(d)];
            ++n;
        }
        const GridSpec spec(qubits, std::vector<std::pair<double, double>>(
                                        static_cast<std::size_t>(d), {0.0, 1.0}));
        const std::uint64_t total = spec.cell_count();
        const std::uint64_t m = 1 + rng() % std::min<std::uint64_t>(total, 2000);
        std::set<std::uint64_t> picked;
        while (picked.size() < m) picked.insert(rng() % total);
        std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
        for (std::uint64_t idx : picked) pairs.push_back({idx, 1 + rng() % 20});

        TileCoverage coverage = full_coverage(spec, MeasuredSet::from_pairs(pairs));
        if (inject_bug) {
            for (TileGroup& group : coverage.groups) {
                for (HyperRect& rect : group.rects) {
                    if (rect.hi[0] + 1 < spec.axis_cells(0)) {
                        ++rect.hi[0];  // overlapping/overflowing rect
                        goto injected;
                    }
                }
            }
        injected:;
        }

        // Partition check: every cell covered exactly once.
        std::vector<bool> seen(total, false);
        bool bad = false;
        for (const TileGroup& group : coverage.groups) {
            for (const HyperRect& rect : group.rects) {
                Coords cursor = rect.lo;
                while (true) {
                    const std::uint64_t cell = coords_to_linear(spec, cursor);
                    if (seen[cell]) bad = true;
                    seen[cell] = true;
                    int axis = 0;
                    while (axis < d) {
                        const std::size_t a = static_cast<std::size_t>(axis);
                        if (cursor[a] < rect.hi[a]) {
                            ++cursor[a];
                            break;
                        }
                        cursor[a] = rect.lo[a];
                        ++axis;
                    }
                    if (axis == d) break;
                }
            }
        }
        for (std::uint64_t cell = 0; cell < total && !bad; ++cell)
            if (!seen[cell]) bad = true;

        // Per-gap rect bound.
        const std::size_t bound = 2 * (static_cast<std::size_t>(d) - 1) + 1;
        std::uint64_t previous_end = 0;
        for (const auto& [idx, count] : MeasuredSet::from_pairs(pairs).states) {
            (void)count;
            if (idx > previous_end && gap_tiles(spec, previous_end, idx - previous_end).size() > bound)
                bad = true;
            previous_end = idx + 1;
        }

        if (bad) {
            ++violations;
            std::printf("FAIL trial %d: d=%d n=%d M=%llu (reproduce with seed %llu)\n", trial, d,
                        n, static_cast<unsigned long long>(m),
                        static_cast<unsigned long long>(trial_seed));
            if (violations >= 5) break;
        }
    }

    if (violations == 0) {
        std::printf("PASS: %d trials, partition and rect-bound checks clean\n", trials);
        return 0;
    }
    std::printf("FAIL: %d violation(s)\n", violations);
    return 1;
}

int run(const std::string& command, const KeyValueDoc& doc) {
    try {
        if (command == "train") return cmd_train(doc);
        if (command == "integrate") return cmd_integrate(doc);
        if (command == "vegas") return cmd_vegas(doc);
        if (command == "compare") return cmd_compare(doc);
        if (command == "tile-check") return cmd_tile_check(doc);
        fail_invalid("unknown command '" + command +
                     "'; valid: train, integrate, vegas, compare, tile-check");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace qais::cli
