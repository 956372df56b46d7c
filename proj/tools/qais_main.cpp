// Batch front end: train proposals, run debiased integrations, VEGAS
// baselines, comparison sweeps, and tiling self-checks. Everything lands in
// CSV files; flags override config-file values.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qais/cli.hpp"
#include "qais/keyval.hpp"

namespace {

struct SharedArgs {
    std::string config;
    std::string out;
    std::string seed;
    std::string threads;
    std::vector<std::string> overrides;  // section.key=value
};

void add_shared(CLI::App* cmd, SharedArgs& args) {
    cmd->add_option("--config", args.config, "key-value config file");
    cmd->add_option("--out", args.out, "output directory (default .)");
    cmd->add_option("--seed", args.seed, "seed override for this command");
    cmd->add_option("--threads", args.threads, "worker cap (results are independent of it)");
    cmd->add_option("--set", args.overrides, "extra section.key=value overrides")->take_all();
}

qais::KeyValueDoc build_doc(const SharedArgs& args, const std::string& seed_key,
                            const std::vector<std::pair<std::string, std::string>>& flag_values) {
    qais::KeyValueDoc doc =
        args.config.empty() ? qais::KeyValueDoc{} : qais::KeyValueDoc::parse_file(args.config);
    for (const auto& [key, value] : flag_values)
        if (!value.empty()) doc.set(key, value);
    for (const std::string& item : args.overrides) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw CLI::ValidationError("--set expects key=value");
        doc.set(item.substr(0, eq), item.substr(eq + 1));
    }
    if (!args.out.empty()) doc.set("out", args.out);
    if (!args.seed.empty()) doc.set(seed_key, args.seed);
    if (!args.threads.empty()) doc.set("threads", args.threads);
    return doc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive importance-sampling Monte Carlo integration with a "
                 "Born-machine proposal and a debiasing tiling step"};
    app.require_subcommand(1);

    struct {
        SharedArgs shared;
        std::string integrand, kinematics, dim, ansatz, optimizer, iterations;
    } train;
    struct {
        SharedArgs shared;
        std::string integrand, kinematics, dim, shots, replicates, beta, params;
        bool oracle = false;
    } integrate;
    struct {
        SharedArgs shared;
        std::string integrand, kinematics, dim, samples, iterations, bins, alpha;
        bool phantom = false, dump_grid = false;
    } vegas;
    struct {
        SharedArgs shared;
        std::string integrand, kinematics, dim, shots, replicates;
        bool oracle = false;
    } compare;
    struct {
        SharedArgs shared;
        std::string trials, max_dims, max_qubits;
        bool inject_bug = false;
    } tile;

    CLI::App* train_cmd = app.add_subcommand("train", "fit the circuit to an integrand's cell PMF");
    add_shared(train_cmd, train.shared);
    train_cmd->add_option("--integrand", train.integrand);
    train_cmd->add_option("--kinematics", train.kinematics);
    train_cmd->add_option("--dim", train.dim);
    train_cmd->add_option("--ansatz", train.ansatz, "layer words, e.g. \"EZ R EX R\"");
    train_cmd->add_option("--optimizer", train.optimizer, "cobyla | nelder-mead");
    train_cmd->add_option("--iterations", train.iterations, "cost-evaluation budget");

    CLI::App* int_cmd = app.add_subcommand("integrate", "debiased importance-sampled estimate");
    add_shared(int_cmd, integrate.shared);
    int_cmd->add_option("--integrand", integrate.integrand);
    int_cmd->add_option("--kinematics", integrate.kinematics);
    int_cmd->add_option("--dim", integrate.dim);
    int_cmd->add_option("--shots", integrate.shots, "shot schedule, e.g. \"1e4 1e5 1e6\"");
    int_cmd->add_option("--replicates", integrate.replicates);
    int_cmd->add_option("--beta", integrate.beta, "defensive uniform fraction");
    int_cmd->add_option("--params", integrate.params, "trained parameter file");
    int_cmd->add_flag("--oracle", integrate.oracle, "exact target-PMF proposal, no training");

    CLI::App* vegas_cmd = app.add_subcommand("vegas", "separable adaptive-grid baseline");
    add_shared(vegas_cmd, vegas.shared);
    vegas_cmd->add_option("--integrand", vegas.integrand);
    vegas_cmd->add_option("--kinematics", vegas.kinematics);
    vegas_cmd->add_option("--dim", vegas.dim);
    vegas_cmd->add_option("--samples", vegas.samples, "samples per iteration");
    vegas_cmd->add_option("--iterations", vegas.iterations);
    vegas_cmd->add_option("--bins", vegas.bins);
    vegas_cmd->add_option("--alpha", vegas.alpha);
    vegas_cmd->add_flag("--phantom", vegas.phantom, "emit the phantom-site diagnostic");
    vegas_cmd->add_flag("--dump-grid", vegas.dump_grid, "emit adapted boundaries");

    CLI::App* cmp_cmd = app.add_subcommand("compare", "per-budget uncertainty table vs the baseline");
    add_shared(cmp_cmd, compare.shared);
    cmp_cmd->add_option("--integrand", compare.integrand);
    cmp_cmd->add_option("--kinematics", compare.kinematics);
    cmp_cmd->add_option("--dim", compare.dim);
    cmp_cmd->add_option("--shots", compare.shots);
    cmp_cmd->add_option("--replicates", compare.replicates);
    cmp_cmd->add_flag("--oracle", compare.oracle);

    CLI::App* tile_cmd = app.add_subcommand("tile-check", "fuzz the gap-tiling partition invariants");
    add_shared(tile_cmd, tile.shared);
    tile_cmd->add_option("--trials", tile.trials);
    tile_cmd->add_option("--max-dims", tile.max_dims);
    tile_cmd->add_option("--max-qubits", tile.max_qubits);
    tile_cmd->add_flag("--inject-bug", tile.inject_bug)->group("");  // harness self-test

    CLI11_PARSE(app, argc, argv);

    try {
        if (train_cmd->parsed()) {
            const auto doc = build_doc(train.shared, "train.seed",
                                       {{"integrand.name", train.integrand},
                                        {"integrand.kinematics", train.kinematics},
                                        {"integrand.dim", train.dim},
                                        {"ansatz.layers", train.ansatz},
                                        {"train.optimizer", train.optimizer},
                                        {"train.max_iterations", train.iterations}});
            return qais::cli::run("train", doc);
        }
        if (int_cmd->parsed()) {
            auto doc = build_doc(integrate.shared, "integrate.seed",
                                 {{"integrand.name", integrate.integrand},
                                  {"integrand.kinematics", integrate.kinematics},
                                  {"integrand.dim", integrate.dim},
                                  {"integrate.shots", integrate.shots},
                                  {"integrate.replicates", integrate.replicates},
                                  {"integrate.beta", integrate.beta},
                                  {"integrate.params", integrate.params}});
            if (integrate.oracle) doc.set("integrate.oracle", "true");
            return qais::cli::run("integrate", doc);
        }
        if (vegas_cmd->parsed()) {
            auto doc = build_doc(vegas.shared, "vegas.seed",
                                 {{"integrand.name", vegas.integrand},
                                  {"integrand.kinematics", vegas.kinematics},
                                  {"integrand.dim", vegas.dim},
                                  {"vegas.samples_per_iteration", vegas.samples},
                                  {"vegas.iterations", vegas.iterations},
                                  {"vegas.bins", vegas.bins},
                                  {"vegas.alpha", vegas.alpha}});
            if (vegas.phantom) doc.set("vegas.phantom", "true");
            if (vegas.dump_grid) doc.set("vegas.dump_grid", "true");
            return qais::cli::run("vegas", doc);
        }
        if (cmp_cmd->parsed()) {
            auto doc = build_doc(compare.shared, "integrate.seed",
                                 {{"integrand.name", compare.integrand},
                                  {"integrand.kinematics", compare.kinematics},
                                  {"integrand.dim", compare.dim},
                                  {"integrate.shots", compare.shots},
                                  {"compare.replicates", compare.replicates}});
            if (compare.oracle) doc.set("integrate.oracle", "true");
            return qais::cli::run("compare", doc);
        }
        auto doc = build_doc(tile.shared, "tile_check.seed",
                             {{"tile_check.trials", tile.trials},
                              {"tile_check.max_dims", tile.max_dims},
                              {"tile_check.max_qubits", tile.max_qubits}});
        if (tile.inject_bug) doc.set("tile_check.inject_bug", "true");
        return qais::cli::run("tile-check", doc);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
