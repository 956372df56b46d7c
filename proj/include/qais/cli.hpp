#pragma once

#include <string>
#include <vector>

#include "qais/grid.hpp"
#include "qais/keyval.hpp"
#include "qais/statevector.hpp"
#include "qais/target.hpp"

namespace qais::cli {

/// Grid from the [grid] section: dims, qubits, lower, upper.
GridSpec grid_from_config(const KeyValueDoc& doc);

/// Inverse of grid_from_config: writes the [grid] keys.
void grid_to_config(KeyValueDoc& doc, const GridSpec& spec);

/// Integrand from the [integrand] section. Rejects unknown names with a
/// diagnostic listing the valid choices.
Integrand integrand_from_config(const KeyValueDoc& doc);

/// Ansatz from a layer word list like "EZ R EX R" (entangler axis / rotation).
AnsatzSpec ansatz_from_words(const std::vector<std::string>& words);
std::vector<std::string> ansatz_to_words(const AnsatzSpec& spec);

struct TrainedProposal {
    int n = 0;
    std::vector<int> qubits;
    AnsatzSpec ansatz;
    std::vector<double> params;
    std::uint64_t seed = 0;
    double final_kl = 0.0;
};

void save_params_file(const std::string& path, const TrainedProposal& trained);
TrainedProposal load_params_file(const std::string& path);

/// Dispatch one subcommand against a merged config document. Catches
/// errors, reports them on stderr, and returns the process exit code.
int run(const std::string& command, const KeyValueDoc& doc);

int cmd_train(const KeyValueDoc& doc);
int cmd_integrate(const KeyValueDoc& doc);
int cmd_vegas(const KeyValueDoc& doc);
int cmd_compare(const KeyValueDoc& doc);
int cmd_tile_check(const KeyValueDoc& doc);

}  // namespace qais::cli
