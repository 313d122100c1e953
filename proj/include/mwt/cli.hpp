#ifndef MWT_CLI_HPP
#define MWT_CLI_HPP

#include "mwt/filterbank.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace mwt {

using FilterVariant = std::variant<ScalarFilter, MultiFilterBank>;

// The five shipped filters: haar, db4, haar-multi, db4-multi, ghm.
const std::vector<std::string>& shipped_filter_names();

// Looks a filter up by registry name; unknown names raise
// std::invalid_argument listing the registry.
FilterVariant make_filter(const std::string& name);

struct RunConfig {
    std::string command;  // decompose, reconstruct, bench, freq or verify
    std::filesystem::path input;
    std::filesystem::path output;
    std::string filter;  // empty means "take it from the pyramid header" (reconstruct only)
    int levels = 1;
    double peak = 255.0;
    bool crop_even = false;
    int points = 512;
};

// Command bodies. Each returns a process exit status (0 on success) and
// reports problems on err. bench and freq write CSV to out when no output
// path is configured.
int cmd_decompose(const RunConfig& cfg, std::ostream& err);
int cmd_reconstruct(const RunConfig& cfg, std::ostream& err);
int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_freq(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(std::ostream& out);

// Orthogonality report for an explicit list of filters (the verify command
// body); nonzero when any check fails.
int run_verify(const std::vector<FilterVariant>& filters, double tolerance, std::ostream& out);

// Full argv entry point (argument parsing included).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mwt

#endif
