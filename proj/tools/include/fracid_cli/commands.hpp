#pragma once

#include <iosfwd>
#include <string>

namespace fracid::cli {

enum ExitCode : int { kSuccess = 0, kInputFailure = 1, kNumericFailure = 2 };

struct CommandOptions {
    std::string config_path;  // empty: built-in defaults
    std::string data_path;
    std::string out_path;     // empty: standard output
    int table = 1;
    std::string noise = "ftn";
    int threads = 1;
    long long seed = 0;       // reserved; the noise model is deterministic
    bool verbose = false;
};

// Each command reports errors on `err` and returns an exit code.
int cmd_reconstruct(const CommandOptions& opt, std::ostream& err);
int cmd_experiment(const CommandOptions& opt, std::ostream& err);
int cmd_simulate(const CommandOptions& opt, std::ostream& err);
int cmd_plotdata(const CommandOptions& opt, std::ostream& err);

}  // namespace fracid::cli
