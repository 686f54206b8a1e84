#pragma once
// Declarative experiment orchestration: one config (file plus flag
// overrides) in, report files out. The config format is a sectioned
// key-value file:
//
//   [experiment]
//   command = verify          # solve | exponents | verify
//   target  = decay           # verify only: decay | strichartz |
//                             # fefferman-stein | duhamel | trilinear |
//                             # leibniz | uniqueness
//   [parameters]
//   p = 2                     s = 0.25
//   window = 1.0              horizon = 0      # 0 = adaptive where allowed
//   t_list = 0.5,0.25,0.125,0.0625             # trilinear windows
//   tol = 1e-10               data = soliton   # soliton | plane
//   amplitude = 1.0           kappa = 1        # plane-wave data
//   [grid]
//   n = 64                    length = 6.283185307179586
//   [ensemble]
//   seed = 42                 count = 100
//   band_limit = 8            spectral_decay = 1.1
//   [output]
//   directory = out           format = json    # json | csv | both
//
// Every key is addressed as "section.key"; flags set the same keys and win
// over the file. Unknown sections or keys are usage errors naming the key.
// Reports embed the fully resolved config, the library version, and the
// seeds, and identical configs produce byte-identical JSON apart from the
// timestamp isolated in the header object.

#include <cstdint>
#include <string>
#include <vector>

#include "nls/report_io.hpp"

namespace nls {

struct ExperimentConfig {
    std::string command;  // solve | exponents | verify
    std::string target;   // verify subcommand target

    double p = 2.0;
    double s = 0.25;
    double window = 1.0;
    double horizon = 0.0;  // 0 = adaptive (32 local intervals) where allowed
    std::vector<double> t_list = {0.5, 0.25, 0.125, 0.0625};
    double tol = 1e-10;
    std::string data = "soliton";
    double amplitude = 1.0;
    int kappa = 1;

    int grid_n = 64;
    double length = 6.283185307179586;

    std::uint64_t seed = 42;
    int count = 100;
    int band_limit = 8;
    double spectral_decay = 1.1;

    std::string out_dir;           // empty: canonical JSON to stdout
    std::string format = "json";   // json | csv | both

    // Structural validation (command known, format known, ranges sane);
    // the target modules enforce their own mathematical hypotheses.
    void validate() const;

    // The full resolved key-value map embedded in every report.
    report::ordered_json resolved() const;
};

namespace runner {

// Parse one sectioned key-value file; throws ValidationError with
// file:line diagnostics. An empty or missing file is a usage error.
ExperimentConfig parse_config_file(const std::string& path);

// Apply one "section.key" = value assignment (shared by the file parser and
// flag overrides). Unknown keys throw ValidationError naming the key.
void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value);

// Execute the experiment and write reports. Returns the process exit code:
// 0 success, 2 validation rejection (bad config or out-of-hypothesis
// parameters), 3 runtime failure. Reports are fully computed before any
// file is written, so rejected runs leave no partial outputs.
int run(const ExperimentConfig& cfg);

}  // namespace runner

}  // namespace nls
