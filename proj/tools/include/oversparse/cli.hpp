#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "oversparse/kind.hpp"
#include "oversparse/sensing.hpp"

namespace oversparse::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kIo = 2, kNumerical = 3 };

/// Mask scheme used by reconstruct and sweep in the frequency domain when
/// --scheme is not given.
inline constexpr MaskScheme kDefaultFrequencyScheme = MaskScheme::Uniform;

/// Every effective setting of one invocation. Printed back as a JSON line so a
/// run can be repeated exactly.
struct RunConfig {
    std::string command;
    std::string input;              // image path; empty means the bundled fixture
    std::string fixture = "texture";
    std::size_t size = 256;         // fixture size and coherence image size
    bool eight_bit = false;         // quantise the fixture to 8-bit values
    std::vector<TransformKind> kinds;
    int levels = 3;
    double ratio = 0.5;
    Domain domain = Domain::Frequency;
    MaskScheme scheme = MaskScheme::Uniform;
    double power = kDefaultDensityPower;
    double sigma = 0.0;
    std::optional<double> lambda;
    double lambda_factor = 0.0;
    std::optional<double> lambda_decay;  // final fraction of a linear decay
    double epsilon = 0.0;
    int max_iter = 0;
    std::uint64_t seed = 1;
    int trials = 200;
    int batch = 16;
    int level = 1;
    bool all_subbands = false;
    bool per_trial = false;
    bool crop = false;
    std::string out_dir = ".";
    std::string csv;
    std::string reference;  // metrics: reference image
    std::string candidate;  // metrics: image to evaluate
};

/// Runs the command line `args` (args[0] is the program name). Normal output
/// goes to `out`, diagnostics to `err`. Returns one of ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Row label used in coherence tables: "DWT", "DT-CoWT", "DD-DWT", "DD-DT-DWT".
std::string coherence_label(TransformKind kind);

}  // namespace oversparse::cli
