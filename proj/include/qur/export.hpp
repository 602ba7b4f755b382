#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qur/bloch.hpp"
#include "qur/oracle.hpp"

namespace qur {

enum class Command { Region, Check, Saturate, Verify, Bounds, Coeffs };
enum class OutputFormat { Csv, Json };

// Full description of one CLI run. Identical configs produce byte-identical
// output: field order is fixed and every float is serialized with its
// shortest round-trip representation (at most 17 significant digits).
struct RunConfig {
    Command command = Command::Check;
    std::vector<Vec3> axes;        // raw input directions, normalized on load
    std::vector<double> offsets;   // per-observable POVM offsets (empty or 0 = projective)
    UncertaintyMeasure measure = UncertaintyMeasure::StdDev;
    double radius = 1.0;
    std::vector<double> radii;     // region: one boundary family per radius
    double grid = 0.01;            // verify: grid resolution
    double epsilon = 0.0;          // verify: 0 = default 2 * grid
    std::size_t samples = 100000;  // verify: soundness sample count
    std::uint64_t seed = 1;
    std::string relation;          // verify: catalog id
    std::vector<double> point;     // check: tuple in `measure`; saturate: target
    std::optional<Vec3> state;     // check: explicit Bloch vector
    std::size_t boundary_points = 2000;  // region: points per curve
    OutputFormat format = OutputFormat::Csv;
    std::string out_path;          // empty = stdout
};

// Exit codes: 0 success, 2 validation failure, 3 certification failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitCertification = 3;

struct RunResult {
    int exit_code = kExitOk;
    std::string output;                  // the full CSV/JSON payload
    std::vector<std::string> warnings;   // diagnostics, never part of the payload
};

/// Shortest representation of x that parses back to exactly x (<= 17
/// significant digits); nan/inf spelled "nan"/"inf"/"-inf".
std::string format_double(double x);

/// Executes the configured command and returns its payload. Input validation
/// problems surface as exit_code 2 with the message in `output`; `verify`
/// returns 3 when a claimed-tight relation fails certification.
RunResult run_command(const RunConfig& cfg);

/// Parses argv into a RunConfig, runs it, writes the payload to the
/// configured destination, and returns the process exit code.
int cli_main(int argc, const char* const* argv);

}  // namespace qur
