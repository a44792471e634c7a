#pragma once

// The four pipelines behind the command-line tool. Each takes parsed JSON and
// returns a report together with its exit code; input errors are thrown and
// mapped to exit codes by exit_code_for.

#include <cstdint>
#include <exception>
#include <optional>
#include <string>

#include "sgehom/io.hpp"

namespace sgehom::cli {

enum class ExitCode : int {
    Ok = 0,
    Usage = 1,          ///< unreadable file, bad flags
    Schema = 2,         ///< malformed JSON, schema violation, out-of-range value, invalid geometry
    Symmetry = 3,       ///< tensor symmetry violated
    NotPositive = 4,    ///< positive-definiteness precondition failed
    Certification = 5,  ///< energy certificate or consistency check failed
};

/// Exit code of an exception escaping a command.
ExitCode exit_code_for(const std::exception& e);

/// Command-line overrides; unset fields fall back to the input file, then to defaults.
struct Overrides {
    std::optional<int> samples;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    bool fsweep = false;
};

struct Outcome {
    io::Report report;
    ExitCode exit_code = ExitCode::Ok;
};

extern const char* const kVersion;

/// Effective nonlocal tensor, PD verdicts and the default energy certificate.
Outcome cmd_homogenize(const io::json& input, const Overrides& o = {});
/// Geometric preconditions of an (rve, inclusion) pair; with fsweep, the GP3 decay.
Outcome cmd_geometry(const io::json& input, const Overrides& o = {});
/// Positive-definiteness verdict of one stiffness or nonlocal tensor.
Outcome cmd_check_pd(const io::json& input, const Overrides& o = {});
/// Energy mismatch over seeded admissible beta; with fsweep, the dilution ladder.
Outcome cmd_verify_energy(const io::json& input, const Overrides& o = {});

} // namespace sgehom::cli
