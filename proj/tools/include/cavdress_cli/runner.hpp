// runner.hpp: command-line front end: argument parsing and command dispatch

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cavdress/config.hpp"
#include "cavdress/errors.hpp"
#include "cavdress/evolution.hpp"
#include "cavdress/spectrum.hpp"

namespace cavdress::cli {

enum class Command { spectrum, evolve, continuum, small_cavity, compare, figures, classify };

const char* to_string(Command command) noexcept;

struct TimeGrid {
    double t_start = 0.0;
    double t_end = 20.0;
    std::size_t n_points = 201;
    bool log_spacing = false;

    /// Throws ValidationError unless t_start >= 0, t_end > t_start,
    /// n_points >= 2 and (for log spacing) t_start > 0.
    void validate() const;
    std::vector<double> points() const;
};

struct Tolerances {
    double root_rel = 1e-12;  // --tolerance: relative tolerance of the root solver
    double emission = 1e-12;  // trace / purity identities re-checked on every row
};

struct RunSpec {
    Command command = Command::evolve;
    CavityConfig config;
    /// Set when the cavity was given as delta rather than (radius, wave speed).
    std::optional<double> delta;
    SuperpositionSpec superposition = SuperpositionSpec::make(0.5, 0.0);
    TimeGrid time_grid;
    std::string output_path;      // empty: stdout
    std::string couplings_path;   // spectrum: also write r, t0r, defect_r here
    std::string coupling_matrix_path; // spectrum: also write the full k, r, tkr matrix
    Tolerances tolerances;
    int figure = 1;
    bool asymptotic = false;      // spectrum: small-cavity expansion instead of exact roots
    bool continuum = false;       // classify: infinite cavity
    bool drop_eta_term = false;
    std::size_t small_truncation = 1000;
    LowestModeShift lowest_mode = LowestModeShift::third_pi;
    std::string config_file;
};

/// --help or --version; carries the text to print.
struct HelpRequested {
    std::string text;
};

/// argv[0] is the program name, argv[1] the command. A config file given by
/// --config holds key=value lines named after the long flags; flags on the
/// command line win and unknown keys are rejected.
/// Throws UsageError, ValidationError or HelpRequested.
RunSpec parse_run_spec(int argc, const char* const* argv);

struct RunReport {
    std::size_t rows = 0;
    double max_invariant_defect = 0.0;
    std::vector<std::string> warnings;
    double wall_seconds = 0.0;
    std::optional<ErrorCategory> failure;
    std::string failure_message;

    bool ok() const noexcept { return !failure.has_value(); }
};

/// Never throws; failures are recorded in the report and any partial output
/// file is removed.
RunReport run(const RunSpec& spec);

/// 0 ok, 2 usage/validation, 3 numerical, 4 I/O.
int exit_code(const RunReport& report) noexcept;
int exit_code(ErrorCategory category) noexcept;

} // namespace cavdress::cli
