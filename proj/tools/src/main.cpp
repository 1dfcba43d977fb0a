#include <iostream>

#include "cavdress/csv.hpp"
#include "cavdress_cli/runner.hpp"

int main(int argc, char** argv) {
    using namespace cavdress;
    cli::RunSpec spec;
    try {
        spec = cli::parse_run_spec(argc, argv);
    } catch (const cli::HelpRequested& h) {
        std::cout << h.text << '\n';
        return 0;
    } catch (const Error& e) {
        std::cerr << "cavdress: " << e.what() << '\n';
        return cli::exit_code(e.category());
    }

    const auto report = cli::run(spec);
    std::cerr << "cavdress " << cli::to_string(spec.command) << ": rows=" << report.rows
              << " max_invariant_defect=" << format_double(report.max_invariant_defect)
              << " wall_seconds=" << format_double(report.wall_seconds) << '\n';
    for (const auto& w : report.warnings) std::cerr << "  warning: " << w << '\n';
    if (!report.ok()) std::cerr << "cavdress: error: " << report.failure_message << '\n';
    return cli::exit_code(report);
}
