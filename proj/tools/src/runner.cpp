#include "cavdress_cli/runner.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cavdress/continuum.hpp"
#include "cavdress/coupling.hpp"
#include "cavdress/csv.hpp"
#include "cavdress/parallel.hpp"
#include "cavdress/small_cavity.hpp"

namespace cavdress::cli {

namespace {

using Row = std::string;

struct RowResult {
    Row text;
    double defect = 0.0;
};

// Re-checks trace, hermiticity and both purity identities on a state about
// to be written.
double emission_defect(const ReducedState& s, const SuperpositionSpec& spec, double tol) {
    const auto identities = impurity_identity_check(s, spec);
    const double defect = std::max({std::abs(s.rho00 + s.rho11 - 1.0), std::abs(s.rho01 - std::conj(s.rho10)),
                                    identities.bilinear, identities.trace});
    if (!(defect <= tol)) {
        throw ContractViolation("emitted state at t=" + format_double(s.t) + " misses the trace/purity identities by " +
                                format_double(defect));
    }
    return defect;
}

std::vector<std::string> state_fields(const SurvivalAmplitude& f, const ReducedState& s) {
    return {format_double(s.t),          format_double(f.value.real()),  format_double(f.value.imag()),
            format_double(std::norm(f.value)), format_double(s.rho00), format_double(s.rho11),
            format_double(s.rho10.real()), format_double(s.rho10.imag()), format_double(s.impurity),
            to_string(f.method)};
}

const char* const kStateHeader = "t,re_f00,im_f00,abs2_f00,rho00,rho11,re_rho10,im_rho10,impurity,method";

class Output {
public:
    explicit Output(const RunSpec& spec) : spec_(spec) { write_meta(); }

    void header(const std::string& line) { body_ << line << '\n'; }
    void row(const std::string& line) {
        body_ << line << '\n';
        ++rows_;
    }
    void meta(const std::string& key, const std::string& value) {
        body_ << "# meta: " << key << '=' << value << '\n';
    }
    std::size_t rows() const noexcept { return rows_; }

    void flush() {
        if (spec_.output_path.empty()) {
            std::cout << body_.str();
            std::cout.flush();
            if (!std::cout) throw IoError("failed writing to stdout");
            return;
        }
        AtomicFileWriter writer(spec_.output_path);
        writer.stream() << body_.str();
        writer.commit();
    }

private:
    void write_meta() {
        const auto& c = spec_.config;
        meta("command", to_string(spec_.command));
        meta("omega_bar", format_double(c.omega_bar));
        meta("g", format_double(c.g));
        meta("radius", format_double(c.radius));
        meta("wave_speed", format_double(c.wave_speed));
        meta("delta", format_double(c.delta()));
        meta("delta_given", spec_.delta ? "true" : "false");
        meta("truncation", std::to_string(c.truncation));
        meta("small_truncation", std::to_string(spec_.small_truncation));
        meta("xi", format_double(spec_.superposition.xi));
        meta("phi", format_double(spec_.superposition.phi));
        meta("t_start", format_double(spec_.time_grid.t_start));
        meta("t_end", format_double(spec_.time_grid.t_end));
        meta("n_points", std::to_string(spec_.time_grid.n_points));
        meta("spacing", spec_.time_grid.log_spacing ? "log" : "linear");
        meta("tolerance", format_double(spec_.tolerances.root_rel));
        meta("lowest_mode_shift", spec_.lowest_mode == LowestModeShift::half_pi ? "half-pi" : "third-pi");
        meta("drop_eta_term", spec_.drop_eta_term ? "true" : "false");
        if (spec_.command == Command::figures) meta("which", std::to_string(spec_.figure));
        if (spec_.command == Command::spectrum) meta("asymptotic", spec_.asymptotic ? "true" : "false");
        if (spec_.command == Command::classify) meta("continuum", spec_.continuum ? "true" : "false");
        if (!spec_.config_file.empty()) meta("config", spec_.config_file);
    }

    const RunSpec& spec_;
    std::ostringstream body_;
    std::size_t rows_ = 0;
};

class Runner {
public:
    Runner(const RunSpec& spec, RunReport& report) : spec_(spec), report_(report), out_(spec) {}

    void execute() {
        switch (spec_.command) {
        case Command::spectrum: spectrum(); break;
        case Command::evolve: evolve(); break;
        case Command::continuum: continuum(); break;
        case Command::small_cavity: small_cavity(); break;
        case Command::compare: compare(); break;
        case Command::figures: figures(); break;
        case Command::classify: classify(); break;
        }
        stage_ = "output";
        out_.flush();
        report_.rows = out_.rows();
    }

    const std::string& stage() const noexcept { return stage_; }

private:
    Spectrum exact_spectrum() {
        stage_ = "spectrum";
        RootSolverOptions options;
        options.rel_tol = spec_.tolerances.root_rel;
        auto s = solve_spectrum(spec_.config, options);
        note_defect(0.0);
        return s;
    }

    CouplingTable couplings(const Spectrum& spectrum, bool column_defects) {
        stage_ = "coupling";
        CouplingOptions options;
        options.keep_eta_term = !spec_.drop_eta_term;
        options.column_defects = column_defects;
        auto table = build_couplings(spec_.config, spectrum, options);
        report_.warnings.push_back("particle-row truncation defect " + format_double(table.particle_row_defect()) +
                                   " (K=" + std::to_string(table.truncation()) + ")");
        return table;
    }

    SmallCavityModel small_model(double omega_bar, double g, double delta) {
        stage_ = "small_cavity";
        SmallCavityModelOptions options;
        options.lowest_mode = spec_.lowest_mode;
        options.truncation = spec_.small_truncation;
        auto model = make_small_cavity_model(omega_bar, g, delta, options);
        if (!model.lowest_mode_condition) {
            report_.warnings.push_back("delta >= 2 g^2 / (pi omega_bar^2): the small-cavity lowest mode is "
                                       "outside the expansion's stated range");
        }
        return model;
    }

    void note_defect(double d) { report_.max_invariant_defect = std::max(report_.max_invariant_defect, d); }

    void emit(const std::vector<RowResult>& rows) {
        for (const auto& r : rows) {
            out_.row(r.text);
            note_defect(r.defect);
        }
    }

    void spectrum() {
        Spectrum s;
        if (spec_.asymptotic) {
            stage_ = "spectrum";
            SmallCavityOptions options;
            options.lowest_mode = spec_.lowest_mode;
            s = small_cavity_spectrum(spec_.config, options);
        } else {
            s = exact_spectrum();
            note_defect(s.max_residual());
        }
        std::ostringstream text;
        write_spectrum_csv(text, s);
        std::istringstream lines(text.str());
        std::string line;
        std::getline(lines, line);
        out_.header(line);
        while (std::getline(lines, line)) out_.row(line);

        if (!spec_.couplings_path.empty() || !spec_.coupling_matrix_path.empty()) {
            const auto table = couplings(s, !spec_.couplings_path.empty());
            stage_ = "output";
            if (!spec_.couplings_path.empty()) {
                AtomicFileWriter writer(spec_.couplings_path);
                write_coupling_csv(writer.stream(), table);
                writer.commit();
            }
            if (!spec_.coupling_matrix_path.empty()) {
                AtomicFileWriter writer(spec_.coupling_matrix_path);
                write_coupling_matrix_csv(writer.stream(), table);
                writer.commit();
            }
        }
    }

    void evolve() {
        const auto s = exact_spectrum();
        const auto table = couplings(s, false);
        stage_ = "evolution";
        const auto grid = spec_.time_grid.points();
        const auto rows = parallel_map<RowResult>(grid.size(), [&](std::size_t i) {
            const auto f = f00_mode_sum(grid[i], table, s);
            const auto state = reduced_density(f, spec_.superposition);
            const double d = emission_defect(state, spec_.superposition, spec_.tolerances.emission);
            return RowResult{csv_row(state_fields(f, state)), d};
        });
        out_.header(kStateHeader);
        emit(rows);
    }

    void continuum() {
        const double wb = spec_.config.omega_bar;
        const double g = spec_.config.g;
        stage_ = "continuum";
        const auto regime = classify_regime(wb, g);
        const auto grid = spec_.time_grid.points();
        const auto rows = parallel_map<RowResult>(grid.size(), [&](std::size_t i) {
            QuadratureReport q;
            const auto f = f00_continuum(grid[i], wb, g, {}, &q);
            const auto state = reduced_density(f, spec_.superposition);
            const double d = emission_defect(state, spec_.superposition, spec_.tolerances.emission);
            auto fields = state_fields(f, state);
            fields.push_back(to_string(regime.regime));
            fields.push_back(format_double(q.abs_error_estimate));
            fields.push_back(asymptotic_validity(grid[i], wb, g));
            return RowResult{csv_row(fields), d};
        });
        out_.header(std::string(kStateHeader) + ",regime,g_error_estimate,validity_flag");
        emit(rows);
    }

    void small_cavity() {
        const auto& c = spec_.config;
        const auto model = small_model(c.omega_bar, c.g, c.delta());
        const auto s = exact_spectrum();
        const auto table = couplings(s, false);
        stage_ = "small_cavity";
        const double xi = spec_.superposition.xi;
        const double bound = rho11_lower_bound(model.delta, xi);
        const auto grid = spec_.time_grid.points();
        const auto rows = parallel_map<RowResult>(grid.size(), [&](std::size_t i) {
            const double t = grid[i];
            const double small = rho11_small(t, model, xi);
            const auto f_small = f00_small(t, model);
            const auto f_exact = f00_mode_sum(t, table, s);
            const auto st_small = reduced_density(f_small, spec_.superposition);
            const auto st_exact = reduced_density(f_exact, spec_.superposition);
            const double identity = std::abs(small - st_small.rho11);
            const double d = std::max({emission_defect(st_small, spec_.superposition, spec_.tolerances.emission),
                                       emission_defect(st_exact, spec_.superposition, spec_.tolerances.emission),
                                       identity});
            return RowResult{csv_row({format_double(t), format_double(small), format_double(st_exact.rho11),
                                      format_double(bound), format_double(identity)}),
                             d};
        });
        out_.header("t,rho11_small,rho11_exact,lower_bound,defect");
        emit(rows);
    }

    void compare() {
        const auto& c = spec_.config;
        const auto s = exact_spectrum();
        const auto table = couplings(s, false);
        std::optional<SmallCavityModel> model;
        if (c.delta() <= SmallCavityModelOptions{}.delta_max) {
            model = small_model(c.omega_bar, c.g, c.delta());
        } else {
            report_.warnings.push_back("delta above the small-cavity range; small_cavity columns left empty");
        }
        stage_ = "compare";
        const auto grid = spec_.time_grid.points();
        struct Diffs {
            double continuum = 0.0;
            double small = 0.0;
        };
        std::vector<Diffs> diffs(grid.size());
        const auto rows = parallel_map<RowResult>(grid.size(), [&](std::size_t i) {
            const double t = grid[i];
            const auto ms = f00_mode_sum(t, table, s);
            const auto cont = f00_continuum(t, c.omega_bar, c.g);
            double d = std::max(emission_defect(reduced_density(ms, spec_.superposition), spec_.superposition,
                                                spec_.tolerances.emission),
                                emission_defect(reduced_density(cont, spec_.superposition), spec_.superposition,
                                                spec_.tolerances.emission));
            diffs[i].continuum = std::abs(ms.value - cont.value);
            std::vector<std::string> fields{format_double(t),
                                            format_double(ms.value.real()),
                                            format_double(ms.value.imag()),
                                            format_double(cont.value.real()),
                                            format_double(cont.value.imag())};
            if (model) {
                const auto sc = f00_small(t, *model);
                d = std::max(d, emission_defect(reduced_density(sc, spec_.superposition), spec_.superposition,
                                                spec_.tolerances.emission));
                diffs[i].small = std::abs(ms.value - sc.value);
                fields.push_back(format_double(sc.value.real()));
                fields.push_back(format_double(sc.value.imag()));
                fields.push_back(format_double(diffs[i].continuum));
                fields.push_back(format_double(diffs[i].small));
            } else {
                fields.insert(fields.end(), {"", "", format_double(diffs[i].continuum), ""});
            }
            return RowResult{csv_row(fields), d};
        });
        out_.header("t,re_mode_sum,im_mode_sum,re_continuum,im_continuum,re_small_cavity,im_small_cavity,"
                    "diff_continuum,diff_small_cavity");
        emit(rows);
        Diffs worst;
        for (const auto& d : diffs) {
            worst.continuum = std::max(worst.continuum, d.continuum);
            worst.small = std::max(worst.small, d.small);
        }
        report_.warnings.push_back("max |mode_sum - continuum| = " + format_double(worst.continuum));
        if (model) report_.warnings.push_back("max |mode_sum - small_cavity| = " + format_double(worst.small));
    }

    void figures() {
        const auto grid = spec_.time_grid.points();
        if (spec_.figure == 1) {
            stage_ = "continuum";
            constexpr std::array<std::array<double, 2>, 3> sets{{{1.5, 1.0}, {2.0, 2.0}, {1.0, 1.2}}};
            const auto rows = parallel_map<RowResult>(grid.size(), [&](std::size_t i) {
                std::vector<std::string> fields{format_double(grid[i])};
                for (const auto& p : sets) fields.push_back(format_double(G_integral(grid[i], p[0], p[1]).value));
                return RowResult{csv_row(fields), 0.0};
            });
            out_.meta("figure_sets", "underdamped(omega_bar=1.5;g=1.0) critical(omega_bar=2.0;g=2.0) "
                                     "overdamped(omega_bar=1.0;g=1.2)");
            out_.header("t,G_underdamped,G_critical,G_overdamped");
            emit(rows);
            return;
        }

        constexpr double wb = 1.0;
        constexpr double g = 0.5;
        constexpr double delta = 0.1;
        constexpr std::array<double, 3> xis{0.3, 0.6, 0.9};
        std::optional<SmallCavityModel> model;
        if (spec_.figure == 3) model = small_model(wb, g, delta);
        stage_ = spec_.figure == 2 ? "continuum" : "small_cavity";
        const auto rows = parallel_map<RowResult>(grid.size(), [&](std::size_t i) {
            const auto f = model ? f00_small(grid[i], *model) : f00_continuum(grid[i], wb, g);
            std::vector<std::string> fields{format_double(grid[i])};
            double d = 0.0;
            for (double xi : xis) {
                const auto sp = SuperpositionSpec::make(xi, spec_.superposition.phi);
                const auto state = reduced_density(f, sp);
                d = std::max(d, emission_defect(state, sp, spec_.tolerances.emission));
                fields.push_back(format_double(state.impurity));
            }
            return RowResult{csv_row(fields), d};
        });
        out_.meta("figure_omega_bar", format_double(wb));
        out_.meta("figure_g", format_double(g));
        if (model) out_.meta("figure_delta", format_double(delta));
        out_.header("t,D_xi0.3,D_xi0.6,D_xi0.9");
        emit(rows);
    }

    void classify() {
        stage_ = "small_cavity";
        ClassifierOptions options;
        options.lowest_mode = spec_.lowest_mode;
        const auto& c = spec_.config;
        const std::optional<double> delta = spec_.continuum ? std::nullopt : std::optional<double>(c.delta());
        const auto result = dissipation_classifier(c.omega_bar, c.g, delta, options);
        for (const auto& w : result.warnings) report_.warnings.push_back(w);
        out_.header("verdict,evidence,rho11_over_xi,rho11_floor,probe_time,delta");
        out_.row(csv_row({to_string(result.verdict), to_string(result.evidence),
                          format_double(result.rho11_over_xi),
                          format_double(result.rho11_over_xi * spec_.superposition.xi),
                          format_double(result.probe_time), delta ? format_double(*delta) : "inf"}));
    }

    const RunSpec& spec_;
    RunReport& report_;
    Output out_;
    std::string stage_ = "setup";
};

std::string parameters(const RunSpec& spec) {
    const auto& c = spec.config;
    return "omega_bar=" + format_double(c.omega_bar) + ", g=" + format_double(c.g) +
           ", delta=" + format_double(c.delta()) + ", K=" + std::to_string(c.truncation);
}

} // namespace

RunReport run(const RunSpec& spec) {
    RunReport report;
    const auto start = std::chrono::steady_clock::now();
    std::string stage = "setup";
    try {
        Runner runner(spec, report);
        try {
            runner.execute();
        } catch (...) {
            stage = runner.stage();
            throw;
        }
    } catch (const Error& e) {
        report.failure = e.category();
        report.failure_message = stage + ": " + e.what() + " (" + parameters(spec) + ")";
    } catch (const std::exception& e) {
        report.failure = ErrorCategory::numerical;
        report.failure_message = stage + ": " + e.what() + " (" + parameters(spec) + ")";
    }
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

int exit_code(ErrorCategory category) noexcept {
    switch (category) {
    case ErrorCategory::usage:
    case ErrorCategory::validation: return 2;
    case ErrorCategory::numerical: return 3;
    case ErrorCategory::io: return 4;
    }
    return 3;
}

int exit_code(const RunReport& report) noexcept {
    return report.failure ? exit_code(*report.failure) : 0;
}

} // namespace cavdress::cli
