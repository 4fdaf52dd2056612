#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <variant>

#include <CLI11.hpp>

#include "cohsim/bath.hpp"
#include "cohsim/config.hpp"
#include "cohsim/modespace.hpp"
#include "cohsim/oracle.hpp"
#include "cohsim/output.hpp"

namespace {

using namespace cohsim;

struct OutputPaths {
    std::string csv;
    std::string plot;
    std::string report;
};

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ParseError("cannot open output file '" + path + "'");
    }
    return out;
}

void emit(const Trajectory& traj, const Report& report, const OutputPaths& paths) {
    {
        std::ofstream csv = open_output(paths.csv);
        write_trajectory_csv(csv, traj);
    }
    if (!paths.plot.empty()) {
        std::ofstream svg = open_output(paths.plot);
        write_svg_plot(svg, traj);
    }
    if (!paths.report.empty()) {
        std::ofstream rep = open_output(paths.report);
        write_report(rep, report);
    } else {
        write_report(std::cout, report);
    }
}

Report base_report(const ScenarioConfig& config, const char* kind, const Trajectory& traj) {
    Report report;
    report.emplace_back("kind", kind);
    report.emplace_back("n_modes", std::to_string(traj.states.front().size()));
    report.emplace_back("n_times", std::to_string(traj.times.size()));
    report.emplace_back("t_start", format_double(config.grid.t_start));
    report.emplace_back("t_end", format_double(config.grid.t_end));
    report.emplace_back("total_photon_initial", format_double(total_photon_number(traj.states.front())));
    report.emplace_back("total_photon_final", format_double(total_photon_number(traj.states.back())));
    return report;
}

int run_simulate(const ScenarioConfig& config, const OutputPaths& paths) {
    const std::vector<double> times = config.grid.points();

    if (config.kind == ScenarioKind::TwoMode) {
        const auto& s = std::get<TwoModeScenario>(config.scenario);
        Trajectory traj = [&] {
            if (s.lambda < 0.0) {
                // Signed couplings go through the n-mode pipeline.
                const ModeSystem sys = ModeSystem::from_couplings({s.delta, 0.0},
                                                                  {{0, 1, s.lambda}});
                return trajectory(decompose(sys), {s.alpha, s.beta}, times);
            }
            std::vector<AmplitudeVector> states;
            states.reserve(times.size());
            for (double t : times) {
                auto [a, b] = evolve_two_mode(s.alpha, s.beta, s.delta, s.lambda, t);
                states.push_back({a, b});
            }
            return make_trajectory(times, std::move(states));
        }();
        emit(traj, base_report(config, "two-mode", traj), paths);
        return 0;
    }

    if (config.kind == ScenarioKind::General) {
        const auto& s = std::get<GeneralScenario>(config.scenario);
        const Trajectory traj = trajectory(decompose(s.system), s.alpha, times);
        emit(traj, base_report(config, "general", traj), paths);
        return 0;
    }

    const auto& s = std::get<StarBathScenario>(config.scenario);
    const auto [sys, a0] = build_star_bath(s.spec);
    const Trajectory traj = trajectory(decompose(sys), a0, times);

    const double window =
        s.fit_window ? *s.fit_window : default_fit_window(s.spec, traj, 0);
    const DecayFit fit = fit_decay_rate(traj, 0, window);

    Report report = base_report(config, "star-bath", traj);
    report.emplace_back("predicted_rate", format_double(predicted_amplitude_rate(s.spec)));
    report.emplace_back("fitted_rate", format_double(fit.rate));
    report.emplace_back("fit_r2", format_double(fit.r2));
    report.emplace_back("fit_window_end", format_double(fit.window_end));
    report.emplace_back("recurrence_time", format_double(estimate_recurrence_time(s.spec)));
    emit(traj, report, paths);
    return 0;
}

int run_oracle_check(const ScenarioConfig& config, const OutputPaths& paths) {
    const auto& s = std::get<OracleScenario>(config.scenario);
    const std::vector<double> times = config.grid.points();
    const Trajectory traj = trajectory(decompose(s.system), s.alpha, times);

    const FockBasisSpec spec(static_cast<int>(s.system.size()), s.n_max);
    const std::vector<double> fidelities = coherence_check_many(s.system, s.alpha, times, spec);

    Report report = base_report(config, "oracle-check", traj);
    report.emplace_back("n_max", std::to_string(s.n_max));
    double min_fidelity = 1.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        report.emplace_back("t_" + std::to_string(i), format_double(times[i]));
        report.emplace_back("fidelity_" + std::to_string(i), format_double(fidelities[i]));
        min_fidelity = std::min(min_fidelity, fidelities[i]);
    }
    report.emplace_back("min_fidelity", format_double(min_fidelity));
    emit(traj, report, paths);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coupled-mode coherent-state simulator"};
    app.require_subcommand(1);

    std::string config_path;
    OutputPaths paths;

    CLI::App* simulate =
        app.add_subcommand("simulate", "Run a two-mode, general, or star-bath scenario");
    CLI::App* oracle =
        app.add_subcommand("oracle-check", "Verify the coherent-product prediction in a truncated Fock basis");
    for (CLI::App* sub : {simulate, oracle}) {
        sub->add_option("config", config_path, "Scenario config file")->required();
        sub->add_option("--out", paths.csv, "Trajectory CSV output path")->required();
        sub->add_option("--plot", paths.plot, "Optional SVG plot path");
        sub->add_option("--report", paths.report, "Report path (stdout when omitted)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        const ScenarioConfig config = load_config_file(config_path);
        if (simulate->parsed()) {
            if (config.kind == ScenarioKind::OracleCheck) {
                throw ValidationError("kind 'oracle-check' runs under the oracle-check subcommand");
            }
            return run_simulate(config, paths);
        }
        if (config.kind != ScenarioKind::OracleCheck) {
            throw ValidationError("oracle-check subcommand needs kind = oracle-check");
        }
        return run_oracle_check(config, paths);
    } catch (const ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    } catch (...) {
        std::cerr << "unknown error\n";
        return 2;
    }
}
