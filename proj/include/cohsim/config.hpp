#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cohsim/bath.hpp"
#include "cohsim/core_types.hpp"

namespace cohsim {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Uniform grid of n_steps sample times from t_start to t_end inclusive
/// (a single sample sits at t_start).
struct TimeGrid {
    double t_start;
    double t_end;
    int n_steps;

    std::vector<double> points() const;
};

struct TwoModeScenario {
    double delta;
    double lambda;
    Amplitude alpha;
    Amplitude beta;
};

struct GeneralScenario {
    ModeSystem system;
    AmplitudeVector alpha;
};

struct StarBathScenario {
    StarBathSpec spec;
    std::optional<double> fit_window;  // overrides the default window when set
};

struct OracleScenario {
    ModeSystem system;
    AmplitudeVector alpha;
    int n_max;
};

enum class ScenarioKind { TwoMode, General, StarBath, OracleCheck };

struct ScenarioConfig {
    ScenarioKind kind;
    TimeGrid grid;
    std::variant<TwoModeScenario, GeneralScenario, StarBathScenario, OracleScenario> scenario;
};

/// Parses an INI-style scenario document: [section] headers, key = value
/// lines, '#'/';' comments, comma-separated lists, complex literals like
/// 1.5, -2i, or 0.3-0.4i. Couplings come either as full rows
/// (lambda_row_1 = ...) or sparse 1-based triples (couple = i, j, value).
/// Diagnostics name the offending key and line.
ScenarioConfig parse_config(std::string_view text);

/// parse_config on the contents of `path`.
ScenarioConfig load_config_file(const std::string& path);

/// Parses one complex literal; used for config values and shared with tests.
Amplitude parse_complex(std::string_view token);

}  // namespace cohsim
