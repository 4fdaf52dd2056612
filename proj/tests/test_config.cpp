#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <string>

#include "cohsim/config.hpp"

using namespace cohsim;

namespace {

std::string message_of(const std::exception& e) {
    return e.what();
}

template <typename Error>
std::string capture_error(const std::string& text) {
    try {
        parse_config(text);
    } catch (const Error& e) {
        return message_of(e);
    }
    FAIL("expected a diagnostic");
    return {};
}

const char* kTwoModeDoc = R"(# resonant swap
[scenario]
kind = two-mode

[two-mode]
delta = 0.0
lambda = 1.0
alpha = 1.0
beta = 0.0

[grid]
t_start = 0.0
t_end = 3.1415926535897931
n_steps = 3
)";

}  // namespace

TEST_CASE("parse_complex literal forms") {
    CHECK(parse_complex("1") == Amplitude(1.0, 0.0));
    CHECK(parse_complex("-2.5") == Amplitude(-2.5, 0.0));
    CHECK(parse_complex("i") == Amplitude(0.0, 1.0));
    CHECK(parse_complex("-i") == Amplitude(0.0, -1.0));
    CHECK(parse_complex("2i") == Amplitude(0.0, 2.0));
    CHECK(parse_complex("0.3-0.4i") == Amplitude(0.3, -0.4));
    CHECK(parse_complex("0.3 + 0.4i") == Amplitude(0.3, 0.4));
    CHECK(parse_complex("1e-3+2e-4i") == Amplitude(1e-3, 2e-4));
    CHECK(parse_complex("1E2-1E-2i") == Amplitude(100.0, -0.01));
    CHECK_THROWS_AS(parse_complex(""), ParseError);
    CHECK_THROWS_AS(parse_complex("abc"), ParseError);
    CHECK_THROWS_AS(parse_complex("1+2j"), ParseError);
    CHECK_THROWS_AS(parse_complex("1++2i"), ParseError);
}

TEST_CASE("minimal two-mode document parses") {
    const ScenarioConfig config = parse_config(kTwoModeDoc);
    CHECK(config.kind == ScenarioKind::TwoMode);
    const auto& s = std::get<TwoModeScenario>(config.scenario);
    CHECK(s.delta == 0.0);
    CHECK(s.lambda == 1.0);
    CHECK(s.alpha == Amplitude(1.0, 0.0));
    CHECK(s.beta == Amplitude(0.0, 0.0));
    CHECK(config.grid.n_steps == 3);

    const std::vector<double> pts = config.grid.points();
    REQUIRE(pts.size() == 3);
    CHECK(pts[0] == 0.0);
    CHECK(pts[1] == doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-15));
    CHECK(pts[2] == doctest::Approx(std::numbers::pi).epsilon(1e-16));
}

TEST_CASE("beta defaults to vacuum") {
    const ScenarioConfig config = parse_config(R"(
[scenario]
kind = two-mode
[two-mode]
delta = 1.0
lambda = 0.5
alpha = 0.2+0.1i
[grid]
t_start = 0
t_end = 1
n_steps = 2
)");
    CHECK(std::get<TwoModeScenario>(config.scenario).beta == Amplitude(0.0, 0.0));
}

TEST_CASE("general scenario with coupling rows") {
    const ScenarioConfig config = parse_config(R"(
[scenario]
kind = general
[system]
omega = 1.0, 1.0, 1.0
lambda_row_1 = 0, 0.3, 0.3
lambda_row_2 = 0.3, 0, 0
lambda_row_3 = 0.3, 0, 0
alpha = 0.4, 0, 0
[grid]
t_start = 0
t_end = 2
n_steps = 5
)");
    CHECK(config.kind == ScenarioKind::General);
    const auto& s = std::get<GeneralScenario>(config.scenario);
    CHECK(s.system.size() == 3);
    CHECK(s.system.lambda(0, 1) == 0.3);
    CHECK(s.system.lambda(1, 2) == 0.0);
    CHECK(s.alpha[0] == Amplitude(0.4, 0.0));
}

TEST_CASE("general scenario with sparse couples") {
    const ScenarioConfig config = parse_config(R"(
[scenario]
kind = general
[system]
omega = 1.0, 1.0, 1.0
couple = 1, 2, 0.3
couple = 1, 3, -0.25
alpha = 0.4, 0, 0
[grid]
t_start = 0
t_end = 2
n_steps = 5
)");
    const auto& s = std::get<GeneralScenario>(config.scenario);
    CHECK(s.system.lambda(0, 1) == 0.3);
    CHECK(s.system.lambda(2, 0) == -0.25);
    CHECK(s.system.lambda(1, 2) == 0.0);
}

TEST_CASE("asymmetric coupling matrix names the offending pair") {
    const std::string msg = capture_error<ValidationError>(R"(
[scenario]
kind = general
[system]
omega = 1.0, 2.0
lambda_row_1 = 0, 0.5
lambda_row_2 = 0.4, 0
alpha = 0, 0
[grid]
t_start = 0
t_end = 1
n_steps = 2
)");
    CHECK(msg.find("lambda[1][2]") != std::string::npos);
    CHECK(msg.find("lambda[2][1]") != std::string::npos);
    CHECK(msg.find("line 7") != std::string::npos);
}

TEST_CASE("grid validation") {
    std::string doc = kTwoModeDoc;
    const auto swap = [&doc](const std::string& from, const std::string& to) {
        doc.replace(doc.find(from), from.size(), to);
    };
    swap("t_end = 3.1415926535897931", "t_end = -1.0");
    const std::string msg = capture_error<ValidationError>(doc);
    CHECK(msg.find("t_end") != std::string::npos);

    doc = kTwoModeDoc;
    swap("n_steps = 3", "n_steps = 0");
    CHECK(capture_error<ValidationError>(doc).find("n_steps") != std::string::npos);
}

TEST_CASE("diagnostics carry key and line") {
    {
        const std::string msg = capture_error<ParseError>(R"(
[scenario]
kind = two-mode
[two-mode]
delta = zero
lambda = 1
alpha = 1
[grid]
t_start = 0
t_end = 1
n_steps = 2
)");
        CHECK(msg.find("'delta'") != std::string::npos);
        CHECK(msg.find("line 5") != std::string::npos);
    }
    {
        const std::string msg = capture_error<ValidationError>(R"(
[scenario]
kind = two-mode
[two-mode]
delta = 0
lambda = 1
alpha = 1
typo_key = 7
[grid]
t_start = 0
t_end = 1
n_steps = 2
)");
        CHECK(msg.find("typo_key") != std::string::npos);
        CHECK(msg.find("line 8") != std::string::npos);
    }
    {
        const std::string msg = capture_error<ValidationError>(R"(
[scenario]
kind = two-mode
[two-mode]
lambda = 1
alpha = 1
[grid]
t_start = 0
t_end = 1
n_steps = 2
)");
        CHECK(msg.find("'delta'") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config("key_without_section = 1\n"), ParseError);
    CHECK_THROWS_AS(parse_config("[scenario\nkind = two-mode\n"), ParseError);
    CHECK_THROWS_AS(parse_config("[scenario]\njust some words\n"), ParseError);
}

TEST_CASE("couple entry validation") {
    const char* base = R"(
[scenario]
kind = general
[system]
omega = 1.0, 2.0
couple = %s
alpha = 0, 0
[grid]
t_start = 0
t_end = 1
n_steps = 2
)";
    const auto with_couple = [&base](const std::string& couple) {
        std::string doc = base;
        doc.replace(doc.find("%s"), 2, couple);
        return doc;
    };
    CHECK_THROWS_AS(parse_config(with_couple("1, 1, 0.5")), ValidationError);
    CHECK_THROWS_AS(parse_config(with_couple("0, 2, 0.5")), ValidationError);
    CHECK_THROWS_AS(parse_config(with_couple("1, 3, 0.5")), ValidationError);
    CHECK_THROWS_AS(parse_config(with_couple("1, 2")), ValidationError);
    CHECK_THROWS_AS(parse_config(with_couple("1, 2, 0.5\ncouple = 2, 1, 0.5")), ValidationError);
    CHECK_NOTHROW(parse_config(with_couple("2, 1, 0.5")));
}

TEST_CASE("rows and couples cannot be mixed; row shape is checked") {
    CHECK_THROWS_AS(parse_config(R"(
[scenario]
kind = general
[system]
omega = 1.0, 2.0
lambda_row_1 = 0, 0.5
lambda_row_2 = 0.5, 0
couple = 1, 2, 0.5
alpha = 0, 0
[grid]
t_start = 0
t_end = 1
n_steps = 2
)"),
                    ValidationError);
    CHECK_THROWS_AS(parse_config(R"(
[scenario]
kind = general
[system]
omega = 1.0, 2.0
lambda_row_1 = 0, 0.5
alpha = 0, 0
[grid]
t_start = 0
t_end = 1
n_steps = 2
)"),
                    ValidationError);
    CHECK_THROWS_AS(parse_config(R"(
[scenario]
kind = general
[system]
omega = 1.0, 2.0
lambda_row_1 = 0, 0.5, 0.1
lambda_row_2 = 0.5, 0
alpha = 0, 0
[grid]
t_start = 0
t_end = 1
n_steps = 2
)"),
                    ValidationError);
}

TEST_CASE("alpha length must match the mode count") {
    CHECK_THROWS_AS(parse_config(R"(
[scenario]
kind = general
[system]
omega = 1.0, 2.0
alpha = 0.4
[grid]
t_start = 0
t_end = 1
n_steps = 2
)"),
                    ValidationError);
}

TEST_CASE("star-bath scenario") {
    const ScenarioConfig config = parse_config(R"(
[scenario]
kind = star-bath
[star-bath]
omega_sys = 1.0
n_bath = 201
bandwidth = 2.0
coupling = 0.01
alpha0 = 1.0
[grid]
t_start = 0
t_end = 700
n_steps = 2000
)");
    CHECK(config.kind == ScenarioKind::StarBath);
    const auto& s = std::get<StarBathScenario>(config.scenario);
    CHECK(s.spec.n_bath == 201);
    CHECK(s.spec.coupling == 0.01);
    CHECK_FALSE(s.fit_window.has_value());

    CHECK_THROWS_AS(parse_config(R"(
[scenario]
kind = star-bath
[star-bath]
omega_sys = 1.0
n_bath = 1
bandwidth = 2.0
coupling = 0.01
alpha0 = 1.0
[grid]
t_start = 0
t_end = 1
n_steps = 2
)"),
                    ValidationError);
}

TEST_CASE("oracle-check scenario and its caps") {
    const ScenarioConfig config = parse_config(R"(
[scenario]
kind = oracle-check
[system]
omega = 0, 0
couple = 1, 2, 1.0
alpha = 0.5, 0
[oracle]
n_max = 8
[grid]
t_start = 0.5
t_end = 3.1415926535897931
n_steps = 3
)");
    CHECK(config.kind == ScenarioKind::OracleCheck);
    const auto& s = std::get<OracleScenario>(config.scenario);
    CHECK(s.n_max == 8);
    CHECK(s.system.lambda(0, 1) == 1.0);

    CHECK_THROWS_AS(parse_config(R"(
[scenario]
kind = oracle-check
[system]
omega = 0, 0
alpha = 0.5, 0
[oracle]
n_max = 80
[grid]
t_start = 0
t_end = 1
n_steps = 2
)"),
                    ValidationError);
}

TEST_CASE("unknown kind is rejected") {
    CHECK_THROWS_AS(parse_config(R"(
[scenario]
kind = bogus
[grid]
t_start = 0
t_end = 1
n_steps = 2
)"),
                    ValidationError);
}
