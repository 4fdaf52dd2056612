#include "cohsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

namespace cohsim {

namespace {

std::string trim(std::string_view s) {
    const auto* begin = s.data();
    const auto* end = s.data() + s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(*begin))) {
        ++begin;
    }
    while (end > begin && std::isspace(static_cast<unsigned char>(end[-1]))) {
        --end;
    }
    return std::string(begin, end);
}

std::string strip_spaces(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            out.push_back(c);
        }
    }
    return out;
}

struct Entry {
    std::string section;
    std::string key;
    std::string value;
    int line;
    bool used = false;
};

[[noreturn]] void fail_parse(const std::string& msg, int line) {
    throw ParseError(msg + " (line " + std::to_string(line) + ")");
}

[[noreturn]] void fail_validation(const std::string& msg, int line) {
    throw ValidationError(msg + " (line " + std::to_string(line) + ")");
}

[[noreturn]] void fail_validation(const std::string& msg) {
    throw ValidationError(msg);
}

// from_chars rejects a leading '+'; strip one before parsing.
std::string_view drop_leading_plus(std::string_view s) {
    if (s.size() > 1 && s.front() == '+') {
        s.remove_prefix(1);
    }
    return s;
}

double to_double(std::string_view token, const std::string& key, int line) {
    std::string t = strip_spaces(token);
    const std::string_view body = drop_leading_plus(t);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
    if (ec != std::errc{} || ptr != body.data() + body.size() || body.empty()) {
        fail_parse("key '" + key + "': malformed number '" + std::string(token) + "'", line);
    }
    if (!std::isfinite(value)) {
        fail_validation("key '" + key + "': value must be finite", line);
    }
    return value;
}

int to_int(std::string_view token, const std::string& key, int line) {
    const std::string t = strip_spaces(token);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
        fail_parse("key '" + key + "': malformed integer '" + std::string(token) + "'", line);
    }
    return value;
}

std::vector<std::string> split_list(std::string_view value) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = value.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(trim(value.substr(start)));
            break;
        }
        out.push_back(trim(value.substr(start, comma - start)));
        start = comma + 1;
    }
    return out;
}

Amplitude to_complex(std::string_view token, const std::string& key, int line) {
    try {
        return parse_complex(token);
    } catch (const ParseError& e) {
        fail_parse("key '" + key + "': " + e.what(), line);
    }
}

// Flat view of the parsed document with typed, diagnostic-carrying lookups.
class Document {
public:
    explicit Document(std::vector<Entry> entries) : entries_(std::move(entries)) {}

    const Entry* find(const std::string& section, const std::string& key) {
        const Entry* found = nullptr;
        for (Entry& e : entries_) {
            if (e.section != section || e.key != key) {
                continue;
            }
            if (found != nullptr) {
                fail_validation("duplicate key '" + key + "' in [" + section + "]", e.line);
            }
            e.used = true;
            found = &e;
        }
        return found;
    }

    const Entry& require(const std::string& section, const std::string& key) {
        const Entry* e = find(section, key);
        if (e == nullptr) {
            fail_validation("missing key '" + key + "' in [" + section + "]");
        }
        return *e;
    }

    std::vector<const Entry*> find_all(const std::string& section, const std::string& key) {
        std::vector<const Entry*> out;
        for (Entry& e : entries_) {
            if (e.section == section && e.key == key) {
                e.used = true;
                out.push_back(&e);
            }
        }
        return out;
    }

    double number(const std::string& section, const std::string& key) {
        const Entry& e = require(section, key);
        return to_double(e.value, key, e.line);
    }

    std::optional<double> optional_number(const std::string& section, const std::string& key) {
        const Entry* e = find(section, key);
        if (e == nullptr) {
            return std::nullopt;
        }
        return to_double(e->value, key, e->line);
    }

    int integer(const std::string& section, const std::string& key) {
        const Entry& e = require(section, key);
        return to_int(e.value, key, e.line);
    }

    Amplitude complex_value(const std::string& section, const std::string& key) {
        const Entry& e = require(section, key);
        return to_complex(e.value, key, e.line);
    }

    Amplitude complex_or(const std::string& section, const std::string& key, Amplitude fallback) {
        const Entry* e = find(section, key);
        if (e == nullptr) {
            return fallback;
        }
        return to_complex(e->value, key, e->line);
    }

    AmplitudeVector complex_list(const std::string& section, const std::string& key) {
        const Entry& e = require(section, key);
        AmplitudeVector out;
        for (const std::string& token : split_list(e.value)) {
            out.push_back(to_complex(token, key, e.line));
        }
        return out;
    }

    std::vector<double> number_list(const std::string& section, const std::string& key) {
        const Entry& e = require(section, key);
        std::vector<double> out;
        for (const std::string& token : split_list(e.value)) {
            out.push_back(to_double(token, key, e.line));
        }
        return out;
    }

    void reject_unused() const {
        for (const Entry& e : entries_) {
            if (!e.used) {
                fail_validation("unknown key '" + e.key + "' in [" + e.section + "]", e.line);
            }
        }
    }

    std::vector<Entry>& entries() { return entries_; }

private:
    std::vector<Entry> entries_;
};

std::vector<Entry> tokenize(std::string_view text) {
    std::vector<Entry> entries;
    std::string section;
    int line_no = 0;

    std::istringstream stream{std::string(text)};
    std::string raw;
    while (std::getline(stream, raw)) {
        ++line_no;
        const std::size_t comment = raw.find_first_of("#;");
        if (comment != std::string::npos) {
            raw.erase(comment);
        }
        const std::string lineText = trim(raw);
        if (lineText.empty()) {
            continue;
        }
        if (lineText.front() == '[') {
            if (lineText.back() != ']' || lineText.size() < 3) {
                fail_parse("malformed section header '" + lineText + "'", line_no);
            }
            section = trim(lineText.substr(1, lineText.size() - 2));
            continue;
        }
        const std::size_t eq = lineText.find('=');
        if (eq == std::string::npos) {
            fail_parse("expected 'key = value', got '" + lineText + "'", line_no);
        }
        const std::string key = trim(lineText.substr(0, eq));
        if (key.empty()) {
            fail_parse("empty key", line_no);
        }
        if (section.empty()) {
            fail_parse("key '" + key + "' appears before any [section]", line_no);
        }
        entries.push_back(Entry{section, key, trim(lineText.substr(eq + 1)), line_no});
    }
    return entries;
}

// Coupling matrix from either full rows (lambda_row_i) or sparse 1-based
// triples (couple = i, j, value). Symmetry and a zero diagonal are enforced
// here so diagnostics can carry lines.
ModeSystem read_system(Document& doc, const std::string& section, std::size_t n) {
    std::vector<double> omega = doc.number_list(section, "omega");

    std::vector<const Entry*> rows;
    for (std::size_t i = 1; i <= n; ++i) {
        const Entry* row = doc.find(section, "lambda_row_" + std::to_string(i));
        if (row != nullptr) {
            rows.push_back(row);
        }
    }
    const std::vector<const Entry*> couples = doc.find_all(section, "couple");
    if (!rows.empty() && !couples.empty()) {
        fail_validation("give couplings as lambda_row_* or couple entries, not both",
                        rows.front()->line);
    }

    std::vector<double> lambda(n * n, 0.0);
    if (!rows.empty()) {
        if (rows.size() != n) {
            fail_validation("expected " + std::to_string(n) + " lambda_row_* entries, got " +
                            std::to_string(rows.size()));
        }
        for (std::size_t i = 0; i < n; ++i) {
            const std::vector<std::string> tokens = split_list(rows[i]->value);
            if (tokens.size() != n) {
                fail_validation("key '" + rows[i]->key + "': expected " + std::to_string(n) +
                                    " entries",
                                rows[i]->line);
            }
            for (std::size_t j = 0; j < n; ++j) {
                lambda[i * n + j] = to_double(tokens[j], rows[i]->key, rows[i]->line);
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (lambda[i * n + i] != 0.0) {
                fail_validation("coupling diagonal lambda[" + std::to_string(i + 1) + "][" +
                                    std::to_string(i + 1) + "] must be zero",
                                rows[i]->line);
            }
            for (std::size_t j = i + 1; j < n; ++j) {
                if (lambda[i * n + j] != lambda[j * n + i]) {
                    fail_validation("coupling matrix asymmetric: lambda[" + std::to_string(i + 1) +
                                        "][" + std::to_string(j + 1) + "] != lambda[" +
                                        std::to_string(j + 1) + "][" + std::to_string(i + 1) + "]",
                                    rows[j]->line);
                }
            }
        }
    } else {
        std::vector<bool> seen(n * n, false);
        for (const Entry* e : couples) {
            const std::vector<std::string> tokens = split_list(e->value);
            if (tokens.size() != 3) {
                fail_validation("key 'couple': expected 'i, j, value'", e->line);
            }
            const int i = to_int(tokens[0], "couple", e->line);
            const int j = to_int(tokens[1], "couple", e->line);
            const double value = to_double(tokens[2], "couple", e->line);
            if (i < 1 || j < 1 || i > static_cast<int>(n) || j > static_cast<int>(n)) {
                fail_validation("key 'couple': mode index out of range 1.." + std::to_string(n),
                                e->line);
            }
            if (i == j) {
                fail_validation("key 'couple': diagonal coupling not allowed", e->line);
            }
            const std::size_t a = static_cast<std::size_t>(i - 1);
            const std::size_t b = static_cast<std::size_t>(j - 1);
            if (seen[a * n + b]) {
                fail_validation("key 'couple': duplicate pair (" + tokens[0] + ", " + tokens[1] +
                                    ")",
                                e->line);
            }
            seen[a * n + b] = seen[b * n + a] = true;
            lambda[a * n + b] = value;
            lambda[b * n + a] = value;
        }
    }
    return ModeSystem(std::move(omega), std::move(lambda));
}

AmplitudeVector read_alpha(Document& doc, const std::string& section, std::size_t n) {
    const Entry& e = doc.require(section, "alpha");
    AmplitudeVector alpha;
    for (const std::string& token : split_list(e.value)) {
        alpha.push_back(to_complex(token, "alpha", e.line));
    }
    if (alpha.size() != n) {
        fail_validation("key 'alpha': expected " + std::to_string(n) + " amplitudes, got " +
                            std::to_string(alpha.size()),
                        e.line);
    }
    return alpha;
}

TimeGrid read_grid(Document& doc) {
    TimeGrid grid{};
    grid.t_start = doc.number("grid", "t_start");
    grid.t_end = doc.number("grid", "t_end");
    grid.n_steps = doc.integer("grid", "n_steps");
    if (!(grid.t_end > grid.t_start)) {
        fail_validation("grid: t_end must be greater than t_start",
                        doc.require("grid", "t_end").line);
    }
    if (grid.n_steps < 1) {
        fail_validation("grid: n_steps must be at least 1",
                        doc.require("grid", "n_steps").line);
    }
    return grid;
}

}  // namespace

std::vector<double> TimeGrid::points() const {
    std::vector<double> out(static_cast<std::size_t>(n_steps));
    if (n_steps == 1) {
        out[0] = t_start;
        return out;
    }
    const double h = (t_end - t_start) / (n_steps - 1);
    for (int i = 0; i < n_steps; ++i) {
        out[static_cast<std::size_t>(i)] = t_start + i * h;
    }
    out.back() = t_end;  // pin the endpoint against accumulation
    return out;
}

Amplitude parse_complex(std::string_view token) {
    const std::string t = strip_spaces(token);
    if (t.empty()) {
        throw ParseError("empty complex literal");
    }

    const auto parse_real = [&t](std::string_view part) {
        part = drop_leading_plus(part);
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (ec != std::errc{} || ptr != part.data() + part.size() || part.empty()) {
            throw ParseError("malformed complex literal '" + t + "'");
        }
        return value;
    };
    // "", "+", "-" in front of the trailing i mean a unit coefficient.
    const auto parse_imag_coeff = [&parse_real](std::string_view part) {
        if (part.empty() || part == "+") {
            return 1.0;
        }
        if (part == "-") {
            return -1.0;
        }
        return parse_real(part);
    };

    if (t.back() != 'i') {
        return Amplitude(parse_real(t), 0.0);
    }
    const std::string_view body = std::string_view(t).substr(0, t.size() - 1);
    // Split at the last +/- that is not part of an exponent and not leading.
    for (std::size_t pos = body.size(); pos-- > 1;) {
        if ((body[pos] == '+' || body[pos] == '-') &&
            body[pos - 1] != 'e' && body[pos - 1] != 'E') {
            return Amplitude(parse_real(body.substr(0, pos)),
                             parse_imag_coeff(body.substr(pos)));
        }
    }
    return Amplitude(0.0, parse_imag_coeff(body));
}

ScenarioConfig parse_config(std::string_view text) {
    Document doc(tokenize(text));

    const Entry& kind_entry = doc.require("scenario", "kind");
    const std::string kind = kind_entry.value;

    ScenarioConfig config{ScenarioKind::TwoMode, TimeGrid{0.0, 1.0, 1},
                          TwoModeScenario{0.0, 0.0, Amplitude(0, 0), Amplitude(0, 0)}};
    config.grid = read_grid(doc);

    if (kind == "two-mode") {
        TwoModeScenario s{};
        s.delta = doc.number("two-mode", "delta");
        s.lambda = doc.number("two-mode", "lambda");
        s.alpha = doc.complex_value("two-mode", "alpha");
        s.beta = doc.complex_or("two-mode", "beta", Amplitude(0.0, 0.0));
        config.kind = ScenarioKind::TwoMode;
        config.scenario = s;
    } else if (kind == "general" || kind == "oracle-check") {
        const Entry& omega_entry = doc.require("system", "omega");
        const std::size_t n = split_list(omega_entry.value).size();
        ModeSystem system = [&] {
            try {
                return read_system(doc, "system", n);
            } catch (const std::invalid_argument& e) {
                fail_validation(std::string("[system]: ") + e.what(), omega_entry.line);
            }
        }();
        AmplitudeVector alpha = read_alpha(doc, "system", n);
        if (kind == "general") {
            config.kind = ScenarioKind::General;
            config.scenario = GeneralScenario{std::move(system), std::move(alpha)};
        } else {
            const Entry& n_max_entry = doc.require("oracle", "n_max");
            const int n_max = to_int(n_max_entry.value, "n_max", n_max_entry.line);
            if (n > 3) {
                fail_validation("oracle-check supports at most 3 modes", omega_entry.line);
            }
            if (n_max < 0) {
                fail_validation("key 'n_max': must be non-negative", n_max_entry.line);
            }
            double dim = std::pow(static_cast<double>(n_max) + 1.0, static_cast<double>(n));
            if (dim > 4096.0) {
                fail_validation("oracle-check basis dimension exceeds 4096", n_max_entry.line);
            }
            config.kind = ScenarioKind::OracleCheck;
            config.scenario = OracleScenario{std::move(system), std::move(alpha), n_max};
        }
    } else if (kind == "star-bath") {
        StarBathSpec spec{};
        spec.omega_sys = doc.number("star-bath", "omega_sys");
        spec.n_bath = doc.integer("star-bath", "n_bath");
        spec.bandwidth = doc.number("star-bath", "bandwidth");
        spec.coupling = doc.number("star-bath", "coupling");
        spec.alpha0 = doc.complex_value("star-bath", "alpha0");
        if (spec.n_bath < 2) {
            fail_validation("key 'n_bath': must be at least 2",
                            doc.require("star-bath", "n_bath").line);
        }
        if (!(spec.bandwidth > 0.0)) {
            fail_validation("key 'bandwidth': must be positive",
                            doc.require("star-bath", "bandwidth").line);
        }
        if (!(spec.coupling > 0.0)) {
            fail_validation("key 'coupling': must be positive",
                            doc.require("star-bath", "coupling").line);
        }
        StarBathScenario s{spec, doc.optional_number("star-bath", "fit_window")};
        if (s.fit_window && !(*s.fit_window > 0.0)) {
            fail_validation("key 'fit_window': must be positive",
                            doc.require("star-bath", "fit_window").line);
        }
        config.kind = ScenarioKind::StarBath;
        config.scenario = s;
    } else {
        fail_validation("key 'kind': expected two-mode, general, star-bath, or oracle-check",
                        kind_entry.line);
    }

    doc.reject_unused();
    return config;
}

ScenarioConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open config file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

}  // namespace cohsim
