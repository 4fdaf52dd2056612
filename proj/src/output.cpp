#include "cohsim/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace cohsim {

namespace {

double parse_csv_double(const std::string& token, std::size_t line) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw std::runtime_error("malformed CSV number '" + token + "' (line " +
                                 std::to_string(line) + ")");
    }
    return value;
}

std::vector<std::string> split_csv_row(const std::string& row) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = row.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(row.substr(start));
            break;
        }
        out.push_back(row.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                          "#8c564b", "#17becf", "#e377c2", "#7f7f7f", "#bcbd22"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);
constexpr std::size_t kLegendCap = 8;

std::string format_coord(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", value);
    return buf;
}

}  // namespace

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    const std::size_t n = traj.states.empty() ? 0 : traj.states.front().size();
    out << "t";
    for (std::size_t j = 0; j < n; ++j) {
        out << ",re_" << j << ",im_" << j << ",abs_" << j << ",n_" << j;
    }
    out << "\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        out << format_double(traj.times[i]);
        for (std::size_t j = 0; j < n; ++j) {
            const Amplitude& a = traj.states[i][j];
            out << "," << format_double(a.real()) << "," << format_double(a.imag()) << ","
                << format_double(std::abs(a)) << "," << format_double(traj.photon_numbers[i][j]);
        }
        out << "\n";
    }
}

Trajectory read_trajectory_csv(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) {
        throw std::runtime_error("empty CSV document");
    }
    const std::vector<std::string> columns = split_csv_row(header);
    if (columns.empty() || columns.front() != "t" || (columns.size() - 1) % 4 != 0) {
        throw std::runtime_error("unexpected CSV header '" + header + "'");
    }
    const std::size_t n = (columns.size() - 1) / 4;

    std::vector<double> times;
    std::vector<AmplitudeVector> states;
    std::string row;
    std::size_t line = 1;
    while (std::getline(in, row)) {
        ++line;
        if (row.empty()) {
            continue;
        }
        const std::vector<std::string> cells = split_csv_row(row);
        if (cells.size() != columns.size()) {
            throw std::runtime_error("CSV row has " + std::to_string(cells.size()) +
                                     " cells, expected " + std::to_string(columns.size()) +
                                     " (line " + std::to_string(line) + ")");
        }
        times.push_back(parse_csv_double(cells[0], line));
        AmplitudeVector state(n);
        for (std::size_t j = 0; j < n; ++j) {
            state[j] = Amplitude(parse_csv_double(cells[1 + 4 * j], line),
                                 parse_csv_double(cells[2 + 4 * j], line));
        }
        states.push_back(std::move(state));
    }
    return make_trajectory(std::move(times), std::move(states));
}

void write_svg_plot(std::ostream& out, const Trajectory& traj) {
    constexpr double kWidth = 800.0;
    constexpr double kHeight = 500.0;
    constexpr double kLeft = 62.0;
    constexpr double kRight = 780.0;
    constexpr double kTop = 22.0;
    constexpr double kBottom = 452.0;

    const std::size_t n = traj.states.empty() ? 0 : traj.states.front().size();
    const double t0 = traj.times.front();
    const double t1 = traj.times.back();
    const double t_span = (t1 > t0) ? (t1 - t0) : 1.0;

    double y_max = 0.0;
    for (const AmplitudeVector& state : traj.states) {
        for (const Amplitude& a : state) {
            y_max = std::max(y_max, std::abs(a));
        }
    }
    if (y_max <= 0.0) {
        y_max = 1.0;
    }
    y_max *= 1.05;

    const auto x_of = [&](double t) { return kLeft + (t - t0) / t_span * (kRight - kLeft); };
    const auto y_of = [&](double v) { return kBottom - v / y_max * (kBottom - kTop); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << kWidth << " " << kHeight
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n";

    // Frame and ticks.
    out << "<rect x=\"" << format_coord(kLeft) << "\" y=\"" << format_coord(kTop) << "\" width=\""
        << format_coord(kRight - kLeft) << "\" height=\"" << format_coord(kBottom - kTop)
        << "\" fill=\"none\" stroke=\"#444444\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double frac = k / 4.0;
        const double tx = t0 + frac * t_span;
        const double x = x_of(tx);
        out << "<line x1=\"" << format_coord(x) << "\" y1=\"" << format_coord(kBottom)
            << "\" x2=\"" << format_coord(x) << "\" y2=\"" << format_coord(kBottom + 5.0)
            << "\" stroke=\"#444444\"/>\n";
        char label[32];
        std::snprintf(label, sizeof(label), "%.4g", tx);
        out << "<text x=\"" << format_coord(x) << "\" y=\"" << format_coord(kBottom + 18.0)
            << "\" text-anchor=\"middle\">" << label << "</text>\n";

        const double vy = frac * y_max;
        const double y = y_of(vy);
        out << "<line x1=\"" << format_coord(kLeft - 5.0) << "\" y1=\"" << format_coord(y)
            << "\" x2=\"" << format_coord(kLeft) << "\" y2=\"" << format_coord(y)
            << "\" stroke=\"#444444\"/>\n";
        std::snprintf(label, sizeof(label), "%.3g", vy);
        out << "<text x=\"" << format_coord(kLeft - 8.0) << "\" y=\"" << format_coord(y + 4.0)
            << "\" text-anchor=\"end\">" << label << "</text>\n";
    }
    out << "<text x=\"" << format_coord(0.5 * (kLeft + kRight)) << "\" y=\""
        << format_coord(kHeight - 12.0) << "\" text-anchor=\"middle\">t</text>\n";
    out << "<text x=\"16\" y=\"" << format_coord(0.5 * (kTop + kBottom))
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << format_coord(0.5 * (kTop + kBottom)) << ")\">|alpha_j(t)|</text>\n";

    for (std::size_t j = 0; j < n; ++j) {
        out << "<polyline fill=\"none\" stroke=\"" << kPalette[j % kPaletteSize]
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < traj.times.size(); ++i) {
            if (i > 0) {
                out << " ";
            }
            out << format_coord(x_of(traj.times[i])) << ","
                << format_coord(y_of(std::abs(traj.states[i][j])));
        }
        out << "\"/>\n";
    }

    const std::size_t legend_entries = std::min(n, kLegendCap);
    for (std::size_t j = 0; j < legend_entries; ++j) {
        const double y = kTop + 14.0 + 16.0 * static_cast<double>(j);
        out << "<line x1=\"" << format_coord(kRight - 120.0) << "\" y1=\"" << format_coord(y)
            << "\" x2=\"" << format_coord(kRight - 100.0) << "\" y2=\"" << format_coord(y)
            << "\" stroke=\"" << kPalette[j % kPaletteSize] << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << format_coord(kRight - 94.0) << "\" y=\"" << format_coord(y + 4.0)
            << "\">mode " << j << "</text>\n";
    }
    if (n > kLegendCap) {
        const double y = kTop + 14.0 + 16.0 * static_cast<double>(kLegendCap);
        out << "<text x=\"" << format_coord(kRight - 120.0) << "\" y=\"" << format_coord(y + 4.0)
            << "\">+" << (n - kLegendCap) << " more</text>\n";
    }
    out << "</svg>\n";
}

void write_report(std::ostream& out, const Report& report) {
    for (const auto& [key, value] : report) {
        out << key << " = " << value << "\n";
    }
}

}  // namespace cohsim
