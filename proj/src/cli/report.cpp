// report.cpp — text, CSV and SVG emitters

#include "report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace noisent::cli {

namespace {

std::string hex_color(double fraction) {
    // white (0) to deep blue (1)
    const double f = std::clamp(fraction, 0.0, 1.0);
    const auto channel = [f](double lo, double hi) { return static_cast<int>(lo + (hi - lo) * f + 0.5); };
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", channel(255, 8), channel(255, 48), channel(255, 107));
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

std::string format_number(double v) {
    if (v == 0.0) v = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string csv_preamble(const std::string& config_echo) {
    return "# units: couplings and rates in g0 = g_AD, time in 1/g0\n# config: " + config_echo + "\n";
}

std::string sweep_csv(const SweepGrid& grid, const std::string& config_echo) {
    std::ostringstream os;
    os << csv_preamble(config_echo);
    os << grid.axis1.name() << "," << grid.axis2.name() << ",concurrence\n";
    for (std::size_t i = 0; i < grid.axis1.samples.size(); ++i) {
        for (std::size_t j = 0; j < grid.axis2.samples.size(); ++j) {
            os << format_number(grid.axis1.samples[i]) << "," << format_number(grid.axis2.samples[j]) << ","
               << format_number(grid.at(i, j)) << "\n";
        }
    }
    return os.str();
}

std::string heatmap_svg(const SweepGrid& grid) {
    const std::size_t n1 = grid.axis1.samples.size(), n2 = grid.axis2.samples.size();
    const double cell = std::clamp(480.0 / static_cast<double>(std::max(n1, n2)), 4.0, 40.0);
    const double left = 70, top = 40;
    const double w = cell * static_cast<double>(n1), h = cell * static_cast<double>(n2);
    const double peak = grid.values.empty() ? 0.0 : *std::max_element(grid.values.begin(), grid.values.end());

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_number(left + w + 130) << "\" height=\""
       << format_number(top + h + 60) << "\">\n";
    os << "<title>concurrence_AB over " << xml_escape(grid.axis1.name()) << " and " << xml_escape(grid.axis2.name())
       << "</title>\n";
    os << "<g class=\"cells\">\n";
    // axis1 runs left to right, axis2 bottom to top
    for (std::size_t i = 0; i < n1; ++i) {
        for (std::size_t j = 0; j < n2; ++j) {
            const double v = grid.at(i, j);
            const double x = left + cell * static_cast<double>(i);
            const double y = top + h - cell * static_cast<double>(j + 1);
            os << "<rect class=\"cell\" x=\"" << format_number(x) << "\" y=\"" << format_number(y) << "\" width=\""
               << format_number(cell) << "\" height=\"" << format_number(cell) << "\" fill=\""
               << hex_color(peak > 0.0 ? v / peak : 0.0) << "\"><title>" << xml_escape(grid.axis1.name()) << "="
               << format_number(grid.axis1.samples[i]) << " " << xml_escape(grid.axis2.name()) << "="
               << format_number(grid.axis2.samples[j]) << " c=" << format_number(v) << "</title></rect>\n";
        }
    }
    os << "</g>\n";
    const auto label = [&](double x, double y, const std::string& text, const char* anchor) {
        os << "<text x=\"" << format_number(x) << "\" y=\"" << format_number(y) << "\" font-size=\"12\" text-anchor=\""
           << anchor << "\">" << xml_escape(text) << "</text>\n";
    };
    label(left + w / 2, top + h + 40, grid.axis1.name(), "middle");
    label(left, top + h + 16, format_number(grid.axis1.samples.front()), "middle");
    label(left + w, top + h + 16, format_number(grid.axis1.samples.back()), "middle");
    os << "<text x=\"20\" y=\"" << format_number(top + h / 2) << "\" font-size=\"12\" text-anchor=\"middle\" "
       << "transform=\"rotate(-90 20 " << format_number(top + h / 2) << ")\">" << xml_escape(grid.axis2.name())
       << "</text>\n";
    label(left - 6, top + h, format_number(grid.axis2.samples.front()), "end");
    label(left - 6, top + 10, format_number(grid.axis2.samples.back()), "end");

    // color bar
    const double bar_x = left + w + 30;
    for (int k = 0; k < 10; ++k) {
        os << "<rect class=\"scale\" x=\"" << format_number(bar_x) << "\" y=\""
           << format_number(top + h - h * (k + 1) / 10.0) << "\" width=\"16\" height=\"" << format_number(h / 10.0)
           << "\" fill=\"" << hex_color((k + 0.5) / 10.0) << "\"/>\n";
    }
    label(bar_x + 20, top + h, "0", "start");
    label(bar_x + 20, top + 10, format_number(peak), "start");
    label(bar_x, top - 10, "concurrence", "start");
    os << "</svg>\n";
    return os.str();
}

std::string sweep_summary(const SweepGrid& grid) {
    std::ostringstream os;
    os << "fixed time: " << format_number(grid.fixed_time) << " (unless t is an axis)\n";
    os << "audit: states=" << grid.audit.states << " max_trace_err=" << format_number(grid.audit.max_trace_error)
       << " max_herm_err=" << format_number(grid.audit.max_hermiticity_error)
       << " min_eigenvalue=" << format_number(grid.audit.min_eigenvalue) << "\n";
    const auto section = [&](const SweepAxis& along, const SweepAxis& other, bool first) {
        os << "\nargmax along " << along.name() << " per " << other.name() << " sample\n";
        os << other.name() << "," << along.name() << "_argmax,concurrence_max,is_interior\n";
        for (std::size_t k = 0; k < other.samples.size(); ++k) {
            const auto values = first ? grid.along_axis1(k) : grid.along_axis2(k);
            const AxisArgmax a = argmax(along.samples, values);
            os << format_number(other.samples[k]) << "," << format_number(a.location) << "," << format_number(a.value)
               << "," << (a.is_interior ? "true" : "false") << "\n";
        }
    };
    section(grid.axis1, grid.axis2, true);
    section(grid.axis2, grid.axis1, false);
    return os.str();
}

} // namespace noisent::cli
