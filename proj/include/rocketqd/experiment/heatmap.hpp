#ifndef ROCKETQD_EXPERIMENT_HEATMAP_HPP
#define ROCKETQD_EXPERIMENT_HEATMAP_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <rocketqd/qd/archive.hpp>
#include <rocketqd/sim/evaluate.hpp>

namespace rocketqd {

    inline constexpr int kHeatmapCellPx = 6;
    inline constexpr std::string_view kHeatmapBackground = "#f0f0f0";

    struct Rgb {
        int r = 0, g = 0, b = 0;
    };

    inline std::string hex_color(Rgb c)
    {
        char buf[8];
        std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", std::clamp(c.r, 0, 255), std::clamp(c.g, 0, 255), std::clamp(c.b, 0, 255));
        return buf;
    }

    /// Piecewise-linear colormap through `stops`, t in [0, 1].
    template <std::size_t N>
    Rgb interpolate(const std::array<Rgb, N>& stops, double t)
    {
        t = std::clamp(std::isfinite(t) ? t : 0.0, 0.0, 1.0);
        const double pos = t * static_cast<double>(N - 1);
        const std::size_t i = std::min(static_cast<std::size_t>(pos), N - 2);
        const double f = pos - static_cast<double>(i);
        const auto mix = [f](int a, int b) { return static_cast<int>(std::lround(a + (b - a) * f)); };
        return {mix(stops[i].r, stops[i + 1].r), mix(stops[i].g, stops[i + 1].g), mix(stops[i].b, stops[i + 1].b)};
    }

    inline constexpr std::array<Rgb, 5> kFitnessStops{{{68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};
    inline constexpr std::array<Rgb, 3> kCountStops{{{255, 237, 160}, {253, 141, 60}, {128, 0, 38}}};

    inline std::string fitness_color(double fitness) { return hex_color(interpolate(kFitnessStops, fitness / kMaxFitness)); }

    /// Count colors run from 1 (lightest) to `max_count` (darkest). Zero is not drawn.
    inline std::string count_color(int count, int max_count)
    {
        const double t = max_count > 1 ? static_cast<double>(count - 1) / (max_count - 1) : 1.0;
        return hex_color(interpolate(kCountStops, t));
    }

    /// Category colors for up to three inputs are fixed; larger input sets get evenly
    /// spaced hues. Mask 0 (no input) is not drawn.
    inline std::string category_color(std::uint32_t mask, std::size_t inputs)
    {
        static constexpr std::array<const char*, 8> fixed{
            "", "#1f77b4", "#2ca02c", "#d2b48c", "#d62728", "#ff7f0e", "#9467bd", "#8c564b"};
        if (mask == 0)
            return std::string(kHeatmapBackground);
        if (inputs <= 3)
            return fixed[mask & 7u];
        const double categories = std::ldexp(1.0, static_cast<int>(inputs)) - 1.0;
        const double h = 360.0 * (mask - 1) / categories;
        // HSV with s = 0.65, v = 0.85
        const double c = 0.85 * 0.65, x = c * (1.0 - std::fabs(std::fmod(h / 60.0, 2.0) - 1.0)), m = 0.85 - c;
        double r = 0, g = 0, b = 0;
        switch (static_cast<int>(h / 60.0) % 6) {
        case 0: r = c, g = x; break;
        case 1: r = x, g = c; break;
        case 2: g = c, b = x; break;
        case 3: g = x, b = c; break;
        case 4: r = x, b = c; break;
        default: r = c, b = x; break;
        }
        const auto to = [m](double v) { return static_cast<int>(std::lround((v + m) * 255.0)); };
        return hex_color({to(r), to(g), to(b)});
    }

    inline std::string category_label(std::uint32_t mask, const std::vector<std::string>& names)
    {
        std::string s;
        for (std::size_t i = 0; i < names.size(); ++i)
            if (mask & (1u << i))
                s += (s.empty() ? "" : " + ") + names[i];
        return s.empty() ? "none" : s;
    }

    struct LegendEntry {
        std::string color;
        std::string label;
    };

    /// Per-cell fill colors (nullopt = empty) in the archive's flat order.
    struct HeatmapImage {
        ArchiveConfig grid;
        std::vector<std::optional<std::string>> fills;
        std::vector<LegendEntry> legend;
        std::string title;
    };

    inline std::string xml_escape(const std::string& s)
    {
        std::string out;
        for (char ch : s) {
            switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
            }
        }
        return out;
    }

    /// x (nose/stability) runs left to right, apogee bottom to top.
    inline std::string render_svg(const HeatmapImage& img)
    {
        const auto& g = img.grid;
        if (img.fills.size() != g.cell_count())
            throw std::invalid_argument("heatmap fill count does not match the grid");
        const int px = kHeatmapCellPx;
        const int left = 60, top = 30, bottom = 50, legend_w = 220;
        const int gw = g.x_bins * px, gh = g.y_bins * px;
        const int width = left + gw + 20 + legend_w, height = top + gh + bottom;

        std::ostringstream os;
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\" viewBox=\"0 0 " << width
           << ' ' << height << "\">\n";
        os << "<rect class=\"frame\" x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"#ffffff\"/>\n";
        os << "<text x=\"" << left << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" << xml_escape(img.title) << "</text>\n";
        os << "<rect class=\"background\" x=\"" << left << "\" y=\"" << top << "\" width=\"" << gw << "\" height=\"" << gh << "\" fill=\""
           << kHeatmapBackground << "\" stroke=\"#999999\"/>\n";
        for (std::size_t i = 0; i < img.fills.size(); ++i) {
            if (!img.fills[i])
                continue;
            const int xi = static_cast<int>(i / static_cast<std::size_t>(g.y_bins));
            const int yi = static_cast<int>(i % static_cast<std::size_t>(g.y_bins));
            os << "<rect class=\"cell\" data-xi=\"" << xi << "\" data-yi=\"" << yi << "\" x=\"" << left + xi * px << "\" y=\""
               << top + (g.y_bins - 1 - yi) * px << "\" width=\"" << px << "\" height=\"" << px << "\" fill=\"" << *img.fills[i] << "\"/>\n";
        }
        // nose-type slot labels along x, apogee ticks along y
        for (int k = 0; k < 6; ++k) {
            const double xc = (2.5 * k + 1.0 - g.x_lo) / (g.x_hi - g.x_lo) * gw;
            os << "<text x=\"" << left + static_cast<int>(xc) << "\" y=\"" << top + gh + 18
               << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << nose_type_name(nose_type_from_index(k))
               << "</text>\n";
        }
        for (int t = 0; t <= 90; t += 15) {
            const double yc = (t - g.y_lo) / (g.y_hi - g.y_lo) * gh;
            os << "<text x=\"" << left - 6 << "\" y=\"" << top + gh - static_cast<int>(yc) + 4
               << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << t << "</text>\n";
        }
        os << "<text x=\"" << left + gw / 2 << "\" y=\"" << top + gh + 40
           << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">nose type / stability</text>\n";
        os << "<text x=\"14\" y=\"" << top + gh / 2 << "\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 14 "
           << top + gh / 2 << ")\" text-anchor=\"middle\">apogee (m)</text>\n";
        const int lx = left + gw + 20;
        for (std::size_t e = 0; e < img.legend.size(); ++e) {
            const int ly = top + static_cast<int>(e) * 18;
            os << "<rect class=\"legend\" x=\"" << lx << "\" y=\"" << ly << "\" width=\"12\" height=\"12\" fill=\"" << img.legend[e].color
               << "\"/>\n";
            os << "<text x=\"" << lx + 18 << "\" y=\"" << ly + 10 << "\" font-family=\"sans-serif\" font-size=\"11\">"
               << xml_escape(img.legend[e].label) << "</text>\n";
        }
        os << "</svg>\n";
        return os.str();
    }

    inline HeatmapImage fitness_heatmap(const GridArchive& archive, std::string title = "fitness")
    {
        HeatmapImage img{archive.config(), std::vector<std::optional<std::string>>(archive.config().cell_count()), {}, std::move(title)};
        archive.for_each_occupied([&](CellIndex c, const Solution& s, double) { img.fills[archive.flat(c)] = fitness_color(s.fitness); });
        for (int f = 0; f <= 40; f += 10)
            img.legend.push_back({fitness_color(f), "fitness " + std::to_string(f)});
        return img;
    }

    inline HeatmapImage category_heatmap(const ArchiveConfig& grid, const std::vector<std::uint32_t>& masks,
        const std::vector<std::string>& names, std::string title = "coverage")
    {
        if (masks.size() != grid.cell_count())
            throw std::invalid_argument("category map does not match the grid");
        HeatmapImage img{grid, std::vector<std::optional<std::string>>(grid.cell_count()), {}, std::move(title)};
        for (std::size_t i = 0; i < masks.size(); ++i)
            if (masks[i])
                img.fills[i] = category_color(masks[i], names.size());
        const std::uint32_t categories = names.size() >= 32 ? 0xffffffffu : (1u << names.size()) - 1u;
        for (std::uint32_t m = 1; m <= categories && m < 256; ++m)
            img.legend.push_back({category_color(m, names.size()), category_label(m, names)});
        return img;
    }

    inline HeatmapImage counts_heatmap(const ArchiveConfig& grid, const std::vector<int>& counts, int max_count,
        std::string title = "occupancy count")
    {
        if (counts.size() != grid.cell_count())
            throw std::invalid_argument("count map does not match the grid");
        max_count = std::max(1, max_count);
        HeatmapImage img{grid, std::vector<std::optional<std::string>>(grid.cell_count()), {}, std::move(title)};
        for (std::size_t i = 0; i < counts.size(); ++i)
            if (counts[i] > 0)
                img.fills[i] = count_color(counts[i], max_count);
        for (int c = 1; c <= max_count; c += std::max(1, max_count / 6))
            img.legend.push_back({count_color(c, max_count), std::to_string(c) + " runs"});
        return img;
    }

    inline void save_svg(const std::string& path, const HeatmapImage& img)
    {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot write " + path);
        out << render_svg(img);
        if (!out)
            throw std::runtime_error("failed writing " + path);
    }

} // namespace rocketqd

#endif
