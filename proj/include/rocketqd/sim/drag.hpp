#ifndef ROCKETQD_SIM_DRAG_HPP
#define ROCKETQD_SIM_DRAG_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include <rocketqd/rocket/design.hpp>
#include <rocketqd/rocket/fins.hpp>
#include <rocketqd/rocket/nose.hpp>

namespace rocketqd {

    /// Calibration constants for the zero-lift drag build-up. Not derived from first
    /// principles; defaults put the reference design in the 40-80 m apogee band.
    struct DragCalibration {
        double skin_friction = 0.0050;
        double fin_leading_edge = 0.30;
        double base_drag = 0.12;
        // multiplier on the Newtonian nose pressure term, indexed by nose type
        std::array<double, kNoseTypeCount> nose_pressure_scale{1.0, 1.0, 0.5, 1.0, 1.0, 0.8};
        std::optional<double> cd_override; // replaces the build-up entirely
    };

    struct DragBreakdown {
        double nose_pressure = 0.0;
        double friction = 0.0;
        double fins = 0.0;
        double base = 0.0;
        double total() const { return nose_pressure + friction + fins + base; }
    };

    inline double reference_area() { return std::numbers::pi * kBodyRadius * kBodyRadius; }

    /// Projected-area weighted sin^2 of the local surface slope, times 0.8. Equals the
    /// subsonic cone value 0.8 sin^2(half angle) for a cone and 0.8 for a flat face.
    inline double newtonian_nose_drag(const NoseCone& nose, int samples = 256)
    {
        double sum = 0.0;
        double prev_r = 0.0;
        const double h = nose.length / samples;
        for (int i = 1; i <= samples; ++i) {
            const double x = i == samples ? nose.length : i * h;
            const double r = nose_radius(nose, x);
            const double dr = r - prev_r;
            const double len2 = h * h + dr * dr;
            if (len2 > 0.0)
                sum += (dr * dr / len2) * (r * r - prev_r * prev_r);
            prev_r = r;
        }
        return 0.8 * sum / (kBodyRadius * kBodyRadius);
    }

    inline DragBreakdown drag_breakdown(const RocketDesign& d, const DragCalibration& cal, double fin_thickness)
    {
        DragBreakdown b;
        const double aref = reference_area();
        const int k = nose_index(d.nose.type);
        b.nose_pressure = cal.nose_pressure_scale[static_cast<std::size_t>(k)] * newtonian_nose_drag(d.nose);

        const auto nose = integrate_nose(d.nose);
        const double body_wet = std::numbers::pi * kBodyOuterDiameter * d.body.length;
        const double fineness = d.airframe_length() / kBodyOuterDiameter;
        b.friction = cal.skin_friction * (1.0 + 1.0 / (2.0 * fineness)) * (nose.wetted_area + body_wet) / aref;

        const double fin_area = geom::polygon_area(d.fins.points);
        double span = 0.0;
        for (const auto& p : d.fins.points)
            span = std::max(span, p.y);
        b.fins = d.fins.count * (cal.skin_friction * 2.0 * fin_area + cal.fin_leading_edge * fin_thickness * span) / aref;
        b.base = cal.base_drag;
        return b;
    }

    inline double drag_coefficient(const RocketDesign& d, const DragCalibration& cal, double fin_thickness)
    {
        if (cal.cd_override)
            return *cal.cd_override;
        return drag_breakdown(d, cal, fin_thickness).total();
    }

    inline void to_json(nlohmann::json& j, const DragCalibration& c)
    {
        j = {{"skin_friction", c.skin_friction}, {"fin_leading_edge", c.fin_leading_edge}, {"base_drag", c.base_drag},
            {"nose_pressure_scale", c.nose_pressure_scale}};
        if (c.cd_override)
            j["cd_override"] = *c.cd_override;
    }

    inline void from_json(const nlohmann::json& j, DragCalibration& c)
    {
        DragCalibration d;
        c.skin_friction = j.value("skin_friction", d.skin_friction);
        c.fin_leading_edge = j.value("fin_leading_edge", d.fin_leading_edge);
        c.base_drag = j.value("base_drag", d.base_drag);
        c.nose_pressure_scale = j.value("nose_pressure_scale", d.nose_pressure_scale);
        c.cd_override = j.contains("cd_override") ? std::optional<double>(j.at("cd_override").get<double>()) : std::nullopt;
    }

    inline DragCalibration load_drag_calibration(const std::string& path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("cannot open drag calibration file " + path);
        return nlohmann::json::parse(in).get<DragCalibration>();
    }

} // namespace rocketqd

#endif
