#ifndef ROCKETQD_ROCKET_MASS_HPP
#define ROCKETQD_ROCKET_MASS_HPP

#include <numbers>
#include <string>
#include <vector>

#include <rocketqd/rocket/design.hpp>
#include <rocketqd/rocket/fins.hpp>
#include <rocketqd/rocket/materials.hpp>
#include <rocketqd/rocket/nose.hpp>
#include <rocketqd/sim/motor.hpp>

namespace rocketqd {

    struct MassComponent {
        std::string name;
        double mass = 0.0;     // kg
        double position = 0.0; // CG of the component, m from the nose tip
    };

    struct MassProperties {
        double total = 0.0;
        double cg = 0.0;
        std::vector<MassComponent> components;

        double component_mass(const std::string& name) const
        {
            for (const auto& c : components)
                if (c.name == name)
                    return c.mass;
            return 0.0;
        }
    };

    /// Motor-loaded mass and CG. The motor's aft end is flush with the tail of the tube.
    inline MassProperties mass_properties(const RocketDesign& d, const Materials& mat, const MotorModel& motor)
    {
        MassProperties mp;
        const auto nose = integrate_nose(d.nose);
        mp.components.push_back({"nose", nose.shell_volume * mat.nose_density, nose.shell_centroid});

        const double ro = d.body.outer_diameter / 2.0;
        const double ri = d.body.inner_diameter / 2.0;
        const double tube_volume = std::numbers::pi * (ro * ro - ri * ri) * d.body.length;
        mp.components.push_back({"body", tube_volume * mat.body_density, d.nose.length + d.body.length / 2.0});

        const double fin_area = geom::polygon_area(d.fins.points);
        const Point2 fin_c = geom::polygon_centroid(d.fins.points);
        mp.components.push_back({"fins", d.fins.count * fin_area * mat.fin_thickness * mat.fin_density, d.fin_root_position() + fin_c.x});

        const double motor_center = d.airframe_length() - motor.length / 2.0;
        mp.components.push_back({"motor", motor.total_mass, motor_center});

        for (const auto& item : mat.payload) {
            const double base = item.anchor == Anchor::BodyTop ? d.nose.length : motor_center;
            mp.components.push_back({item.name, item.mass, base + item.offset});
        }

        double moment = 0.0;
        for (const auto& c : mp.components) {
            mp.total += c.mass;
            moment += c.mass * c.position;
        }
        mp.cg = mp.total > 0.0 ? moment / mp.total : 0.0;
        return mp;
    }

} // namespace rocketqd

#endif
