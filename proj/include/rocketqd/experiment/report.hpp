#ifndef ROCKETQD_EXPERIMENT_REPORT_HPP
#define ROCKETQD_EXPERIMENT_REPORT_HPP

#include <ostream>
#include <string>

#include <rocketqd/io/csv.hpp>
#include <rocketqd/rocket/barrowman.hpp>
#include <rocketqd/rocket/fins.hpp>
#include <rocketqd/rocket/genome.hpp>
#include <rocketqd/rocket/mass.hpp>
#include <rocketqd/sim/evaluate.hpp>

namespace rocketqd {

    /// Build sheet for one design, `key: value` lines in a fixed order. Lengths in meters,
    /// masses in kilograms.
    inline void write_design_report(std::ostream& os, const Genome& genome, const ModelConfig& cfg)
    {
        const RocketDesign d = decode(genome);
        const MassProperties mass = mass_properties(d, cfg.materials, cfg.motor);
        const StabilityReport stab = stability(d, mass);
        const auto kv = [&os](const std::string& k, const std::string& v) { os << k << ": " << v << '\n'; };

        std::string g;
        for (std::size_t i = 0; i < genome.size(); ++i)
            g += (i ? "," : "") + csv::fmt(genome[i]);
        kv("genome", g);
        kv("nose_type", std::string(nose_type_name(d.nose.type)));
        kv("nose_length", csv::fmt(d.nose.length));
        kv("nose_shape", csv::fmt(d.nose.shape));
        kv("nose_wall_thickness", csv::fmt(d.nose.wall_thickness));
        kv("body_length", csv::fmt(d.body.length));
        kv("body_outer_diameter", csv::fmt(d.body.outer_diameter));
        kv("body_inner_diameter", csv::fmt(d.body.inner_diameter));
        kv("fin_count", csv::fmt(d.fins.count));
        for (std::size_t i = 0; i < d.fins.points.size(); ++i)
            kv("fin_point_" + std::to_string(i), csv::fmt(d.fins.points[i].x) + "," + csv::fmt(d.fins.points[i].y));
        kv("fin_fallback", d.fins.fallback_used ? "yes" : "no");
        kv("fin_root_position", csv::fmt(d.fin_root_position()));
        kv("total_length", csv::fmt(d.total_length()));
        kv("mass", csv::fmt(mass.total));
        for (const auto& c : mass.components)
            kv("mass." + c.name, csv::fmt(c.mass));
        kv("cg", csv::fmt(stab.cg));
        kv("cp", csv::fmt(stab.cp));
        kv("stability_calibers", csv::fmt(stab.calibers));
        kv("drag_coefficient", csv::fmt(drag_coefficient(d, cfg.drag, cfg.materials.fin_thickness)));
    }

} // namespace rocketqd

#endif
