#ifndef ROCKETQD_ROCKET_MATERIALS_HPP
#define ROCKETQD_ROCKET_MATERIALS_HPP

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace rocketqd {

    enum class Anchor { BodyTop, MotorCenter };

    struct PayloadItem {
        std::string name;
        double mass = 0.0;   // kg
        Anchor anchor = Anchor::BodyTop;
        double offset = 0.0; // m aft of the anchor (negative is forward)
    };

    struct Materials {
        double nose_density = 1240.0;     // PLA
        double body_density = 680.0;      // spiral-wound cardboard
        double fin_density = 160.0;       // balsa
        double fin_thickness = 0.003;
        std::vector<PayloadItem> payload{
            {"shock_cord", 0.0020, Anchor::BodyTop, 0.030},
            {"parachute", 0.0060, Anchor::BodyTop, 0.060},
            {"altimeter", 0.0050, Anchor::MotorCenter, -0.090},
            {"wadding", 0.0010, Anchor::MotorCenter, -0.055},
            {"motor_mount", 0.0030, Anchor::MotorCenter, 0.0},
            {"engine_hook", 0.0015, Anchor::MotorCenter, 0.0},
        };
    };

    inline void to_json(nlohmann::json& j, const PayloadItem& p)
    {
        j = {{"name", p.name}, {"mass_kg", p.mass}, {"anchor", p.anchor == Anchor::BodyTop ? "body_top" : "motor_center"},
            {"offset_m", p.offset}};
    }

    inline void from_json(const nlohmann::json& j, PayloadItem& p)
    {
        p.name = j.at("name").get<std::string>();
        p.mass = j.at("mass_kg").get<double>();
        const auto anchor = j.value("anchor", std::string("body_top"));
        if (anchor == "body_top")
            p.anchor = Anchor::BodyTop;
        else if (anchor == "motor_center")
            p.anchor = Anchor::MotorCenter;
        else
            throw std::invalid_argument("unknown payload anchor " + anchor);
        p.offset = j.value("offset_m", 0.0);
    }

    inline void to_json(nlohmann::json& j, const Materials& m)
    {
        j = {{"nose_density_kg_m3", m.nose_density}, {"body_density_kg_m3", m.body_density},
            {"fin_density_kg_m3", m.fin_density}, {"fin_thickness_m", m.fin_thickness}, {"payload", m.payload}};
    }

    inline void from_json(const nlohmann::json& j, Materials& m)
    {
        Materials d;
        m.nose_density = j.value("nose_density_kg_m3", d.nose_density);
        m.body_density = j.value("body_density_kg_m3", d.body_density);
        m.fin_density = j.value("fin_density_kg_m3", d.fin_density);
        m.fin_thickness = j.value("fin_thickness_m", d.fin_thickness);
        m.payload = j.contains("payload") ? j.at("payload").get<std::vector<PayloadItem>>() : d.payload;
    }

    inline Materials load_materials(const std::string& path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("cannot open materials file " + path);
        return nlohmann::json::parse(in).get<Materials>();
    }

} // namespace rocketqd

#endif
